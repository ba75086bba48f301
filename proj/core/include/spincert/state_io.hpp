#pragma once

#include <string>

#include "spincert/spin.hpp"

namespace spincert {

// Text formats shared by the tools: pure-state JSON files, fixed-precision
// number formatting, and atomic file writes.

// State files look like {"J": 3.5, "amplitudes": [[re, im], ...]} with one
// [re, im] pair per level in ascending m. The amplitude count must equal
// 2J + 1. A norm deviating from 1 by more than 1e-6 is rejected unless
// `renormalize` is set; smaller drift is always renormalized away.
QuditState parse_state_json(const std::string& text, bool renormalize = false);
QuditState load_state_json(const std::string& path, bool renormalize = false);

std::string state_to_json(const QuditState& state);

// 12 significant digits, the precision promised for numeric text output.
std::string format_sig(double value);

// Write content to path via a temp file in the same directory plus rename,
// so readers never observe a half-written file. I/O failures throw
// std::runtime_error.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace spincert
