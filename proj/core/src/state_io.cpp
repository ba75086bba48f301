#include "spincert/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace spincert {

namespace {
using nlohmann::json;
}

QuditState parse_state_json(const std::string& text, bool renormalize) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid state JSON: ") + e.what());
  }
  double J = 0.0;
  std::vector<std::vector<double>> pairs;
  try {
    J = j.at("J").get<double>();
    pairs = j.at("amplitudes").get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid state JSON: ") + e.what());
  }
  const double two_j = 2.0 * J;
  if (std::abs(two_j - std::round(two_j)) > 1e-9 || J <= 0.0)
    throw std::invalid_argument("J must be a positive half-integer");
  const int d = static_cast<int>(std::lround(two_j)) + 1;
  if (static_cast<int>(pairs.size()) != d)
    throw std::invalid_argument("state needs 2J+1 = " + std::to_string(d) +
                                " amplitudes, got " +
                                std::to_string(pairs.size()));
  Vec amps(d);
  for (int i = 0; i < d; ++i) {
    const auto& p = pairs[static_cast<size_t>(i)];
    if (p.size() != 2)
      throw std::invalid_argument("each amplitude must be a [re, im] pair");
    amps(i) = Complex(p[0], p[1]);
  }
  const double norm = amps.norm();
  if (norm < 1e-12) throw std::invalid_argument("state amplitudes are all zero");
  if (!renormalize && std::abs(norm - 1.0) > 1e-6)
    throw std::invalid_argument(
        "state norm " + std::to_string(norm) +
        " deviates from 1 by more than 1e-6 (pass renormalize to accept)");
  return QuditState::pure(amps / norm);
}

QuditState load_state_json(const std::string& path, bool renormalize) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str(), renormalize);
}

std::string state_to_json(const QuditState& state) {
  if (!state.is_pure())
    throw UnsupportedState("state files hold pure states only");
  json pairs = json::array();
  const Vec& a = state.amplitudes();
  for (int i = 0; i < state.dim(); ++i)
    pairs.push_back({a(i).real(), a(i).imag()});
  const json j = {{"J", state.J()}, {"amplitudes", pairs}};
  return j.dump(2) + "\n";
}

std::string format_sig(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " into place: " +
                             ec.message());
  }
}

}  // namespace spincert
