// spincert: command-line front end for the precession-protocol toolkit.
//
// Subcommands: table1, score, sweep, optimize, pulse, shots, wigner,
// mc-classical. Every command is deterministic for fixed flags and seed;
// files are written atomically. Exit codes: 0 success, 2 bad arguments or
// unsupported inputs, 3 numerical failure (a machine-readable error JSON
// goes to stderr in both failure cases).

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spincert/measurement.hpp"
#include "spincert/optimizer.hpp"
#include "spincert/protocol.hpp"
#include "spincert/pulse.hpp"
#include "spincert/spin.hpp"
#include "spincert/state_io.hpp"
#include "spincert/types.hpp"
#include "spincert/wigner.hpp"

namespace {

using nlohmann::json;
using namespace spincert;

constexpr std::uint64_t kDefaultSeed = 20260816ULL;
constexpr int kOptimizerStarts = 64;

struct Cfg {
  int d = 0;  // 0 = take the state's own dimension (8 for named cat/coherent)
  int K = 7;
  bool uneven = false;
  double phi0 = 0.0;
  std::string state = "cat";
  std::string subspace;  // "LO..HI", empty = full space
  std::int64_t shots = 0;
  std::uint64_t seed = kDefaultSeed;
  int points = 0;  // 0 = per-command default
  std::string out;
  std::string format;  // per-command default when empty
  bool renormalize = false;
};

void emit(const Cfg& cfg, const std::string& content) {
  if (!cfg.out.empty())
    atomic_write(cfg.out, content);
  else
    std::cout << content;
}

std::string pick_format(const Cfg& cfg, const std::string& fallback,
                        std::initializer_list<const char*> allowed) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw std::invalid_argument("--format " + f + " is not available here");
}

Subspace parse_subspace(const std::string& text, int d) {
  const auto pos = text.find("..");
  if (pos == std::string::npos)
    throw std::invalid_argument("--subspace must look like LO..HI (e.g. 1..6)");
  int lo = 0, hi = 0;
  try {
    lo = std::stoi(text.substr(0, pos));
    hi = std::stoi(text.substr(pos + 2));
  } catch (const std::exception&) {
    throw std::invalid_argument("--subspace bounds must be integers");
  }
  const Subspace sub{lo, hi};
  sub.validate(d);
  return sub;
}

// ---- the reference table ----------------------------------------------

struct TableRow {
  const char* label;
  int d;
  int K;
  bool uneven;
};

const std::vector<TableRow>& table_rows() {
  static const std::vector<TableRow> rows = {
      {"P8_7", 8, 7, false}, {"P8_5", 8, 5, false}, {"P8_3", 8, 3, false},
      {"P8_5u", 8, 5, true}, {"P8_3u", 8, 3, true}, {"P6_5", 6, 5, false},
      {"P6_3", 6, 3, false}, {"P6_3u", 6, 3, true}, {"P4_3", 4, 3, false},
  };
  return rows;
}

// Reference vectors for the uneven rows (3-decimal coefficients; the signs
// follow the reversal symmetry of the maximizer in the symmetric angle
// gauge, and the vectors are normalized on load).
QuditState uneven_row_state(const std::string& label) {
  std::vector<double> c;
  if (label == "P8_5u")
    c = {0.665, 0.072, -0.199, 0.117, -0.117, 0.199, -0.072, -0.665};
  else if (label == "P8_3u")
    c = {0.600, -0.145, -0.336, -0.078, 0.078, 0.336, 0.145, -0.600};
  else if (label == "P6_3u")
    c = {0.645, -0.119, -0.264, -0.264, -0.119, 0.645};
  else
    throw std::invalid_argument("unknown uneven reference row: " + label);
  Vec v(static_cast<int>(c.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = c[static_cast<size_t>(i)];
  return QuditState::pure(v / v.norm());
}

QuditState table_row_state(const std::string& label) {
  for (const TableRow& row : table_rows()) {
    if (label != row.label) continue;
    if (row.uneven) return uneven_row_state(label);
    const SpinSystem sys = spin_operators(0.5 * (row.d - 1));
    return closed_form_max(sys, row.K).state;
  }
  std::string known;
  for (const TableRow& row : table_rows()) known += std::string(" ") + row.label;
  throw std::invalid_argument("unknown table row '" + label + "'; known:" + known);
}

// ---- state resolution ---------------------------------------------------

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      vals.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("expected a number, got '" + tok + "'");
    }
  }
  return vals;
}

QuditState resolve_state(const Cfg& cfg) {
  const std::string& spec = cfg.state;
  auto check_d = [&](const QuditState& st) {
    if (cfg.d != 0 && cfg.d != st.dim())
      throw std::invalid_argument("--d " + std::to_string(cfg.d) +
                                  " conflicts with the state's dimension " +
                                  std::to_string(st.dim()));
    return st;
  };

  if (spec == "cat" || spec.rfind("cat:", 0) == 0) {
    const int d = cfg.d == 0 ? 8 : cfg.d;
    const SpinSystem sys = spin_operators(0.5 * (d - 1));
    double phase = kPi;
    if (spec.rfind("cat:", 0) == 0) {
      const auto vals = parse_doubles(spec.substr(4));
      if (vals.size() != 1)
        throw std::invalid_argument("cat:<phase> takes one number (radians)");
      phase = vals[0];
    }
    return cat_state(sys, sys.J, phase);
  }
  if (spec == "coherent" || spec.rfind("coherent:", 0) == 0) {
    const int d = cfg.d == 0 ? 8 : cfg.d;
    const SpinSystem sys = spin_operators(0.5 * (d - 1));
    double theta = 0.5 * kPi, phi = 0.5 * kPi;  // along +y by default
    if (spec.rfind("coherent:", 0) == 0) {
      const auto vals = parse_doubles(spec.substr(9));
      if (vals.size() != 2)
        throw std::invalid_argument(
            "coherent:<theta>,<phi> takes two numbers (radians)");
      theta = vals[0];
      phi = vals[1];
    }
    return spin_coherent_state(sys, theta, phi);
  }
  if (spec.rfind("table1:", 0) == 0)
    return check_d(table_row_state(spec.substr(7)));
  return check_d(load_state_json(spec, cfg.renormalize));
}

// Probing angles for score/shots: the uniform grid at --phi0, or the
// optimizer's uneven set for the subspace dimension (64 starts, seeded).
struct ResolvedAngles {
  AngleSet set;
  std::optional<OptimizationRun> run;  // present in uneven mode
};

ResolvedAngles resolve_angles(const Cfg& cfg, int d_protocol) {
  if (!cfg.uneven) return {AngleSet::uniform(cfg.K, cfg.phi0), std::nullopt};
  const SpinSystem sys = spin_operators(0.5 * (d_protocol - 1));
  OptimizationRun run = optimize_angles(sys, cfg.K, kOptimizerStarts, cfg.seed);
  const std::vector<double> gauged = median_zero_gauge(run.final_angles.angles());
  return {AngleSet::from_angles(gauged), std::move(run)};
}

// the same schema as state files, so the object can be saved and fed back
// through --state directly
json state_json_object(const Vec& v) {
  json pairs = json::array();
  for (int i = 0; i < v.size(); ++i) pairs.push_back({v(i).real(), v(i).imag()});
  return {{"J", 0.5 * (v.size() - 1)}, {"amplitudes", pairs}};
}

// Deterministic eigenvector gauge: first coefficient of visible magnitude
// is made real positive.
Vec canonical_phase(Vec v) {
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-9) {
      v /= v(i) / std::abs(v(i));
      break;
    }
  }
  return v;
}

// ---- commands -----------------------------------------------------------

int cmd_table1(const Cfg& cfg) {
  const std::string fmt = pick_format(cfg, "text", {"text", "csv", "json"});
  json rows = json::array();
  for (const TableRow& row : table_rows()) {
    const SpinSystem sys = spin_operators(0.5 * (row.d - 1));
    json r = {{"label", row.label},
              {"d", row.d},
              {"K", row.K},
              {"uneven", row.uneven},
              {"classical_bound", classical_bound(row.K)}};
    if (row.uneven) {
      const OptimizationRun run =
          optimize_angles(sys, row.K, kOptimizerStarts, cfg.seed);
      r["quantum_max"] = run.final_score;
      r["angles_rad"] = median_zero_gauge(run.final_angles.angles());
      r["converged"] = run.converged;
    } else {
      r["quantum_max"] = closed_form_max(sys, row.K).value;
    }
    rows.push_back(std::move(r));
  }

  if (fmt == "json") {
    emit(cfg, rows.dump(2) + "\n");
    return 0;
  }
  if (fmt == "csv") {
    std::string out = "label,d,K,uneven,classical_bound,quantum_max\n";
    for (const auto& r : rows) {
      out += r["label"].get<std::string>();
      out += "," + std::to_string(r["d"].get<int>());
      out += "," + std::to_string(r["K"].get<int>());
      out += r["uneven"].get<bool>() ? ",true" : ",false";
      out += "," + format_sig(r["classical_bound"].get<double>());
      out += "," + format_sig(r["quantum_max"].get<double>()) + "\n";
    }
    emit(cfg, out);
    return 0;
  }
  std::ostringstream out;
  out << "state    d  K  angles   classical  quantum max\n";
  char line[128];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-7s %2d %2d  %-8s %.6f   %.6f\n",
                  r["label"].get<std::string>().c_str(), r["d"].get<int>(),
                  r["K"].get<int>(),
                  r["uneven"].get<bool>() ? "uneven" : "uniform",
                  r["classical_bound"].get<double>(),
                  r["quantum_max"].get<double>());
    out << line;
  }
  emit(cfg, out.str());
  return 0;
}

int cmd_score(const Cfg& cfg) {
  const QuditState state = resolve_state(cfg);
  const int d = state.dim();
  const Subspace sub =
      cfg.subspace.empty() ? Subspace::full(d) : parse_subspace(cfg.subspace, d);
  const ResolvedAngles angles = resolve_angles(cfg, sub.size());

  if (cfg.shots > 0) {
    // sampled mode: full pulse pipeline, multinomial shots, bootstrap CI
    const auto points = run_protocol(state, angles.set, sub);
    const ShotRecord record = sample_protocol(points, cfg.shots, cfg.seed);
    const ScoreEstimate est = estimate_score(record, d, sub);
    const std::string fmt = pick_format(cfg, "text", {"text", "json"});
    if (fmt == "json") {
      const json j = {{"point", est.point},
                      {"ci_low", est.ci_low},
                      {"ci_high", est.ci_high},
                      {"n_bootstrap", est.n_bootstrap},
                      {"shots_per_angle", est.shots_per_angle},
                      {"seed", est.seed}};
      emit(cfg, j.dump(2) + "\n");
    } else {
      std::ostringstream out;
      out << "score " << format_sig(est.point) << "  2-sigma CI ["
          << format_sig(est.ci_low) << ", " << format_sig(est.ci_high) << "]  ("
          << est.shots_per_angle << " shots/angle, " << est.n_bootstrap
          << " bootstrap resamples, seed " << est.seed << ")\n"
          << "classical bound " << format_sig(classical_bound(cfg.K)) << "\n";
      emit(cfg, out.str());
    }
    return 0;
  }

  // analytic mode: exact expectation in the (sub)space
  QuditState scored = state;
  if (sub.size() != d) {
    double inside = 0.0;
    const Mat rho = state.density_matrix();
    for (int i = sub.lo; i <= sub.hi; ++i) inside += rho(i, i).real();
    if (1.0 - inside > 1e-9)
      throw std::invalid_argument(
          "state has weight outside the subspace; analytic subspace scoring "
          "needs a state supported inside it");
    scored = truncate_density(state, sub);
  }
  const ScoreReport rep = quantum_score(scored, angles.set);
  const SpinSystem sub_sys = spin_operators(scored.J());
  const double qmax = max_quantum_score(sub_sys, angles.set).value;

  const std::string fmt = pick_format(cfg, "text", {"text", "json"});
  if (fmt == "json") {
    const json j = {{"d", d},
                    {"subspace", {sub.lo, sub.hi}},
                    {"K", angles.set.K()},
                    {"angles_rad", angles.set.angles()},
                    {"score", rep.score},
                    {"classical_bound", rep.classical_bound},
                    {"quantum_max", qmax},
                    {"violation", rep.violation_flag}};
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "score " << format_sig(rep.score) << "  classical bound "
        << format_sig(rep.classical_bound) << "  quantum max "
        << format_sig(qmax) << "  ->"
        << (rep.violation_flag ? " VIOLATION (nonclassical)" : " no violation")
        << "\n";
    emit(cfg, out.str());
  }
  return 0;
}

int cmd_sweep(const Cfg& cfg) {
  QuditState state = resolve_state(cfg);
  if (!cfg.subspace.empty()) {
    const Subspace sub = parse_subspace(cfg.subspace, state.dim());
    if (sub.size() != state.dim()) {
      double inside = 0.0;
      const Mat rho = state.density_matrix();
      for (int i = sub.lo; i <= sub.hi; ++i) inside += rho(i, i).real();
      if (1.0 - inside > 1e-9)
        throw std::invalid_argument("state has weight outside the subspace");
      state = truncate_density(state, sub);
    }
  }
  const int n = cfg.points == 0 ? 720 : cfg.points;
  const auto curve = pos_sweep(state, n);

  const std::string fmt = pick_format(cfg, "csv", {"csv", "json"});
  if (fmt == "json") {
    json phi = json::array(), val = json::array();
    for (const auto& [p, v] : curve) {
      phi.push_back(p);
      val.push_back(v);
    }
    const json j = {{"phi", phi}, {"pos_expectation", val}};
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  std::string out = "phi,pos_expectation\n";
  for (const auto& [p, v] : curve)
    out += format_sig(p) + "," + format_sig(v) + "\n";
  emit(cfg, out);
  return 0;
}

int cmd_optimize(const Cfg& cfg) {
  const int d = cfg.d == 0 ? 8 : cfg.d;
  const SpinSystem sys = spin_operators(0.5 * (d - 1));
  const OptimizationRun run = optimize_angles(sys, cfg.K, kOptimizerStarts, cfg.seed);

  // Report in the median-zero gauge, rotating the state along with the
  // angles so it stays the top eigenvector of Q at the reported set.
  double shift = 0.0;
  const std::vector<double> gauged =
      median_zero_gauge(run.final_angles.angles(), &shift);
  const Vec state =
      canonical_phase(rz(sys, -shift) * run.final_state.amplitudes());

  const std::string fmt = pick_format(cfg, "json", {"json", "text"});
  if (fmt == "text") {
    std::ostringstream out;
    out << "score " << format_sig(run.final_score) << " after " << run.iterations
        << " iterations (" << (run.converged ? "converged" : "iteration cap")
        << ")\nangles_rad:";
    for (double a : gauged) out << " " << format_sig(a);
    out << "\n";
    emit(cfg, out.str());
    return 0;
  }
  const json j = {{"d", d},
                  {"K", cfg.K},
                  {"score", run.final_score},
                  {"angles_rad", gauged},
                  {"state", state_json_object(state)},
                  {"iterations", run.iterations},
                  {"converged", run.converged}};
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_pulse(const Cfg& cfg) {
  const QuditState state = resolve_state(cfg);
  const PulseSequence seq = ladder_compile(state);

  // cheap self-check before anything is written
  Vec ground = Vec::Zero(state.dim());
  ground(0) = 1.0;
  const QuditState prepared =
      apply_sequence(QuditState::pure(std::move(ground)), seq);
  if (fidelity(prepared, state) < 1.0 - 1e-12)
    throw NumericalInconsistency("compiled sequence fails to reach the target");

  pick_format(cfg, "json", {"json"});
  emit(cfg, pulse_sequence_to_json(seq));
  return 0;
}

int cmd_shots(const Cfg& cfg) {
  const QuditState state = resolve_state(cfg);
  const int d = state.dim();
  const Subspace sub =
      cfg.subspace.empty() ? Subspace::full(d) : parse_subspace(cfg.subspace, d);
  const ResolvedAngles angles = resolve_angles(cfg, sub.size());
  const std::int64_t n = cfg.shots == 0 ? 1000 : cfg.shots;
  const auto points = run_protocol(state, angles.set, sub);
  const ShotRecord record = sample_protocol(points, n, cfg.seed);

  const std::string fmt = pick_format(cfg, "csv", {"csv", "json"});
  if (fmt == "json") {
    json counts = json::array();
    for (const auto& h : record.counts) counts.push_back(h);
    const json j = {{"angles_rad", angles.set.angles()},
                    {"counts", counts},
                    {"shots_per_angle", record.shots_per_angle},
                    {"seed", record.seed}};
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  const double J = 0.5 * (d - 1);
  std::string out = "angle_index,outcome_m,count\n";
  for (size_t k = 0; k < record.counts.size(); ++k)
    for (int i = 0; i < d; ++i)
      out += std::to_string(k) + "," + format_sig(i - J) + "," +
             std::to_string(record.counts[k][static_cast<size_t>(i)]) + "\n";
  emit(cfg, out);
  return 0;
}

int cmd_wigner(const Cfg& cfg) {
  QuditState state = resolve_state(cfg);
  if (!cfg.subspace.empty()) {
    const Subspace sub = parse_subspace(cfg.subspace, state.dim());
    state = truncate_density(state, sub);
  }
  const int n_theta = cfg.points == 0 ? 100 : cfg.points;
  const WignerGrid grid = wigner_grid(state, n_theta, 2 * n_theta);

  const std::string fmt = pick_format(cfg, "csv", {"csv", "json"});
  if (fmt == "json") {
    json vals = json::array();
    for (int i = 0; i < grid.values.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < grid.values.cols(); ++j) row.push_back(grid.values(i, j));
      vals.push_back(std::move(row));
    }
    const json j = {{"theta", grid.theta}, {"phi", grid.phi}, {"values", vals}};
    emit(cfg, j.dump() + "\n");
    return 0;
  }
  std::string out = "theta,phi,w\n";
  for (size_t i = 0; i < grid.theta.size(); ++i)
    for (size_t j = 0; j < grid.phi.size(); ++j)
      out += format_sig(grid.theta[i]) + "," + format_sig(grid.phi[j]) + "," +
             format_sig(grid.values(static_cast<int>(i), static_cast<int>(j))) +
             "\n";
  emit(cfg, out);
  return 0;
}

int cmd_mc_classical(const Cfg& cfg) {
  const std::int64_t n = cfg.shots == 0 ? 100000 : cfg.shots;
  const ClassicalMcResult res = classical_mc(cfg.K, n, cfg.seed);
  const double bound = classical_bound(cfg.K);

  const std::string fmt = pick_format(cfg, "text", {"text", "csv", "json"});
  if (fmt == "json") {
    const json j = {{"K", cfg.K},
                    {"n_samples", res.n_samples},
                    {"seed", res.seed},
                    {"max_score", res.max_score},
                    {"classical_bound", bound},
                    {"score_histogram", res.score_histogram}};
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  if (fmt == "csv") {
    std::string out = "positive_count,score,count\n";
    for (size_t c = 0; c < res.score_histogram.size(); ++c)
      out += std::to_string(c) + "," +
             format_sig(static_cast<double>(c) / cfg.K) + "," +
             std::to_string(res.score_histogram[c]) + "\n";
    emit(cfg, out);
    return 0;
  }
  std::ostringstream out;
  out << "max classical score " << format_sig(res.max_score) << " over "
      << res.n_samples << " samples (seed " << res.seed << "); bound "
      << format_sig(bound)
      << (res.max_score <= bound ? "  -- never exceeded\n" : "  -- EXCEEDED?!\n");
  emit(cfg, out.str());
  return 0;
}

int fail(int code, const std::string& type, const std::string& message) {
  const json err = {{"error", {{"type", type}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniform-precession nonclassicality certification toolkit"};
  app.set_version_flag("--version",
                       std::string("spincert ") + SPINCERT_VERSION + " (format 1)");
  app.require_subcommand(1);

  Cfg cfg;
  std::string command;

  auto add_common = [&](CLI::App* sub, bool with_state, bool with_angles,
                        bool with_shots, bool with_points) {
    sub->add_option("--seed", cfg.seed, "base RNG seed")
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    if (with_state) {
      sub->add_option("--d", cfg.d,
                      "dimension 2J+1 (default 8; named/loaded states carry "
                      "their own)")
          ->check(CLI::Range(2, 64));
      sub->add_option(
          "--state", cfg.state,
          "state: 'cat', 'cat:<phase>', 'coherent', 'coherent:<theta>,<phi>', "
          "'table1:<row>', or a JSON file path");
      sub->add_flag("--renormalize", cfg.renormalize,
                    "accept state files with norm error above 1e-6");
      sub->add_option("--subspace", cfg.subspace,
                      "contiguous level range LO..HI (default: full space)");
    }
    if (with_angles) {
      sub->add_option("--k", cfg.K, "number of probing angles (odd, >= 3)")
          ->capture_default_str();
      sub->add_flag("--uneven", cfg.uneven,
                    "use optimized non-equidistant angles instead of the "
                    "uniform grid");
      sub->add_option("--phi0", cfg.phi0,
                      "offset of the uniform angle grid (radians)")
          ->capture_default_str();
    }
    if (with_shots)
      sub->add_option("--shots", cfg.shots, "shots per angle / sample count");
    if (with_points)
      sub->add_option("--points", cfg.points, "resolution (see command help)");
  };

  CLI::App* c;
  c = app.add_subcommand("table1",
                         "reference table: bounds and maxima for all rows");
  add_common(c, false, false, false, false);
  c->callback([&] { command = "table1"; });

  c = app.add_subcommand("score", "quantum score of a state (analytic or sampled)");
  add_common(c, true, true, true, false);
  c->callback([&] { command = "score"; });

  c = app.add_subcommand("sweep", "positivity expectation vs precession angle");
  add_common(c, true, false, false, true);
  c->callback([&] { command = "sweep"; });

  c = app.add_subcommand("optimize", "search non-equidistant probing angles");
  add_common(c, false, true, false, false);
  c->add_option("--d", cfg.d, "dimension 2J+1 (default 8)")
      ->check(CLI::Range(2, 64));
  c->callback([&] { command = "optimize"; });

  c = app.add_subcommand("pulse", "compile a target state into a pulse sequence");
  add_common(c, true, false, false, false);
  c->callback([&] { command = "pulse"; });

  c = app.add_subcommand("shots", "sample z-basis readout histograms");
  add_common(c, true, true, true, false);
  c->callback([&] { command = "shots"; });

  c = app.add_subcommand("wigner", "spherical Wigner function on a grid");
  add_common(c, true, false, false, true);
  c->callback([&] { command = "wigner"; });

  c = app.add_subcommand("mc-classical",
                         "Monte Carlo over classical precessing models");
  add_common(c, false, true, true, false);
  c->callback([&] { command = "mc-classical"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fail(2, "usage", e.what());
  }

  try {
    if (command == "table1") return cmd_table1(cfg);
    if (command == "score") return cmd_score(cfg);
    if (command == "sweep") return cmd_sweep(cfg);
    if (command == "optimize") return cmd_optimize(cfg);
    if (command == "pulse") return cmd_pulse(cfg);
    if (command == "shots") return cmd_shots(cfg);
    if (command == "wigner") return cmd_wigner(cfg);
    if (command == "mc-classical") return cmd_mc_classical(cfg);
    return fail(2, "usage", "no command selected");
  } catch (const std::invalid_argument& e) {
    return fail(2, "invalid-argument", e.what());
  } catch (const std::runtime_error& e) {
    return fail(3, "numerical", e.what());
  }
}
