#pragma once

// Subcommands of the helix tool. Kept in a header so the test suite can run
// them in-process.

#include "helix/alt_frame.hpp"
#include "helix/classify.hpp"
#include "helix/curve_model.hpp"
#include "helix/errors.hpp"
#include "helix/frenet.hpp"
#include "helix/indicatrix.hpp"
#include "helix/io.hpp"
#include "helix/synthesis.hpp"
#include "helix/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace helix::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2, kIo = 3 };

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string output;
  std::string family = "constant-precession";
  double w = 1.0;
  double mu = 0.5;
  double c1 = 0.0;
  double c2 = 1.0;
  double theta0 = std::numbers::pi / 2;
  double a = 1.0;
  double b = 1.0;
  std::string span;
  double h = 1e-3;
  std::size_t n = 0;  // 0: keep the input grid
  double tol_analytic = kTolAnalytic;
  double tol_numeric = kTolNumeric;
  std::string which = "tangent";
  bool sabban = false;
  bool inject_fault = false;
  bool full = false;
};

// Distance kept from open domain ends when no span is given.
inline constexpr double kDefaultGuard = 0.05;
// Analysis spacing for finely sampled input curves.
inline constexpr double kAnalysisSpacing = 1e-2;

inline Interval parse_span(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("--span must be lo:hi, got '" + text + "'");
  double lo = 0.0, hi = 0.0;
  try {
    std::size_t used = 0;
    lo = std::stod(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(text);
    const std::string rest = text.substr(colon + 1);
    hi = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    throw InvalidArgument("--span must be lo:hi, got '" + text + "'");
  }
  if (!(hi > lo)) throw InvalidArgument("--span needs lo < hi");
  return {lo, hi};
}

inline IntrinsicProfile make_profile(const RunConfig& cfg) {
  if (cfg.family == "circular-helix") return IntrinsicProfile::circular_helix(cfg.a, cfg.b);
  if (cfg.family == "constant-precession") return IntrinsicProfile::constant_precession(cfg.w, cfg.mu);
  if (cfg.family == "c-constant-precession") {
    return profile_c_constant_precession(cfg.c1, cfg.c2, cfg.mu, cfg.theta0);
  }
  if (cfg.family == "from-profile-csv") {
    if (cfg.input.empty()) throw InvalidArgument("from-profile-csv needs --input");
    return io::read_profile_file(cfg.input);
  }
  throw InvalidArgument("unknown family '" + cfg.family + "'");
}

inline Interval default_span(const IntrinsicProfile& p) {
  const Interval d = p.domain();
  if (p.is_tabulated()) return d;
  const double lo = std::isfinite(d.lo) ? d.lo + kDefaultGuard : 0.0;
  const double hi = std::isfinite(d.hi) ? d.hi - kDefaultGuard : lo + 4.0 * std::numbers::pi;
  return {lo, hi};
}

inline std::filesystem::path output_dir(const RunConfig& cfg) {
  std::filesystem::path dir = cfg.output.empty() ? "." : cfg.output;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

inline void emit_json(const RunConfig& cfg, const io::json& j, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << j.dump(2) << '\n';
  } else {
    io::write_json_file(cfg.output, j);
  }
}

struct Analysis {
  CurveSamples curve;
  FrenetApparatus app;
  AltFrameData alt;
};

inline Analysis analyze_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InvalidArgument("--input is required");
  Analysis a;
  const CurveSamples raw = io::read_curve_file(cfg.input);
  a.curve = cfg.n > 0 ? resample_arclength(raw, cfg.n) : decimate_to_spacing(raw, kAnalysisSpacing);
  a.app = frenet_from_samples(a.curve);
  a.alt = alt_frame_from_frenet(a.app);
  return a;
}

inline int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  const IntrinsicProfile profile = make_profile(cfg);
  const Interval span = cfg.span.empty() ? default_span(profile) : parse_span(cfg.span);
  const FrenetIntegration run = synthesize_curve(profile, span, cfg.h);
  const auto dir = output_dir(cfg);
  const auto& app = run.apparatus;
  io::write_curve_file((dir / "curve.csv").string(), run.curve);
  io::write_profile_file((dir / "profile.csv").string(), app.s, app.kappa, app.tau);
  io::write_frames_file((dir / "frames.csv").string(), app.s, app.T, app.N, app.B);
  out << "synth: " << run.curve.size() << " samples on [" << io::format_number(span.lo) << ", "
      << io::format_number(span.hi) << "], frame drift " << io::format_number(run.drift_per_length)
      << " per unit length\n";
  return kOk;
}

inline io::json profile_columns(const std::vector<std::pair<std::string, const std::vector<double>*>>& cols) {
  io::json j = io::json::object();
  for (const auto& [name, v] : cols) {
    io::json arr = io::json::array();
    for (double x : *v) arr.push_back(io::number(x));
    j[name] = arr;
  }
  return j;
}

inline int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const Analysis a = analyze_input(cfg);
  const auto H = harmonic_curvature(a.app);
  io::json j;
  j["samples"] = a.curve.size();
  j["coverage"] = {{"frenet", io::number(a.app.coverage)}, {"alternative", io::number(a.alt.coverage)}};
  j["statistics"] = {{"kappa", io::summary_json(a.app.kappa)}, {"tau", io::summary_json(a.app.tau)},
                     {"H", io::summary_json(H)},           {"sigma", io::summary_json(a.alt.sigma)},
                     {"f", io::summary_json(a.alt.f)},     {"g", io::summary_json(a.alt.g)}};
  if (cfg.full) {
    j["profiles"] = {
        {"frenet", profile_columns({{"s", &a.app.s}, {"kappa", &a.app.kappa}, {"tau", &a.app.tau}, {"H", &H}})},
        {"alternative",
         profile_columns({{"s", &a.alt.s}, {"sigma", &a.alt.sigma}, {"f", &a.alt.f}, {"g", &a.alt.g}})}};
  }
  j["metadata"] = io::metadata_json("analyze");
  emit_json(cfg, j, out);
  return kOk;
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const Analysis a = analyze_input(cfg);
  const ClassificationReport report = classify_curve(a.app, a.alt, cfg.tol_numeric);
  io::json j = io::to_json(report);
  j["metadata"] = io::metadata_json("classify");
  emit_json(cfg, j, out);
  return kOk;
}

inline int cmd_indicatrix(const RunConfig& cfg, std::ostream& out) {
  const Analysis a = analyze_input(cfg);
  std::vector<Indicatrix> pieces;
  if (cfg.which == "tangent") {
    pieces.push_back(tangent_indicatrix(a.app, a.alt));
  } else if (cfg.which == "normal") {
    pieces.push_back(normal_indicatrix(a.app, a.alt));
  } else if (cfg.which == "binormal") {
    pieces = binormal_indicatrix(a.app, a.alt);
  } else {
    throw InvalidArgument("--which must be tangent, normal or binormal");
  }

  const bool tagged = cfg.which == "binormal";
  std::vector<double> t, x, y, z, kg, piece_id, s_base, s_ind, kappa, tau;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const Indicatrix& ind = pieces[p];
    std::vector<double> k_g;
    if (cfg.sabban) k_g = sabban_frame(ind.curve).k_g;
    for (std::size_t i = 0; i < ind.curve.size(); ++i) {
      t.push_back(ind.curve.t[i]);
      x.push_back(ind.curve.gamma[i].x());
      y.push_back(ind.curve.gamma[i].y());
      z.push_back(ind.curve.gamma[i].z());
      if (cfg.sabban) kg.push_back(k_g[i]);
      piece_id.push_back(static_cast<double>(p));
      s_base.push_back(ind.intrinsics.s_base[i]);
      s_ind.push_back(ind.intrinsics.s_ind[i]);
      kappa.push_back(ind.intrinsics.kappa[i]);
      tau.push_back(ind.intrinsics.tau[i]);
    }
  }

  const auto dir = output_dir(cfg);
  std::vector<std::string> header = io::kSphericalHeader;
  std::vector<std::vector<double>> cols{t, x, y, z};
  if (cfg.sabban) {
    header.push_back("k_g");
    cols.push_back(kg);
  }
  std::vector<std::string> iheader = {"s", "s_ind", "kappa", "tau"};
  std::vector<std::vector<double>> icols{s_base, s_ind, kappa, tau};
  if (tagged) {
    header.push_back("piece");
    cols.push_back(piece_id);
    iheader.push_back("piece");
    icols.push_back(piece_id);
  }
  io::write_table_file((dir / (cfg.which + "_indicatrix.csv")).string(), header, cols);
  io::write_table_file((dir / (cfg.which + "_intrinsics.csv")).string(), iheader, icols);
  out << "indicatrix: " << cfg.which << ", " << t.size() << " samples in " << pieces.size()
      << (pieces.size() == 1 ? " piece\n" : " pieces\n");
  return kOk;
}

inline VerifyGrid grid_from_json(const io::json& j) {
  VerifyGrid g;
  if (j.contains("constant_precession")) {
    for (const auto& row : j.at("constant_precession")) {
      g.constant_precession.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
    }
  }
  if (j.contains("c_constant_precession")) {
    for (const auto& row : j.at("c_constant_precession")) {
      g.c_constant_precession.emplace_back(row.at(0).get<double>(), row.at(1).get<double>(),
                                           row.at(2).get<double>());
    }
  }
  return g;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyGrid grid = default_verify_grid();
  if (!cfg.input.empty()) {
    std::ifstream in(cfg.input);
    if (!in) throw IoError("cannot open '" + cfg.input + "' for reading");
    try {
      grid = grid_from_json(io::json::parse(in));
    } catch (const io::json::exception& e) {
      throw MalformedInput(cfg.input + ": " + e.what());
    }
  }
  grid.inject_fault = cfg.inject_fault;
  grid.tol_analytic = cfg.tol_analytic;
  grid.tol_numeric = cfg.tol_numeric;
  grid.h = cfg.h;

  const std::vector<Check> checks = run_verify(grid);
  io::json list = io::json::array();
  std::size_t failed = 0;
  for (const auto& c : checks) {
    io::json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["residual"] = io::number(c.residual);
    e["tolerance"] = io::number(c.tolerance);
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (c.informational) e["informational"] = true;
    list.push_back(e);
    failed += c.pass ? 0 : 1;
  }
  io::json j;
  j["checks"] = list;
  j["summary"] = {{"total", checks.size()}, {"failed", failed}, {"pass", failed == 0}};
  j["metadata"] = io::metadata_json("verify");
  emit_json(cfg, j, out);
  if (!(cfg.output.empty() || cfg.output == "-")) {
    out << "verify: " << checks.size() << " checks, " << failed << " failed\n";
  }
  return failed == 0 ? kOk : kVerificationFailed;
}

/// Parses arguments and runs one subcommand. Flags may also come from
/// HELIX_* environment variables; explicit flags win.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"Frenet and alternative-frame analysis of space curves"};
  app.require_subcommand(1);
  // -h would clash with --h, the integrator step.
  app.set_help_flag("--help", "Print this help message and exit");

  app.add_option("--input", cfg.input, "input file")->envname("HELIX_INPUT");
  app.add_option("--output", cfg.output, "output file or directory")->envname("HELIX_OUTPUT");
  app.add_option("--family", cfg.family, "profile family")
      ->envname("HELIX_FAMILY")
      ->check(CLI::IsMember(
          {"circular-helix", "constant-precession", "c-constant-precession", "from-profile-csv"}));
  app.add_option("--w", cfg.w)->envname("HELIX_W");
  app.add_option("--mu", cfg.mu)->envname("HELIX_MU");
  app.add_option("--c1", cfg.c1)->envname("HELIX_C1");
  app.add_option("--c2", cfg.c2)->envname("HELIX_C2");
  app.add_option("--theta0", cfg.theta0)->envname("HELIX_THETA0");
  app.add_option("--a", cfg.a, "circular helix radius")->envname("HELIX_A");
  app.add_option("--b", cfg.b, "circular helix pitch / 2 pi")->envname("HELIX_B");
  app.add_option("--span", cfg.span, "lo:hi")->envname("HELIX_SPAN");
  app.add_option("--h", cfg.h, "integrator step")->envname("HELIX_H")->check(CLI::PositiveNumber);
  app.add_option("--n", cfg.n, "resample to n points")->envname("HELIX_N")->check(CLI::Range(5, 100000000));
  app.add_option("--tol-analytic", cfg.tol_analytic)
      ->envname("HELIX_TOL_ANALYTIC")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-numeric", cfg.tol_numeric)
      ->envname("HELIX_TOL_NUMERIC")
      ->check(CLI::PositiveNumber);
  app.add_option("--which", cfg.which)
      ->envname("HELIX_WHICH")
      ->check(CLI::IsMember({"tangent", "normal", "binormal"}));
  app.add_flag("--sabban", cfg.sabban, "add geodesic curvature column");
  app.add_flag("--inject-fault", cfg.inject_fault, "add a corrupted profile to the grid");
  app.add_flag("--full", cfg.full, "include full profiles in the analyze report");

  const std::pair<const char*, const char*> commands[] = {
      {"synth", "integrate a curvature/torsion profile into curve.csv, frames.csv, profile.csv"},
      {"analyze", "Frenet and alternative-frame invariants of a sampled curve"},
      {"classify", "run the helix detectors on a sampled curve"},
      {"indicatrix", "tangent, normal or binormal indicatrix of a sampled curve"},
      {"verify", "self-check over a grid of synthesized curves"}};
  for (const auto& [name, description] : commands) {
    app.add_subcommand(name, description)
        ->fallthrough()
        ->set_help_flag("--help", "Print this help message and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  // CLI11 drops environment values that fail validation; treat them as errors.
  for (const CLI::Option* opt : app.get_options()) {
    const std::string& env = opt->get_envname();
    if (env.empty() || opt->count() > 0) continue;
    const char* value = std::getenv(env.c_str());
    if (value != nullptr && *value != '\0') {
      err << "error: " << env << ": invalid value '" << value << "'\n";
      return kUsage;
    }
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (cfg.subcommand == "synth") return cmd_synth(cfg, out);
    if (cfg.subcommand == "analyze") return cmd_analyze(cfg, out);
    if (cfg.subcommand == "classify") return cmd_classify(cfg, out);
    if (cfg.subcommand == "indicatrix") return cmd_indicatrix(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
}

}  // namespace helix::cli
