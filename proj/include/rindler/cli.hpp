#pragma once

// Command-line front end. Exit codes: 0 success, 2 usage or validation
// error, 3 I/O failure.

#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rindler/ensembles.hpp"
#include "rindler/entanglement.hpp"
#include "rindler/errors.hpp"
#include "rindler/experiments.hpp"
#include "rindler/io.hpp"
#include "rindler/unruh.hpp"

namespace rindler::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Accepts decimals and the exact literal "pi/4".
inline double parse_angle(const std::string& text) {
  if (text == "pi/4") return kQuarterPi;
  if (text == "0") return 0.0;
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ValidationError("cannot parse angle '" + text + "' (use a decimal or pi/4)");
  return x;
}

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Negativity of two-mode fermionic field states seen by accelerated observers"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned workers = default_workers();
  app.add_option("--workers", workers, "Worker threads (results do not depend on this)")->check(CLI::PositiveNumber);

  // survey
  auto* survey = app.add_subcommand("survey", "Monte Carlo abundance of entanglement extinction");
  std::size_t survey_samples = 100000;
  double survey_qr = 1.0;
  double ql_phase = 0.0;
  std::size_t bins = 100;
  std::optional<std::uint64_t> survey_seed;
  std::string survey_out;
  survey->add_option("--samples", survey_samples, "Number of Ginibre samples")->required();
  survey->add_option("--qr", survey_qr, "Weight of the right Unruh mode");
  survey->add_option("--ql-phase", ql_phase, "Phase of the left Unruh weight");
  survey->add_option("--bins", bins, "Histogram bins on [0, 0.5]");
  survey->add_option("--seed", survey_seed, "RNG seed (random if omitted)");
  survey->add_option("--out", survey_out, "CSV output path");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Negativity of all observer pairs on an (r1, r2) grid");
  std::string sweep_state;
  double sweep_qr = 1.0;
  std::size_t grid = 64;
  std::optional<std::uint64_t> sweep_seed;
  std::string sweep_out;
  sweep->add_option("--state", sweep_state, "w | alphabeta | bell | path to a state file")->required();
  sweep->add_option("--qr", sweep_qr, "Weight of the right Unruh mode");
  sweep->add_option("--ql-phase", ql_phase, "Phase of the left Unruh weight");
  sweep->add_option("--grid", grid, "Grid points per axis, endpoints included");
  sweep->add_option("--seed", sweep_seed, "Echoed in the summary; the sweep is deterministic");
  sweep->add_option("--out", sweep_out, "CSV output path");

  // radius
  auto* radius = app.add_subcommand("radius", "Smallest mixing weight that destroys entanglement at infinite acceleration");
  std::size_t radius_samples = 100000;
  double pstep = 0.01;
  std::optional<std::uint64_t> radius_seed;
  std::string radius_out;
  radius->add_option("--samples", radius_samples, "Number of Ginibre samples")->required();
  radius->add_option("--pstep", pstep, "Step of the mixing-weight scan");
  radius->add_option("--seed", radius_seed, "RNG seed (random if omitted)");
  radius->add_option("--out", radius_out, "CSV output path");

  // negativity
  auto* single = app.add_subcommand("negativity", "Negativities at a single (r1, r2)");
  std::string single_state;
  std::string r1_text = "0", r2_text = "0";
  double single_qr = 1.0;
  std::string which = "all";
  std::optional<std::uint64_t> single_seed;
  single->add_option("--state", single_state, "w | alphabeta | bell | path to a state file")->required();
  single->add_option("--r1", r1_text, "Acceleration angle of frequency 1 (decimal or pi/4)");
  single->add_option("--r2", r2_text, "Acceleration angle of frequency 2 (decimal or pi/4)");
  single->add_option("--qr", single_qr, "Weight of the right Unruh mode");
  single->add_option("--ql-phase", ql_phase, "Phase of the left Unruh weight");
  single->add_option("--bipartition", which, "all | rr | ra | ar | aa");
  single->add_option("--seed", single_seed, "Echoed in the summary; the query is deterministic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (survey->parsed()) {
      SurveyConfig cfg;
      cfg.n_samples = survey_samples;
      cfg.qR = survey_qr;
      cfg.qL_phase = ql_phase;
      cfg.histogram_bins = bins;
      cfg.seed = resolve_seed(survey_seed);
      const auto result = run_survey(cfg, workers);
      if (!survey_out.empty()) io::write_csv(result, survey_out);
      out << io::summary_json(result).dump(2) << '\n';
    } else if (sweep->parsed()) {
      const auto rho = resolve_state(sweep_state);
      const auto result = run_sweep(rho, sweep_qr, grid, workers, ql_phase);
      if (!sweep_out.empty()) io::write_csv(result, sweep_out);
      auto summary = io::summary_json(result);
      summary["state"] = sweep_state;
      summary["seed"] = resolve_seed(sweep_seed);
      out << summary.dump(2) << '\n';
    } else if (radius->parsed()) {
      RadiusConfig cfg;
      cfg.n_samples = radius_samples;
      cfg.p_step = pstep;
      cfg.seed = resolve_seed(radius_seed);
      const auto result = run_radius_scan(cfg, workers);
      if (!radius_out.empty()) io::write_csv(result, radius_out);
      out << io::summary_json(result).dump(2) << '\n';
    } else if (single->parsed()) {
      std::vector<Bipartition> selected;
      if (which == "all") {
        selected.assign(kAllBipartitions.begin(), kAllBipartitions.end());
      } else if (auto b = parse_bipartition(which)) {
        selected.push_back(*b);
      } else {
        throw ValidationError("unknown bipartition '" + which + "' (use all, rr, ra, ar or aa)");
      }
      const auto rho = resolve_state(single_state);
      const auto params = UnruhParams::make(parse_angle(r1_text), parse_angle(r2_text), single_qr, ql_phase);
      const auto values = all_bipartition_negativities(rho, params);
      nlohmann::json j = {{"command", "negativity"},
                          {"state", single_state},
                          {"r1", params.r1},
                          {"r2", params.r2},
                          {"qr", single_qr},
                          {"ql_phase", ql_phase},
                          {"seed", resolve_seed(single_seed)},
                          {"inertial", inertial_negativity(rho).value}};
      for (auto b : selected) j[std::string(short_name(b))] = values[b].value;
      out << j.dump(2) << '\n';
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {  // ValidationError, DimensionError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {  // IndexError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace rindler::cli
