// Batch entry point: run curve/flow/atomicity operations on file inputs,
// or run the verification suite. Exit codes: 0 success, 1 property-suite
// failure, 2 input or usage error.

#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "grassflow/atomicity.hpp"
#include "grassflow/flow.hpp"
#include "grassflow/io.hpp"
#include "grassflow/linear_curve.hpp"
#include "grassflow/rng.hpp"
#include "grassflow/verify.hpp"

namespace {

using grassflow::io::Json;

constexpr std::uint64_t kDefaultSeed = 42;

void emit(const Json& j, const std::string& output_path) {
  const std::string text = j.dump(2) + "\n";
  if (output_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    grassflow::io::write_file_atomic(output_path, text);
}

void emit_text(const std::string& text, const std::string& output_path) {
  if (output_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    grassflow::io::write_file_atomic(output_path, text);
}

std::string sibling_csv_path(const std::string& json_path) {
  std::filesystem::path p(json_path);
  p.replace_extension(".csv");
  return p.string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lengths of linear subspace curves and multiplicative-flow "
               "trajectories on Grassmann manifolds"};
  app.require_subcommand(1);

  std::string input, output;
  std::uint64_t seed = kDefaultSeed;
  double tol_length = grassflow::tol::length_tol;
  double tol_root = grassflow::tol::root_tol;
  std::string format = "json";

  const auto add_common = [&](CLI::App* cmd, bool needs_input) {
    auto* in = cmd->add_option("--input", input, "input JSON file");
    if (needs_input) in->required();
    cmd->add_option("--output", output, "output file (stdout when omitted)");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--tol-length", tol_length, "arc-length quadrature tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol-root", tol_root, "real-root acceptance tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  // curve-analyze
  auto* analyze_cmd =
      app.add_subcommand("curve-analyze", "full report for a linear curve");
  int mono_grid = 200;
  add_common(analyze_cmd, true);
  analyze_cmd->add_option("--grid", mono_grid,
                          "monotonicity grid points per direction");

  // curve-length
  auto* length_cmd =
      app.add_subcommand("curve-length", "arc length over a parameter range");
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  add_common(length_cmd, true);
  length_cmd->add_option("--t0", t0, "lower parameter (default -inf)");
  length_cmd->add_option("--t1", t1, "upper parameter (default +inf)");

  // curve-partition
  auto* partition_cmd = app.add_subcommand(
      "curve-partition", "roots of the determinant polynomial and intervals");
  add_common(partition_cmd, true);

  // flow-length
  auto* flow_cmd = app.add_subcommand(
      "flow-length", "trajectory length of one bundle-map sample");
  add_common(flow_cmd, true);

  // flow-ensemble
  auto* ensemble_cmd = app.add_subcommand(
      "flow-ensemble", "trajectory lengths of a random map ensemble");
  int ens_m = 2, ens_n = 2, ens_p = 0, ens_q = 0, ensemble = 1000;
  add_common(ensemble_cmd, false);
  ensemble_cmd->add_option("--m", ens_m, "complex fiber columns");
  ensemble_cmd->add_option("--n", ens_n, "complex fiber rows");
  ensemble_cmd->add_option("--p", ens_p, "real debug: domain dimension");
  ensemble_cmd->add_option("--q", ens_q, "real debug: codomain dimension");
  ensemble_cmd->add_option("--ensemble", ensemble, "sample count")
      ->check(CLI::PositiveNumber);

  // atomicity
  auto* atom_cmd = app.add_subcommand(
      "atomicity", "fiber-length field of a map family over a base grid");
  add_common(atom_cmd, true);

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "run the full property suite");
  int max_dim = 6;
  add_common(verify_cmd, false);
  verify_cmd->add_option("--max-dim", max_dim, "largest random p, q")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze_cmd) {
      const grassflow::LinearCurve c = grassflow::io::read_curve_file(input);
      grassflow::AnalyzeOptions opt;
      opt.length_tol = tol_length;
      opt.mono_grid = mono_grid;
      emit(grassflow::io::curve_report_json(grassflow::analyze(c, opt)),
           output);
    } else if (*length_cmd) {
      const grassflow::LinearCurve c = grassflow::io::read_curve_file(input);
      Json j;
      j["t0"] = std::isfinite(t0) ? Json(t0) : Json(nullptr);
      j["t1"] = std::isfinite(t1) ? Json(t1) : Json(nullptr);
      j["length"] = grassflow::length(c, t0, t1, tol_length);
      emit(j, output);
    } else if (*partition_cmd) {
      const grassflow::LinearCurve c = grassflow::io::read_curve_file(input);
      emit(grassflow::io::partition_json(grassflow::partition(c, tol_root)),
           output);
    } else if (*flow_cmd) {
      const grassflow::BundleMapSample s =
          grassflow::io::read_bundle_map_file(input);
      Json j;
      j["length"] = grassflow::flow_length(s, tol_length);
      emit(j, output);
    } else if (*ensemble_cmd) {
      const bool real_debug = ens_p > 0 || ens_q > 0;
      if (real_debug && (ens_p < 1 || ens_q < 1))
        throw grassflow::InvalidArgument(
            "real debug mode needs both --p and --q");
      grassflow::Rng rng = grassflow::Rng(seed).stream(0x656e73ull);
      std::vector<double> lengths(ensemble);
      for (int i = 0; i < ensemble; ++i) {
        grassflow::Rng r = rng.stream(i);
        const grassflow::BundleMapSample s =
            real_debug ? grassflow::BundleMapSample::from_real(
                             r.gaussian(ens_q, ens_p))
                       : grassflow::BundleMapSample::from_complex(
                             r.gaussian_complex(ens_n, ens_m));
        lengths[i] = grassflow::flow_length(s, tol_length);
      }
      if (format == "csv") {
        emit_text(grassflow::io::lengths_csv(lengths), output);
      } else {
        double sup = 0.0, sum = 0.0;
        for (double len : lengths) {
          sup = std::max(sup, len);
          sum += len;
        }
        Json j;
        j["seed"] = seed;
        j["ensemble"] = ensemble;
        if (real_debug) {
          j["p"] = ens_p;
          j["q"] = ens_q;
        } else {
          j["m"] = ens_m;
          j["n"] = ens_n;
        }
        j["max_length"] = sup;
        j["mean_length"] = sum / ensemble;
        j["lengths"] = lengths;
        emit(j, output);
      }
    } else if (*atom_cmd) {
      const grassflow::MapFamily fam =
          grassflow::io::read_family_file(input, seed);
      const grassflow::AtomicityReport rep =
          grassflow::atomicity_report(fam, tol_length);
      emit(grassflow::io::atomicity_json(rep, fam.grid), output);
      if (!output.empty())
        grassflow::io::write_file_atomic(
            sibling_csv_path(output),
            grassflow::io::atomicity_csv(rep, fam.grid));
    } else if (*verify_cmd) {
      grassflow::VerifyOptions opt;
      opt.seed = seed;
      opt.max_dim = max_dim;
      const grassflow::VerifySummary summary = grassflow::run_verify(opt);
      for (const grassflow::CheckResult& c : summary.checks)
        std::fprintf(stderr, "[%s] %d %-28s measured=%.3e tol=%.1e (%.2fs)\n",
                     c.pass ? "PASS" : "FAIL", c.index, c.name.c_str(),
                     c.measured, c.tolerance, c.runtime_seconds);
      emit_text(grassflow::summary_json(summary), output);
      return summary.all_pass ? 0 : 1;
    }
  } catch (const grassflow::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
