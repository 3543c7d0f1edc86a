#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cusumlab/aplus.hpp"
#include "cusumlab/certify.hpp"
#include "cusumlab/record.hpp"
#include "cusumlab/simplex.hpp"
#include "cusumlab/sweeps.hpp"

namespace {

using namespace cusumlab;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string store;
  bool timing = false;
};

int emit(std::vector<VerificationRecord> records, const Output& out, std::chrono::steady_clock::time_point start) {
  if (out.timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    for (auto& rec : records) rec.elapsed_ms = ms.count();
  }
  if (out.store.empty()) {
    for (const auto& rec : records) std::cout << to_json_line(rec) << '\n';
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
  } else {
    try {
      append_records(records, out.store);
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
  }
  std::size_t failures = 0;
  for (const auto& rec : records) failures += rec.verdict == Verdict::fail ? 1 : 0;
  std::cerr << records.size() << " records, " << failures << " failed\n";
  return failures == 0 ? 0 : kExitFail;
}

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--store", out.store, "Append JSONL records to this file instead of printing them");
  cmd->add_flag("--timing", out.timing, "Fill elapsed_ms (breaks byte-identical reruns)");
}

GridSpec grid_from(double omega_max, int points) {
  GridSpec grid;
  grid.omega_max = omega_max;
  grid.points = points;
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cusumlab: exact verification of positive-cusum inequalities"};
  app.require_subcommand(1);

  Output out;
  int c_max = 5;
  int w_samples = 5;
  int samples = 100;
  int path_samples = 3;
  std::uint64_t seed = 1;
  std::function<std::vector<VerificationRecord>()> job;

  auto seeded = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    add_output_flags(cmd, out);
  };
  auto c_max_option = [&](CLI::App* cmd, bool required, int& target) {
    auto* opt = cmd->add_option("--c-max", target, "Largest number of populations")->check(CLI::Range(3, 8));
    if (required) opt->required();
    else opt->capture_default_str();
  };

  auto* verify = app.add_subcommand("verify", "Check one lemma or theorem over a scenario grid");
  verify->require_subcommand(1);

  auto* l21 = verify->add_subcommand("lemma21", "Positivity of every contributing cusum at a+");
  c_max_option(l21, true, c_max);
  l21->add_option("--w-samples", w_samples, "Odds draws per scenario (draw 0 is all-ones)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seeded(l21);
  l21->callback([&] { job = [&] { return lemma21_sweep(c_max, w_samples, seed, true); }; });

  auto* l41 = verify->add_subcommand("lemma41", "Equal-odds margins and the q_p probability model");
  c_max_option(l41, true, c_max);
  add_output_flags(l41, out);
  l41->callback([&] { job = [&] { return lemma41_sweep(c_max, 8); }; });

  auto* l42 = verify->add_subcommand("lemma42", "Single-index sign pattern at a+");
  int lemma_c_max = 6;
  c_max_option(l42, false, lemma_c_max);
  int lemma_samples = 200;
  l42->add_option("--w-samples", lemma_samples, "Odds draws per scenario")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seeded(l42);
  l42->callback([&] { job = [&] { return lemma42_sweep(lemma_c_max, lemma_samples, seed); }; });

  auto* l43 = verify->add_subcommand("lemma43", "Cross-product ratio bounds and the split-average identity");
  c_max_option(l43, false, lemma_c_max);
  l43->add_option("--w-samples", lemma_samples, "Odds draws per scenario")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seeded(l43);
  l43->callback([&] { job = [&] { return lemma43_sweep(lemma_c_max, lemma_samples, seed); }; });

  auto* t31 = verify->add_subcommand("theorem31", "Random configurations and stage-one paths");
  c_max_option(t31, true, c_max);
  t31->add_option("--samples", samples, "Random (a, w) draws per (c, b, k)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  t31->add_option("--path-samples", path_samples, "Odds draws per stage-one path")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seeded(t31);
  t31->callback([&] { job = [&] { return theorem31_sweep(c_max, samples, path_samples, seed); }; });

  auto* oracle = app.add_subcommand("oracle", "Engine against direct permutation enumeration");
  c_max_option(oracle, true, c_max);
  oracle->add_option("--w-samples", w_samples, "Odds draws per scenario")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seeded(oracle);
  oracle->callback([&] { job = [&] { return oracle_sweep(c_max, w_samples, seed); }; });

  std::string csv_path;
  int h2 = 47;
  double omega_max = 1e6;
  int points = 400;
  auto* fig = app.add_subcommand("figure1", "Write the simplex boundary curves for c=48, b=g=25, k=22");
  fig->add_option("--out", csv_path, "CSV output path")->required();
  fig->add_option("--h2", h2, "Second subscript entry")->capture_default_str();
  fig->add_option("--omega-max", omega_max, "Largest omega on the grid")->check(CLI::PositiveNumber)->capture_default_str();
  fig->add_option("--points", points, "Grid points")->check(CLI::Range(2, 1000000))->capture_default_str();
  add_output_flags(fig, out);
  fig->callback([&] {
    job = [&] {
      BoundaryCurve curve;
      try {
        curve = emit_figure1(csv_path, grid_from(omega_max, points), h2);
      } catch (const std::runtime_error& e) {
        throw IoError(e.what());
      }
      return scan_records(curve, "figure1");
    };
  });

  int c = 0, b = 0, k = 0;
  auto* scan = app.add_subcommand("scan-A", "Scan the simplex boundary weighted average for one instance");
  scan->add_option("--c", c)->required();
  scan->add_option("--b", b)->required();
  scan->add_option("--k", k)->required();
  scan->add_option("--h2", h2)->required();
  scan->add_option("--omega-max", omega_max)->check(CLI::PositiveNumber)->capture_default_str();
  scan->add_option("--points", points)->check(CLI::Range(2, 1000000))->capture_default_str();
  scan->add_option("--out", csv_path, "Optional CSV output path");
  add_output_flags(scan, out);
  scan->callback([&] {
    job = [&] {
      const BoundaryCurve curve = scan_A(c, b, k, h2, grid_from(omega_max, points));
      if (!csv_path.empty()) {
        try {
          write_curve_csv(curve, csv_path);
        } catch (const std::runtime_error& e) {
          throw IoError(e.what());
        }
      }
      return scan_records(curve, "scan-A");
    };
  });

  int p = 0, q = 0;
  std::vector<int> h;
  auto* cert = app.add_subcommand("certify", "Positivity certificate for one a+ cusum");
  cert->set_help_flag("--help", "Print this help message and exit");
  cert->add_option("--c", c)->required();
  cert->add_option("--b", b)->required();
  cert->add_option("--k", k)->required();
  cert->add_option("--p", p)->required();
  cert->add_option("--q", q)->required();
  cert->add_option("--h", h, "Cusum subscript, comma separated")->required()->delimiter(',');
  cert->add_option("--samples", samples, "Numeric fallback draws when inconclusive")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  seeded(cert);
  cert->callback([&] {
    job = [&] {
      const Scenario scn = Scenario::representative(c, b, k, p, q);
      CertifyOptions options;
      options.fallback_samples = samples;
      options.seed = seed;
      const CusumSubscript sub(h);
      return std::vector<VerificationRecord>{certificate_record(scn, sub, certify_positivity(scn, sub, options))};
    };
  });

  auto* sweep = app.add_subcommand("sweep", "Full a+ cusum enumeration through the engine");
  c_max_option(sweep, true, c_max);
  sweep->add_option("--w-samples", w_samples, "Odds draws per scenario")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seeded(sweep);
  sweep->callback([&] { job = [&] { return lemma21_sweep(c_max, w_samples, seed, false); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    return emit(job(), out, start);
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
