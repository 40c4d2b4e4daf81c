// prppsm: command-line front end for the PRPP-SM link simulator.
//
//   prppsm simulate --config scenario.cfg --out curve.csv [--workers N]
//   prppsm gap --a a.csv --b b.csv [--ber 1e-2]
//   prppsm reproduce fig5|fig6|fig7|fig2|ablation [--out-dir DIR] [--workers N]

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "prppsm/error.hpp"
#include "prppsm/harness.hpp"
#include "prppsm/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace prppsm;

namespace {

struct GapSpec {
  std::string a;
  std::string b;
};

struct FigureSpec {
  std::string name;
  std::vector<std::string> configs;
  std::vector<GapSpec> gaps;
};

const std::vector<FigureSpec>& figures() {
  static const std::vector<FigureSpec> specs = {
      {"fig5",
       {"fig5_sm", "fig5_prppsm_p2", "fig5_prppsm_p4", "fig5_prppsm_p5"},
       {{"fig5_sm", "fig5_prppsm_p2"}, {"fig5_sm", "fig5_prppsm_p4"},
        {"fig5_sm", "fig5_prppsm_p5"}}},
      {"fig6",
       {"fig6_prpp_p2", "fig6_prpp_p4", "fig6_prpp_p5", "fig5_prppsm_p2", "fig5_prppsm_p4",
        "fig5_prppsm_p5"},
       {{"fig6_prpp_p2", "fig5_prppsm_p2"}, {"fig6_prpp_p4", "fig5_prppsm_p4"},
        {"fig6_prpp_p5", "fig5_prppsm_p5"}}},
      {"fig7",
       {"fig7_prpp_p10", "fig7_prpp_p20", "fig7_prpp_p70", "fig7_prppsm_p10", "fig7_prppsm_p20",
        "fig7_prppsm_p70"},
       {{"fig7_prpp_p10", "fig7_prppsm_p10"}, {"fig7_prpp_p20", "fig7_prppsm_p20"},
        {"fig7_prpp_p70", "fig7_prppsm_p70"}}},
      {"fig2", {"fig2_prpp_p1", "fig2_prpp_p50", "fig2_prpp_p400"}, {}},
      {"ablation",
       {"fig5_prppsm_p5", "ablation_p5"},
       {{"ablation_p5", "fig5_prppsm_p5"}}},
  };
  return specs;
}

void print_curve(const BerCurve& curve) {
  std::printf("# %s  (digest %s, %.1f s)\n", curve.scenario_name.c_str(),
              curve.scenario_digest.c_str(), curve.wall_seconds);
  std::printf("%8s %10s %12s %10s %12s %9s %11s\n", "snr_db", "frames", "bits", "errors", "ber",
              "avg_iter", "avg_evals");
  for (const BerPoint& p : curve.points) {
    std::printf("%8.2f %10llu %12llu %10llu %12.4e %9.2f %11.1f\n", p.snr_db,
                static_cast<unsigned long long>(p.frames), static_cast<unsigned long long>(p.bits),
                static_cast<unsigned long long>(p.bit_errors), p.ber, p.avg_iterations,
                p.avg_neighbor_evals);
  }
  std::fflush(stdout);
}

BerCurve simulate_to(const Scenario& scenario, const fs::path& csv, unsigned workers) {
  const BerCurve curve = run_sweep(scenario, SweepOptions{workers});
  write_curve_csv(curve, csv);
  write_curve_sidecar(curve, fs::path(csv.string() + ".json"));
  return curve;
}

void print_gap(const std::string& a_name, const BerCurve& a, const std::string& b_name,
               const BerCurve& b, double ber) {
  try {
    std::printf("gap(%s - %s) at BER %g: %.2f dB\n", a_name.c_str(), b_name.c_str(), ber,
                measure_gap(a, b, ber));
  } catch (const Error& e) {
    std::printf("gap(%s - %s) at BER %g: n/a (%s)\n", a_name.c_str(), b_name.c_str(), ber,
                e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PRPP-SM link-level Monte Carlo simulator"};
  app.require_subcommand(1);
  const unsigned default_workers = std::max(1U, std::thread::hardware_concurrency());

  std::string config_path;
  std::string out_path;
  unsigned workers = default_workers;
  auto* simulate = app.add_subcommand("simulate", "Run one scenario file and write a BER CSV");
  simulate->add_option("--config", config_path, "Scenario file (key = value)")->required();
  simulate->add_option("--out", out_path, "Output CSV path")->required();
  simulate->add_option("--workers", workers, "Worker threads (results do not depend on it)");

  std::string a_path;
  std::string b_path;
  double ber = 1e-2;
  auto* gap = app.add_subcommand("gap", "SNR gap (a minus b) at a target BER");
  gap->add_option("--a", a_path, "First curve CSV")->required();
  gap->add_option("--b", b_path, "Second curve CSV")->required();
  gap->add_option("--ber", ber, "Target BER")->check(CLI::PositiveNumber);

  std::string figure;
  std::string out_dir = "results";
  std::string config_dir = PRPPSM_CONFIG_DIR;
  auto* reproduce = app.add_subcommand("reproduce", "Run a bundled figure scenario set");
  reproduce->add_option("figure", figure, "fig5 | fig6 | fig7 | fig2 | ablation")->required();
  reproduce->add_option("--out-dir", out_dir, "Directory for CSV and JSON output");
  reproduce->add_option("--config-dir", config_dir, "Directory holding the bundled configs");
  reproduce->add_option("--workers", workers, "Worker threads");
  reproduce->add_option("--ber", ber, "Target BER for the gap report")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      print_curve(simulate_to(load_scenario(config_path), out_path, workers));
    } else if (*gap) {
      const BerCurve a = read_curve_csv(a_path);
      const BerCurve b = read_curve_csv(b_path);
      std::printf("%.4f\n", measure_gap(a, b, ber));
    } else if (*reproduce) {
      const FigureSpec* spec = nullptr;
      for (const auto& f : figures()) {
        if (f.name == figure) spec = &f;
      }
      if (spec == nullptr) throw ConfigError("unknown figure '" + figure + "'");
      fs::create_directories(out_dir);
      std::vector<std::pair<std::string, BerCurve>> curves;
      for (const auto& name : spec->configs) {
        const Scenario scenario = load_scenario(fs::path(config_dir) / (name + ".cfg"));
        const BerCurve curve = simulate_to(scenario, fs::path(out_dir) / (name + ".csv"), workers);
        print_curve(curve);
        curves.emplace_back(name, curve);
      }
      auto find = [&](const std::string& name) -> const BerCurve& {
        for (const auto& [n, c] : curves) {
          if (n == name) return c;
        }
        throw ConfigError("no curve " + name);
      };
      for (const auto& g : spec->gaps) print_gap(g.a, find(g.a), g.b, find(g.b), ber);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
