// Command-line front end: simulate, estimate, reproduce, validate.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sphlrd/contrast.hpp"
#include "sphlrd/csv_io.hpp"
#include "sphlrd/errors.hpp"
#include "sphlrd/experiments.hpp"
#include "sphlrd/mixed_estimator.hpp"
#include "sphlrd/scenario.hpp"

namespace fs = std::filesystem;
using namespace sphlrd;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct Common {
  std::string scenario = "sphar1_compact";
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  int workers = 1;
};

Scenario load(const Common& c) {
  auto s = resolve_scenario(c.scenario);
  return c.seed ? reseed(s, *c.seed) : s;
}

std::string in_out(const Common& c, const std::string& file) {
  fs::create_directories(c.out);
  return (fs::path(c.out) / file).string();
}

template <class F>
void write_with(const std::string& path, F&& body) {
  std::ostringstream s;
  body(s);
  write_file_atomic(path, s.str());
  std::cout << "wrote " << path << '\n';
}

FunctionalSample obtain_sample(const Scenario& sc, int T, std::uint64_t rep, const std::string& sample_path) {
  if (sample_path.empty()) return simulate_sample(sc.sim_config(T, rep));
  std::ifstream in(sample_path);
  if (!in) throw DataError("cannot read sample " + sample_path);
  return read_sample_csv(in, sc.model.truncation());
}

int cmd_simulate(const Common& c, int T, std::uint64_t rep, int frames) {
  const auto sc = load(c);
  const auto sample = simulate_sample(sc.sim_config(T, rep));
  const std::string tag = sc.name + "_T" + std::to_string(T) + "_r" + std::to_string(rep);
  write_with(in_out(c, tag + "_sample.csv"), [&](std::ostream& o) { write_sample_csv(o, sample); });
  std::vector<int> times;
  for (int i = 1; i <= frames; ++i) times.push_back(std::max(1, i * T / frames));
  write_with(in_out(c, tag + "_snapshot.csv"),
             [&](std::ostream& o) { write_snapshot_csv(o, sample, sc.model.pole, equiangular_grid(), times); });
  const auto ptable = periodogram_scale(fdft(sample));
  write_with(in_out(c, tag + "_periodogram.csv"), [&](std::ostream& o) { write_spectral_csv(o, ptable); });
  const auto truth = model_table(sc.model, sc.model.lrd, ptable.scales(), T);
  write_with(in_out(c, tag + "_model.csv"), [&](std::ostream& o) { write_spectral_csv(o, truth); });
  return 0;
}

int cmd_estimate(const Common& c, int T, std::uint64_t rep, const std::string& sample_path) {
  const auto sc = load(c);
  const auto sample = obtain_sample(sc, T, rep, sample_path);
  const auto ptable = periodogram_scale(fdft(sample));
  const std::string tag = sc.name + "_T" + std::to_string(sample.length()) + "_r" + std::to_string(rep);
  if (sc.estimation.estimator == EstimatorKind::mixed) {
    MixedEstimator est(sc.model, sc.contrast_config(), sc.model.srd_set, sc.window(), sample.length());
    const auto m = est.estimate(ptable);
    write_with(in_out(c, tag + "_mixed.csv"), [&](std::ostream& o) { write_mixed_csv(o, m); });
    if (m.selection) {
      write_with(in_out(c, tag + "_contrast.csv"), [&](std::ostream& o) { write_contrast_csv(o, *m.selection); });
      std::cout << "selected candidate " << m.selection->selected << " (" << m.selection->selected_profile.label
                << ")\n";
    }
    if (m.degenerate) std::cout << "warning: every scale is short-memory, no contrast step\n";
  } else {
    const auto report = select_theta(ptable, sc.model, sc.contrast_config());
    write_with(in_out(c, tag + "_contrast.csv"), [&](std::ostream& o) { write_contrast_csv(o, report); });
    const auto plug = model_table(sc.model, report.selected_profile, ptable.scales(), sample.length());
    write_with(in_out(c, tag + "_plugin.csv"), [&](std::ostream& o) { write_spectral_csv(o, plug); });
    std::cout << "selected candidate " << report.selected << " (" << report.selected_profile.label << ")\n";
  }
  write_with(in_out(c, tag + "_periodogram.csv"), [&](std::ostream& o) { write_spectral_csv(o, ptable); });
  return 0;
}

int cmd_reproduce(Common c, const std::string& positional, bool full_scale, bool fresh) {
  if (!positional.empty()) c.scenario = positional;
  const auto sc = load(c);
  auto plan = ExperimentPlan::from_scenario(sc, c.out, c.workers, full_scale);
  plan.resume = !fresh;
  const auto res = run_plan(plan);
  const auto cands = plan.scenario.candidates();
  const auto truth = std::find_if(cands.begin(), cands.end(), [](const LrdProfile& p) { return p.label == "theta0"; });
  for (const auto& cell : res.cells) {
    std::cout << "T=" << cell.length << " R=" << cell.replications;
    if (!cell.selection_frequency.empty() && truth != cands.end()) {
      std::cout << " P(select theta0)=" << cell.selection_frequency[static_cast<std::size_t>(truth - cands.begin())];
    }
    std::cout << " mean s/rep=" << cell.mean_seconds << (cell.jensen_ok ? "" : " JENSEN-VIOLATION") << '\n';
  }
  std::cout << res.simulated << " replications simulated, " << res.reused << " reused, " << res.files.size()
            << " CSV files in " << c.out << '\n';
  return 0;
}

int cmd_validate(const Common& c) {
  const auto sc = load(c);
  const auto rep = validate_summability(sc.model);
  std::cout << "scenario " << sc.name << " M=" << sc.model.truncation() << '\n';
  std::cout << "trace partial sum " << rep.trace_partial_sum << ", Hilbert-Schmidt partial sum "
            << rep.hilbert_schmidt_partial_sum << '\n';
  if (rep.tail_exponent) std::cout << "fitted tail exponent " << *rep.tail_exponent << '\n';
  std::cout << (rep.summable ? "summable" : "warning: B_n(0) tail does not decay faster than n^-2") << '\n';

  const auto config = sc.contrast_config();
  double worst = 0.0;
  for (const auto& cand : config.candidates) {
    for (int n = 1; n <= sc.model.truncation(); ++n) {
      const double norm = normalizer(sc.model, cand, config, n);
      const double a = cand.alpha(n);
      const auto f = [&](double w) {
        return spectral_density_at(sc.model, a, n, w) / norm * config.weight(n) * std::pow(w, config.gamma);
      };
      const double total = 2.0 * integrate_origin_singular(f, std::numbers::pi, a - config.gamma, 2 * config.quadrature_nodes);
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  std::cout << "identity constraint: max |integral - 1| = " << worst << " over " << config.candidates.size()
            << " candidates\n";
  if (worst > 1e-6) {
    std::cerr << "identity constraint violated\n";
    return kExitData;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long-memory functional time series on the sphere"};
  app.require_subcommand(1);
  Common common;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", common.scenario, "built-in scenario name or JSON file");
    sub->add_option("--seed", common.seed, "master seed (overrides the scenario)");
    sub->add_option("--out", common.out, "output directory");
    sub->add_option("--workers", common.workers, "worker threads")->check(CLI::PositiveNumber);
  };

  int length = 512;
  std::uint64_t replication = 0;
  int frames = 9;
  std::string sample_path;
  std::string positional;
  bool full_scale = false;
  bool fresh = false;
  bool list = false;
  bool print = false;

  auto* sim = app.add_subcommand("simulate", "emit sample, snapshot and periodogram CSVs");
  add_common(sim);
  sim->add_option("-T,--length", length, "sample length")->check(CLI::Range(2, 1 << 24));
  sim->add_option("--replication", replication, "replication index");
  sim->add_option("--frames", frames, "snapshot times")->check(CLI::Range(1, 1000));

  auto* est = app.add_subcommand("estimate", "single-sample contrast or mixed estimate");
  add_common(est);
  est->add_option("-T,--length", length, "sample length")->check(CLI::Range(2, 1 << 24));
  est->add_option("--replication", replication, "replication index");
  est->add_option("--sample", sample_path, "read the sample from an n,j,t,value CSV instead of simulating");

  auto* rep = app.add_subcommand("reproduce", "run the Monte-Carlo plan of a scenario");
  add_common(rep);
  rep->add_option("name", positional, "built-in scenario name or JSON file");
  rep->add_flag("--full-scale", full_scale, "use the full T and R grid");
  rep->add_flag("--fresh", fresh, "ignore persisted replications");

  auto* val = app.add_subcommand("validate", "summability and identity-constraint checks");
  add_common(val);
  val->add_flag("--list", list, "print the built-in scenarios and exit");
  val->add_flag("--print", print, "print the resolved scenario as JSON and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) return cmd_simulate(common, length, replication, frames);
    if (*est) return cmd_estimate(common, length, replication, sample_path);
    if (*rep) return cmd_reproduce(common, positional, full_scale, fresh);
    if (*val) {
      if (list) {
        for (const auto& name : builtin_scenarios()) std::cout << name << '\n';
        return 0;
      }
      if (print) {
        std::cout << nlohmann::json::parse(load(common).canonical).dump(2) << '\n';
        return 0;
      }
      return cmd_validate(common);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidModel& e) {
    std::cerr << "invalid model: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
