#include "sphlrd/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>

#include <json.hpp>
#include <oneapi/tbb/global_control.h>
#include <oneapi/tbb/parallel_for.h>
#include <oneapi/tbb/task_arena.h>

#include "sphlrd/csv_io.hpp"
#include "sphlrd/errors.hpp"
#include "sphlrd/mixed_estimator.hpp"

namespace sphlrd {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string hex(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex << h;
  return s.str();
}

// Everything that depends only on the scenario and T.
struct LengthContext {
  int T = 0;
  std::vector<LrdProfile> candidates;
  std::vector<int> lrd_scales;
  std::optional<MixedEstimator> estimator;
  // Plug-in errors per candidate and scale, filled on long-memory scales.
  std::vector<std::vector<double>> cand_abs, cand_quad, cand_l1;
};

void prepare(LengthContext& ctx, const Scenario& sc, tbb::task_arena& arena) {
  const auto& model = sc.model;
  const int M = model.truncation();
  auto config = sc.contrast_config();
  ctx.candidates = config.candidates;
  ctx.estimator.emplace(model, std::move(config), model.srd_set, sc.window(), ctx.T);
  ctx.lrd_scales = ctx.estimator->lrd_scales();
  const auto C = ctx.candidates.size();
  ctx.cand_abs.assign(C, std::vector<double>(static_cast<std::size_t>(M), kNaN));
  ctx.cand_quad = ctx.cand_abs;
  ctx.cand_l1 = ctx.cand_abs;
  if (ctx.lrd_scales.empty()) return;
  arena.execute([&] {
    tbb::parallel_for(std::size_t{0}, C, [&](std::size_t c) {
      const auto plug = model_table(model, ctx.candidates[c], ctx.lrd_scales, ctx.T);
      for (int n : ctx.lrd_scales) {
        const auto i = static_cast<std::size_t>(n - 1);
        ctx.cand_abs[c][i] = temporal_mean_abs_error(plug, model, model.lrd, n);
        ctx.cand_quad[c][i] = mean_quadratic_error(plug, model, model.lrd, n);
        ctx.cand_l1[c][i] = l1_error(model, model.lrd, ctx.candidates[c], n);
      }
    });
  });
}

ReplicationRecord run_one(const Scenario& sc, const LengthContext& ctx, int r) {
  const auto start = std::chrono::steady_clock::now();
  const auto& model = sc.model;
  const int M = model.truncation();
  const auto sample = simulate_sample(sc.sim_config(ctx.T, static_cast<std::uint64_t>(r)));
  const auto ptable = periodogram_scale(fdft(sample));
  const auto est = ctx.estimator->estimate(ptable);

  ReplicationRecord rec;
  rec.length = ctx.T;
  rec.replication = r;
  rec.abs_error.assign(static_cast<std::size_t>(M), kNaN);
  rec.quad_error.assign(static_cast<std::size_t>(M), kNaN);
  rec.l1.assign(static_cast<std::size_t>(M), kNaN);
  if (est.selection) {
    rec.selected = est.selection->selected;
    const auto c = static_cast<std::size_t>(rec.selected);
    for (int n : ctx.lrd_scales) {
      const auto i = static_cast<std::size_t>(n - 1);
      rec.abs_error[i] = ctx.cand_abs[c][i];
      rec.quad_error[i] = ctx.cand_quad[c][i];
      rec.l1[i] = ctx.cand_l1[c][i];
    }
  }
  for (int n : model.srd_set.scales()) {
    const auto i = static_cast<std::size_t>(n - 1);
    rec.abs_error[i] = temporal_mean_abs_error(est.srd, model, model.lrd, n);
    rec.quad_error[i] = mean_quadratic_error(est.srd, model, model.lrd, n);
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

json nullable(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(std::isnan(x) ? json(nullptr) : json(x));
  return out;
}

std::vector<double> from_nullable(const json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(x.is_null() ? kNaN : x.get<double>());
  return out;
}

std::string record_path(const ExperimentPlan& plan, int T, int r) {
  return (fs::path(plan.output_dir) / "replications" / ("T" + std::to_string(T)) / ("r" + std::to_string(r) + ".json"))
      .string();
}

std::optional<ReplicationRecord> load_record(const std::string& path, const std::string& hash, int M) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const json j = json::parse(in);
    if (j.at("config_hash").get<std::string>() != hash) return std::nullopt;
    ReplicationRecord rec;
    rec.length = j.at("T").get<int>();
    rec.replication = j.at("replication").get<int>();
    rec.selected = j.at("selected").get<int>();
    rec.abs_error = from_nullable(j.at("abs_error"));
    rec.quad_error = from_nullable(j.at("quad_error"));
    rec.l1 = from_nullable(j.at("l1"));
    rec.seconds = j.at("seconds").get<double>();
    if (static_cast<int>(rec.abs_error.size()) != M) return std::nullopt;
    return rec;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

std::string record_text(const ReplicationRecord& rec, const std::string& hash) {
  json j = {{"config_hash", hash},   {"T", rec.length},
            {"replication", rec.replication}, {"selected", rec.selected},
            {"abs_error", nullable(rec.abs_error)}, {"quad_error", nullable(rec.quad_error)},
            {"l1", nullable(rec.l1)}, {"seconds", rec.seconds}};
  return j.dump();
}

CellSummary summarize(const ExperimentPlan& plan, const LengthContext& ctx, const std::vector<ReplicationRecord>& recs,
                      int R) {
  const int M = plan.scenario.model.truncation();
  CellSummary cell;
  cell.length = ctx.T;
  cell.replications = R;
  cell.lrd_scales = ctx.lrd_scales;
  const auto first = recs.begin();
  const auto last = recs.begin() + R;
  for (int n : ctx.lrd_scales) {
    std::vector<double> errs;
    for (auto it = first; it != last; ++it) errs.push_back(it->l1[static_cast<std::size_t>(n - 1)]);
    cell.probabilities.push_back(empirical_probabilities(errs, plan.thresholds));
  }
  for (int n = 1; n <= M; ++n) {
    const auto i = static_cast<std::size_t>(n - 1);
    std::vector<double> abs;
    double q = 0.0, a = 0.0;
    for (auto it = first; it != last; ++it) {
      abs.push_back(it->abs_error[i]);
      q += it->quad_error[i];
      a += it->abs_error[i];
    }
    q /= R;
    a /= R;
    cell.histograms.push_back(freedman_diaconis(abs));
    cell.mean_quadratic_error.push_back(q);
    cell.mean_abs_error.push_back(a);
    if (q < a * a * (1.0 - 1e-12)) cell.jensen_ok = false;
  }
  if (!ctx.lrd_scales.empty()) {
    cell.selection_frequency.assign(ctx.candidates.size(), 0.0);
    for (auto it = first; it != last; ++it) cell.selection_frequency[static_cast<std::size_t>(it->selected)] += 1.0;
    for (double& f : cell.selection_frequency) f /= R;
  }
  double secs = 0.0;
  for (auto it = first; it != last; ++it) secs += it->seconds;
  cell.mean_seconds = secs / R;
  return cell;
}

std::string cell_stem(const ExperimentPlan& plan, int T, int R) {
  return (fs::path(plan.output_dir) / (plan.scenario.name + "_T" + std::to_string(T) + "_R" + std::to_string(R)))
      .string();
}

void write_cell(const ExperimentPlan& plan, const CellSummary& cell, const LengthContext& ctx, PlanResult& result) {
  const std::string stem = cell_stem(plan, cell.length, cell.replications);
  {
    std::ostringstream s;
    s << "n,threshold,probability\n";
    for (std::size_t i = 0; i < cell.lrd_scales.size(); ++i) {
      for (std::size_t k = 0; k < plan.thresholds.size(); ++k) {
        s << cell.lrd_scales[i] << ',' << format_number(plan.thresholds[k]) << ','
          << format_number(cell.probabilities[i][k]) << '\n';
      }
    }
    write_file_atomic(stem + "_probabilities.csv", s.str());
    result.files.push_back(stem + "_probabilities.csv");
  }
  {
    std::ostringstream s;
    s << "n,bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < cell.histograms.size(); ++i) {
      const auto& h = cell.histograms[i];
      for (std::size_t b = 0; b < h.counts.size(); ++b) {
        s << i + 1 << ',' << format_number(h.edges[b]) << ',' << format_number(h.edges[b + 1]) << ',' << h.counts[b]
          << '\n';
      }
    }
    write_file_atomic(stem + "_histogram.csv", s.str());
    result.files.push_back(stem + "_histogram.csv");
  }
  {
    std::ostringstream s;
    s << "n,part,mean_quadratic_error,mean_abs_error\n";
    for (std::size_t i = 0; i < cell.mean_quadratic_error.size(); ++i) {
      const int n = static_cast<int>(i) + 1;
      s << n << ',' << (plan.scenario.model.srd_set.contains(n) ? "srd" : "lrd") << ','
        << format_number(cell.mean_quadratic_error[i]) << ',' << format_number(cell.mean_abs_error[i]) << '\n';
    }
    write_file_atomic(stem + "_errors.csv", s.str());
    result.files.push_back(stem + "_errors.csv");
  }
  {
    std::ostringstream s;
    s << "candidate_index,label,frequency\n";
    for (std::size_t c = 0; c < cell.selection_frequency.size(); ++c) {
      s << c << ',' << ctx.candidates[c].label << ',' << format_number(cell.selection_frequency[c]) << '\n';
    }
    write_file_atomic(stem + "_selection.csv", s.str());
    result.files.push_back(stem + "_selection.csv");
  }
  const json meta = {{"scenario", plan.scenario.name},
                     {"seed", plan.scenario.seed},
                     {"version", kVersion},
                     {"config_hash", hex(config_hash(plan.scenario))},
                     {"T", cell.length},
                     {"R", cell.replications},
                     {"thresholds", plan.thresholds.size()},
                     {"mean_seconds_per_replication", cell.mean_seconds},
                     {"jensen_ok", cell.jensen_ok}};
  write_file_atomic(stem + "_meta.json", meta.dump(2) + "\n");
}

void write_candidates(const ExperimentPlan& plan, const std::vector<LrdProfile>& candidates, PlanResult& result) {
  std::ostringstream s;
  s << "candidate_index,label,n,alpha\n";
  const auto& truth = plan.scenario.model.lrd;
  for (int n = 1; n <= truth.truncation(); ++n) s << "-1,theta0," << n << ',' << format_number(truth.alpha(n)) << '\n';
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (int n = 1; n <= candidates[c].truncation(); ++n) {
      s << c << ',' << candidates[c].label << ',' << n << ',' << format_number(candidates[c].alpha(n)) << '\n';
    }
  }
  const std::string path = (fs::path(plan.output_dir) / (plan.scenario.name + "_candidates.csv")).string();
  write_file_atomic(path, s.str());
  result.files.push_back(path);
}

}  // namespace

ExperimentPlan ExperimentPlan::from_scenario(const Scenario& scenario, std::string output_dir, int workers,
                                             bool full_scale) {
  ExperimentPlan p;
  p.scenario = scenario;
  p.lengths = full_scale ? scenario.experiment.full_lengths : scenario.experiment.lengths;
  p.replications = full_scale ? scenario.experiment.full_replications : scenario.experiment.replications;
  p.thresholds = scenario.experiment.thresholds;
  p.output_dir = std::move(output_dir);
  p.workers = workers;
  return p;
}

void ExperimentPlan::validate() const {
  if (lengths.empty() || replications.empty()) throw ConfigError("plan needs at least one T and one R");
  for (int T : lengths) {
    if (T < 2) throw ConfigError("sample length T must be at least 2");
  }
  for (int R : replications) {
    if (R < 1) throw ConfigError("replication count R must be at least 1");
  }
  if (workers < 1) throw ConfigError("worker count must be at least 1");
  if (output_dir.empty()) throw ConfigError("plan needs an output directory");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0.0) || (i > 0 && !(thresholds[i] > thresholds[i - 1]))) {
      throw ConfigError("thresholds must be positive and strictly increasing");
    }
  }
}

std::uint64_t config_hash(const Scenario& scenario) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto feed = [&](std::string_view s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  feed(scenario.canonical);
  feed(std::to_string(scenario.seed));
  feed(kVersion);
  return h;
}

PlanResult run_plan(const ExperimentPlan& plan) {
  plan.validate();
  const auto& sc = plan.scenario;
  const int M = sc.model.truncation();
  const std::string hash = hex(config_hash(sc));
  tbb::global_control threads(tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(plan.workers));
  tbb::task_arena arena(plan.workers);
  std::mutex writer;

  PlanResult result;
  std::error_code ec;
  fs::create_directories(plan.output_dir, ec);
  if (ec) throw DataError("cannot create output directory " + plan.output_dir + ": " + ec.message());

  int max_r = 0;
  for (int R : plan.replications) max_r = std::max(max_r, R);
  bool candidates_written = false;

  for (int T : plan.lengths) {
    LengthContext ctx;
    ctx.T = T;
    prepare(ctx, sc, arena);
    if (!candidates_written && !ctx.lrd_scales.empty()) {
      write_candidates(plan, ctx.candidates, result);
      candidates_written = true;
    }

    std::vector<ReplicationRecord> records(static_cast<std::size_t>(max_r));
    std::vector<char> fresh(static_cast<std::size_t>(max_r), 0);
    arena.execute([&] {
      tbb::parallel_for(0, max_r, [&](int r) {
        const std::string path = record_path(plan, T, r);
        if (plan.resume) {
          if (auto rec = load_record(path, hash, M)) {
            records[static_cast<std::size_t>(r)] = std::move(*rec);
            return;
          }
        }
        try {
          records[static_cast<std::size_t>(r)] = run_one(sc, ctx, r);
        } catch (const ConfigError& e) {
          throw ConfigError("T=" + std::to_string(T) + " replication " + std::to_string(r) + ": " + e.what());
        } catch (const std::exception& e) {
          throw DataError("T=" + std::to_string(T) + " replication " + std::to_string(r) + ": " + e.what());
        }
        fresh[static_cast<std::size_t>(r)] = 1;
        const std::string text = record_text(records[static_cast<std::size_t>(r)], hash);
        std::lock_guard lock(writer);
        try {
          write_file_atomic(path, text);
        } catch (const Error& e) {
          throw DataError("replication " + std::to_string(r) + ": " + e.what());
        }
      });
    });
    for (char f : fresh) (f ? result.simulated : result.reused) += 1;

    // Reloaded and fresh records must aggregate identically, so fresh ones
    // go through the same text round trip as persisted ones.
    for (int r = 0; r < max_r; ++r) {
      auto& rec = records[static_cast<std::size_t>(r)];
      if (fresh[static_cast<std::size_t>(r)]) {
        const json j = json::parse(record_text(rec, hash));
        rec.abs_error = from_nullable(j.at("abs_error"));
        rec.quad_error = from_nullable(j.at("quad_error"));
        rec.l1 = from_nullable(j.at("l1"));
      }
    }

    for (int R : plan.replications) {
      auto cell = summarize(plan, ctx, records, R);
      write_cell(plan, cell, ctx, result);
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

}  // namespace sphlrd
