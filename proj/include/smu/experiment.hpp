#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "smu/activation.hpp"
#include "smu/dataset.hpp"
#include "smu/errors.hpp"
#include "smu/format.hpp"
#include "smu/gradcheck.hpp"
#include "smu/network.hpp"
#include "smu/train.hpp"

namespace smu {

// ---------------------------------------------------------------------------
// Specs
// ---------------------------------------------------------------------------

/// "2x32x32x2" -> {2, 32, 32, 2}.
inline std::vector<std::size_t> parse_model_spec(std::string_view spec) {
  std::vector<std::size_t> sizes;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t next = std::min(spec.find('x', pos), spec.size());
    const auto v = parse_double(spec.substr(pos, next - pos));
    if (!v || *v < 1.0 || std::floor(*v) != *v || *v > 1e6)
      throw ConfigError("bad model spec '" + std::string(spec) + "' (expected sizes like 2x32x32x2)");
    sizes.push_back(static_cast<std::size_t>(*v));
    pos = next + 1;
  }
  if (sizes.size() < 2) throw ConfigError("model spec needs at least input and output sizes");
  return sizes;
}

/// `two-moons[:n=2000,noise=0.1]`, `spirals[:n=600,turns=2,noise=0.02]`, or `csv:<path>`.
struct DatasetSpec {
  enum class Kind { kTwoMoons, kSpirals, kCsv } kind = Kind::kTwoMoons;
  std::size_t n = 2000;
  double noise = 0.1;
  double turns = 2.0;
  std::string path;
  std::string label_column = "label";
};

inline DatasetSpec parse_dataset_spec(std::string_view spec) {
  DatasetSpec ds;
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view tail = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "csv") {
    if (tail.empty()) throw ConfigError("csv dataset needs a path: csv:<path>");
    ds.kind = DatasetSpec::Kind::kCsv;
    ds.path = std::string(tail);
    return ds;
  }
  if (head == "two-moons") {
    ds.kind = DatasetSpec::Kind::kTwoMoons;
  } else if (head == "spirals") {
    ds.kind = DatasetSpec::Kind::kSpirals;
    ds.n = 600;
    ds.noise = 0.02;
  } else {
    throw ConfigError("unknown dataset '" + std::string(spec) + "' (two-moons, spirals or csv:<path>)");
  }
  std::size_t pos = 0;
  while (pos < tail.size()) {
    const std::size_t comma = std::min(tail.find(',', pos), tail.size());
    const std::string_view item = tail.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("bad dataset option '" + std::string(item) + "'");
    const std::string_view key = item.substr(0, eq);
    const auto value = parse_double(item.substr(eq + 1));
    if (!value) throw ConfigError("bad dataset option value '" + std::string(item) + "'");
    if (key == "n" && *value >= 2 && std::floor(*value) == *value) {
      ds.n = static_cast<std::size_t>(*value);
    } else if (key == "noise" && *value >= 0) {
      ds.noise = *value;
    } else if (key == "turns" && ds.kind == DatasetSpec::Kind::kSpirals && *value > 0) {
      ds.turns = *value;
    } else {
      throw ConfigError("bad dataset option '" + std::string(item) + "'");
    }
    pos = comma + 1;
  }
  return ds;
}

inline constexpr double kDefaultTestFraction = 0.2;

/// Generates or loads the dataset and splits it, both from `seed`.
inline Dataset build_dataset(const DatasetSpec& spec, std::uint64_t seed,
                             double test_fraction = kDefaultTestFraction) {
  Dataset ds;
  switch (spec.kind) {
    case DatasetSpec::Kind::kTwoMoons: ds = make_two_moons(spec.n, spec.noise, seed); break;
    case DatasetSpec::Kind::kSpirals: ds = make_spirals(spec.n, spec.turns, spec.noise, seed); break;
    case DatasetSpec::Kind::kCsv: ds = load_csv(spec.path, spec.label_column); break;
  }
  return split(std::move(ds), test_fraction, seed);
}

/// Activation for a run: preset alpha / mu0 for SMU and SMU-1, library
/// defaults for baselines, then explicit overrides.
inline ActivationKind resolve_activation(ActivationType type, Preset preset, std::optional<double> alpha = {},
                                         std::optional<double> mu = {}) {
  ActivationKind k = make_activation(type, preset_params(preset, type));
  if (alpha) {
    if (!uses_alpha(type)) throw ConfigError("--alpha does not apply to " + std::string(to_string(type)));
    k.params.alpha = *alpha;
  }
  if (mu) {
    if (!uses_mu(type)) throw ConfigError("--mu does not apply to " + std::string(to_string(type)));
    k.params.mu = *mu;
  }
  if (uses_mu(type)) validate(k.params);
  return k;
}

// ---------------------------------------------------------------------------
// Training runs
// ---------------------------------------------------------------------------

struct RunResult {
  TrainingLog log;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  double train_loss = 0.0;
  double test_loss = 0.0;
  std::vector<double> mu_initial;
  std::vector<double> mu_final;
};

inline RunResult run_training(const Dataset& ds, std::span<const std::size_t> sizes, const ActivationKind& kind,
                              const TrainConfig& config) {
  if (sizes.front() != ds.feature_count())
    throw ConfigError("model input size " + std::to_string(sizes.front()) + " != dataset feature count " +
                      std::to_string(ds.feature_count()));
  if (sizes.back() < ds.class_count)
    throw ConfigError("model output size " + std::to_string(sizes.back()) + " < class count " +
                      std::to_string(ds.class_count));
  Network net = Network::mlp(sizes, kind, config.seed);
  RunResult r;
  r.mu_initial = net.mus();
  r.log = train(net, ds, config);
  if (const auto* tr = r.log.last("train")) {
    r.train_accuracy = tr->accuracy;
    r.train_loss = tr->loss;
  }
  if (const auto* te = r.log.last("test")) {
    r.test_accuracy = te->accuracy;
    r.test_loss = te->loss;
  }
  r.mu_final = net.mus();
  return r;
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

/// Number of grid points start, start + step, ... not exceeding `end`.
inline std::size_t grid_count(double start, double end, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("step must be > 0");
  if (!(end > start) || !std::isfinite(start) || !std::isfinite(end)) throw ConfigError("x range must have end > start");
  return static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
}

/// CSV of activation values and d/dx over [start, end]. SMU-family columns
/// are `x,value_mu=<m>...,derivative_mu=<m>...`; baselines give `x,value,derivative`.
inline std::string plot_csv(const ActivationKind& kind, std::span<const double> mus, double start, double end,
                            double step) {
  const std::size_t count = grid_count(start, end, step);
  std::vector<ActivationKind> curves;
  std::string header = "x";
  if (uses_mu(kind.type)) {
    if (mus.empty()) throw ConfigError("plot needs at least one mu");
    for (double m : mus) {
      ActivationKind k = kind;
      k.params.mu = m;
      validate(k.params);
      curves.push_back(k);
      header += ",value_mu=" + format_double(m);
    }
    for (double m : mus) header += ",derivative_mu=" + format_double(m);
  } else {
    curves.push_back(kind);
    header += ",value,derivative";
  }
  std::string out = header + '\n';
  for (std::size_t i = 0; i < count; ++i) {
    const double x = start + static_cast<double>(i) * step;
    out += format_double(x);
    for (const auto& k : curves) out += ',' + format_double(evaluate(k, x));
    for (const auto& k : curves) out += ',' + format_double(derivative(k, x));
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gradient-check grid
// ---------------------------------------------------------------------------

/// Integers -8..8, minus the kinks of the activation.
inline std::vector<double> standard_grid(const ActivationKind& kind) {
  const auto kinks = kink_points(kind);
  std::vector<double> grid;
  for (int i = -8; i <= 8; ++i) {
    const double x = i;
    if (std::find(kinks.begin(), kinks.end(), x) == kinks.end()) grid.push_back(x);
  }
  return grid;
}

inline std::string gradcheck_csv(std::span<const GradCheckReport> reports) {
  std::string out = "point,parameter,analytic,numeric,rel_error,passed\n";
  for (const auto& r : reports) {
    out += format_double(r.point) + ',' + r.parameter_name + ',' + format_double(r.analytic) + ',' +
           format_double(r.numeric) + ',' + format_double(r.relative_error) + ',' + (r.passed ? "true" : "false") +
           '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Same-seed comparison and mu sweeps
// ---------------------------------------------------------------------------

/// Sample mean and standard deviation (n - 1 denominator; 0 for n == 1).
inline std::pair<double, double> mean_std(std::span<const double> v) {
  if (v.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

struct NamedActivation {
  std::string name;
  ActivationKind kind;
};

struct CompareRun {
  std::string activation;
  std::uint64_t seed = 0;
  bool has_mu = false;
  RunResult result;
};

struct CompareRow {
  std::string activation;
  double mean_acc = 0.0;
  double std_acc = 0.0;
  std::optional<double> mean_final_mu;  // empty for activations without mu
  double mean_test_acc = 0.0;
  double std_test_acc = 0.0;
};

struct CompareResult {
  std::vector<CompareRow> rows;
  std::vector<CompareRun> runs;  // activation-major, then seed
};

/// Runs tasks 0..n-1 on up to `threads` workers; each task writes only its own slot.
template <typename Task>
void parallel_for(std::size_t n, std::size_t threads, Task&& task) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) task(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Trains every activation under every seed. For a given seed all
/// activations share the initial weights and the batch order. Row order
/// follows `activations`; mean_acc / std_acc are over final train accuracy.
inline CompareResult run_compare(const Dataset& ds, std::span<const std::size_t> sizes,
                                 std::span<const NamedActivation> activations, std::span<const std::uint64_t> seeds,
                                 const TrainConfig& base, std::size_t threads = 1) {
  if (activations.empty()) throw ConfigError("compare needs at least one activation");
  if (seeds.empty()) throw ConfigError("compare needs at least one seed");
  std::set<std::string> names;
  for (const auto& a : activations)
    if (!names.insert(a.name).second) throw ConfigError("duplicate activation '" + a.name + "'");

  CompareResult out;
  out.runs.resize(activations.size() * seeds.size());
  parallel_for(out.runs.size(), threads, [&](std::size_t i) {
    const auto& act = activations[i / seeds.size()];
    TrainConfig cfg = base;
    cfg.seed = seeds[i % seeds.size()];
    out.runs[i] = {act.name, cfg.seed, uses_mu(act.kind.type), run_training(ds, sizes, act.kind, cfg)};
  });

  for (std::size_t a = 0; a < activations.size(); ++a) {
    std::vector<double> train_acc, test_acc, mus;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const auto& r = out.runs[a * seeds.size() + s].result;
      train_acc.push_back(r.train_accuracy);
      test_acc.push_back(r.test_accuracy);
      if (!r.mu_final.empty() && uses_mu(activations[a].kind.type)) {
        double m = 0.0;
        for (double v : r.mu_final) m += v;
        mus.push_back(m / static_cast<double>(r.mu_final.size()));
      }
    }
    CompareRow row;
    row.activation = activations[a].name;
    std::tie(row.mean_acc, row.std_acc) = mean_std(train_acc);
    std::tie(row.mean_test_acc, row.std_test_acc) = mean_std(test_acc);
    if (!mus.empty()) row.mean_final_mu = mean_std(mus).first;
    out.rows.push_back(row);
  }
  return out;
}

/// `activation,mean_acc,std_acc,mean_final_mu`; mu is `NA` where it does not apply.
inline std::string compare_csv(std::span<const CompareRow> rows) {
  std::string out = "activation,mean_acc,std_acc,mean_final_mu\n";
  for (const auto& r : rows) {
    out += r.activation + ',' + format_double(r.mean_acc) + ',' + format_double(r.std_acc) + ',' +
           (r.mean_final_mu ? format_double(*r.mean_final_mu) : std::string("NA")) + '\n';
  }
  return out;
}

/// Per-run detail: `activation,seed,train_accuracy,test_accuracy,train_loss,mu_final_mean`.
inline std::string compare_runs_csv(std::span<const CompareRun> runs) {
  std::string out = "activation,seed,train_accuracy,test_accuracy,train_loss,mu_final_mean\n";
  for (const auto& r : runs) {
    std::string mu = "NA";
    if (r.has_mu && !r.result.mu_final.empty()) {
      double m = 0.0;
      for (double v : r.result.mu_final) m += v;
      mu = format_double(m / static_cast<double>(r.result.mu_final.size()));
    }
    out += r.activation + ',' + std::to_string(r.seed) + ',' + format_double(r.result.train_accuracy) + ',' +
           format_double(r.result.test_accuracy) + ',' + format_double(r.result.train_loss) + ',' + mu + '\n';
  }
  return out;
}

struct SweepRow {
  double mu = 0.0;
  RunResult result;
};

/// One training run per mu with mu frozen at that value.
inline std::vector<SweepRow> run_sweep_mu(const Dataset& ds, std::span<const std::size_t> sizes,
                                          const ActivationKind& kind, std::span<const double> mu_grid,
                                          const TrainConfig& config) {
  if (!uses_mu(kind.type)) throw ConfigError("mu sweep needs smu or smu1");
  if (mu_grid.empty()) throw ConfigError("mu grid must not be empty");
  std::vector<SweepRow> rows;
  for (double m : mu_grid) {
    ActivationKind k = kind;
    k.params.mu = m;
    k.params.mu_trainable = false;
    validate(k.params);
    rows.push_back({m, run_training(ds, sizes, k, config)});
  }
  return rows;
}

/// `mu,train_accuracy,test_accuracy,train_loss,test_loss`
inline std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "mu,train_accuracy,test_accuracy,train_loss,test_loss\n";
  for (const auto& r : rows) {
    out += format_double(r.mu) + ',' + format_double(r.result.train_accuracy) + ',' +
           format_double(r.result.test_accuracy) + ',' + format_double(r.result.train_loss) + ',' +
           format_double(r.result.test_loss) + '\n';
  }
  return out;
}

}  // namespace smu
