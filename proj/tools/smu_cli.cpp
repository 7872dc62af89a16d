// smu: curves, gradient checks, training runs, activation comparisons and mu
// sweeps for the Smooth Maximum Unit family.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 divergence.

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "smu/smu.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDiverged = 3;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("SMU_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') throw smu::ConfigError("SMU_SEED must be an unsigned integer");
  return v;
}

/// Flag values for one subcommand. Every flag has a default (null = unset);
/// a JSON config file may override defaults and command-line values override
/// both. Unknown keys in the file are rejected.
class FlagSet {
 public:
  FlagSet(CLI::App* cmd, std::string name) : cmd_(cmd), name_(std::move(name)) {
    cmd_->add_option("--config", config_path_, "JSON file whose keys mirror the flags");
  }

  void option(const std::string& flag, json default_value, const std::string& help) {
    defaults_[flag] = std::move(default_value);
    cmd_->add_option("--" + flag, raw_[flag], help);
  }

  void flag(const std::string& flag, const std::string& help) {
    defaults_[flag] = false;
    flags_[flag] = false;
    cmd_->add_flag("--" + flag, flags_[flag], help);
  }

  /// Merges defaults, config file and command line into one JSON object.
  void resolve() {
    resolved_ = defaults_;
    if (!config_path_.empty()) {
      std::ifstream in(config_path_);
      if (!in) throw smu::ConfigError("cannot open config file '" + config_path_ + "'");
      json file;
      try {
        file = json::parse(in);
      } catch (const json::parse_error& e) {
        throw smu::ConfigError("config file '" + config_path_ + "': " + e.what());
      }
      if (!file.is_object()) throw smu::ConfigError("config file must hold a JSON object");
      for (auto& [key, value] : file.items()) {
        if (!defaults_.contains(key)) throw smu::ConfigError("unknown config key '" + key + "'");
        resolved_[key] = value;
      }
    }
    for (auto& [flag, value] : raw_)
      if (cmd_->count("--" + flag) > 0) resolved_[flag] = typed(value);
    for (auto& [flag, value] : flags_)
      if (cmd_->count("--" + flag) > 0) resolved_[flag] = value;
  }

  void print(std::ostream& os) const {
    json j = resolved_;
    os << "resolved config: " << json{{"command", name_}, {"flags", j}}.dump() << '\n';
  }

  const json& resolved() const { return resolved_; }

  std::string str(const std::string& k) const {
    const json& v = at(k);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) throw smu::ConfigError("--" + k + " is required");
    return v.dump();
  }

  std::optional<double> opt_double(const std::string& k) const {
    const json& v = at(k);
    if (v.is_null()) return std::nullopt;
    return to_double(k, v);
  }

  double num(const std::string& k) const {
    auto v = opt_double(k);
    if (!v) throw smu::ConfigError("--" + k + " is required");
    return *v;
  }

  std::uint64_t count(const std::string& k) const {
    const json& v = at(k);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      std::uint64_t out = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec == std::errc{} && ptr == s.data() + s.size() && !s.empty()) return out;
    }
    if (v.is_null()) throw smu::ConfigError("--" + k + " is required");
    throw smu::ConfigError("--" + k + " must be a non-negative integer, got " + v.dump());
  }

  bool boolean(const std::string& k) const {
    const json& v = at(k);
    if (v.is_boolean()) return v.get<bool>();
    throw smu::ConfigError("--" + k + " must be true or false");
  }

  /// Comma-separated string or JSON array.
  std::vector<std::string> list(const std::string& k) const {
    const json& v = at(k);
    std::vector<std::string> out;
    if (v.is_array()) {
      for (const auto& e : v) out.push_back(e.is_string() ? e.get<std::string>() : e.dump());
      return out;
    }
    const std::string s = str(k);
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const std::size_t comma = std::min(s.find(',', pos), s.size());
      out.push_back(s.substr(pos, comma - pos));
      pos = comma + 1;
    }
    return out;
  }

  std::vector<double> double_list(const std::string& k) const {
    std::vector<double> out;
    for (const auto& item : list(k)) out.push_back(to_double(k, item));
    return out;
  }

 private:
  const json& at(const std::string& k) const { return resolved_.at(k); }

  // Command-line text as a JSON integer or number where it parses as one.
  static json typed(const std::string& s) {
    std::uint64_t u = 0;
    if (auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), u); ec == std::errc{} && p == s.data() + s.size())
      return u;
    if (auto d = smu::parse_double(s); d && std::isfinite(*d)) return *d;
    return s;
  }

  static double to_double(const std::string& k, const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      if (auto d = smu::parse_double(v.get<std::string>()); d && std::isfinite(*d)) return *d;
    }
    throw smu::ConfigError("--" + k + ": expected a number, got " + v.dump());
  }

  CLI::App* cmd_;
  std::string name_;
  std::string config_path_;
  json defaults_ = json::object();
  json resolved_;
  std::map<std::string, std::string> raw_;
  std::map<std::string, bool> flags_;
};

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::filesystem::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
  return dir;
}

void add_training_flags(FlagSet& f, const std::string& activation_default) {
  f.option("dataset", "two-moons", "two-moons[:n=..,noise=..] | spirals[:n=..,turns=..,noise=..] | csv:<path>");
  f.option("model", "2x32x32x2", "layer sizes, e.g. 2x32x32x2");
  f.option("activation", activation_default, "activation name");
  f.option("preset", "classification", "classification | detection (sets alpha and initial mu)");
  f.option("alpha", nullptr, "override alpha");
  f.option("epochs", 200, "training epochs");
  f.option("batch-size", 64, "minibatch size");
  f.option("lr", 0.05, "learning rate");
  f.option("optimizer", "sgd-momentum", "sgd | sgd-momentum | adam");
  f.option("seed", default_seed(), "seed (default: $SMU_SEED or 0)");
  f.option("test-fraction", smu::kDefaultTestFraction, "held-out fraction");
  f.flag("freeze-mu", "keep mu fixed during training");
  f.flag("train-alpha", "also train alpha (SMU family)");
}

smu::TrainConfig training_config(const FlagSet& f) {
  smu::TrainConfig c;
  c.epochs = f.count("epochs");
  c.batch_size = f.count("batch-size");
  c.learning_rate = f.num("lr");
  if (!(c.learning_rate > 0.0)) throw smu::ConfigError("--lr must be > 0");
  c.optimizer = smu::parse_optimizer(f.str("optimizer"));
  c.seed = f.count("seed");
  c.preset = smu::parse_preset(f.str("preset"));
  smu::validate(c);
  return c;
}

smu::ActivationKind activation_from(const FlagSet& f, const std::string& name, bool with_mu_override) {
  const auto type = smu::parse_activation_type(name);
  const auto preset = smu::parse_preset(f.str("preset"));
  const auto alpha = smu::uses_alpha(type) ? f.opt_double("alpha") : std::nullopt;
  std::optional<double> mu;
  if (with_mu_override && smu::uses_mu(type)) mu = f.opt_double("mu");
  auto kind = smu::resolve_activation(type, preset, alpha, mu);
  if (smu::uses_mu(type)) {
    if (f.boolean("freeze-mu")) kind.params.mu_trainable = false;
    if (f.boolean("train-alpha")) kind.params.alpha_trainable = true;
  }
  return kind;
}

smu::Dataset dataset_from(const FlagSet& f) {
  const double tf = f.num("test-fraction");
  return smu::build_dataset(smu::parse_dataset_spec(f.str("dataset")), f.count("seed"), tf);
}

// ---------------------------------------------------------------------------

int cmd_plot(const FlagSet& f) {
  const auto type = smu::parse_activation_type(f.str("activation"));
  auto kind = smu::resolve_activation(type, smu::parse_preset(f.str("preset")),
                                      smu::uses_alpha(type) ? f.opt_double("alpha") : std::nullopt);
  std::vector<double> mus;
  if (smu::uses_mu(type)) mus = f.double_list("mu");
  write_text(f.str("out"), smu::plot_csv(kind, mus, f.num("x-min"), f.num("x-max"), f.num("step")));
  return kExitOk;
}

int cmd_gradcheck(const FlagSet& f) {
  const auto type = smu::parse_activation_type(f.str("activation"));
  const auto kind = smu::resolve_activation(type, smu::parse_preset(f.str("preset")),
                                            smu::uses_alpha(type) ? f.opt_double("alpha") : std::nullopt,
                                            smu::uses_mu(type) ? f.opt_double("mu") : std::nullopt);
  const double tol = f.num("tolerance");
  if (!(tol > 0.0)) throw smu::ConfigError("--tolerance must be > 0");
  const auto grid = smu::standard_grid(kind);
  const auto reports = smu::check_activation(kind, grid, tol);
  write_text(f.str("out"), smu::gradcheck_csv(reports));
  std::size_t failed = 0;
  for (const auto& r : reports) failed += !r.passed;
  std::cerr << "gradcheck " << smu::to_string(type) << ": " << reports.size() - failed << "/" << reports.size()
            << " passed\n";
  return failed == 0 ? kExitOk : kExitVerificationFailed;
}

int cmd_train(const FlagSet& f) {
  const auto config = training_config(f);
  const auto kind = activation_from(f, f.str("activation"), true);
  const auto sizes = smu::parse_model_spec(f.str("model"));
  const auto dir = prepare_dir(f.str("out"));
  const auto ds = dataset_from(f);

  const auto t0 = std::chrono::steady_clock::now();
  const auto result = smu::run_training(ds, sizes, kind, config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  write_text((dir / "log.csv").string(), result.log.to_csv());
  json summary = {
      {"activation", std::string(smu::to_string(kind.type))},
      {"alpha", kind.params.alpha},
      {"preset", std::string(smu::to_string(config.preset))},
      {"epochs", config.epochs},
      {"seed", config.seed},
      {"train_accuracy", result.train_accuracy},
      {"test_accuracy", result.test_accuracy},
      {"train_loss", result.train_loss},
      {"test_loss", result.test_loss},
      {"mu_initial", result.mu_initial},
      {"mu_final", result.mu_final},
      {"wall_time_seconds", wall},
  };
  write_text((dir / "summary.json").string(), summary.dump(2) + "\n");
  std::cout << "train_accuracy=" << result.train_accuracy << " test_accuracy=" << result.test_accuracy
            << " wall_time=" << wall << "s\n";
  return kExitOk;
}

int cmd_compare(const FlagSet& f) {
  const auto config = training_config(f);
  const auto sizes = smu::parse_model_spec(f.str("model"));
  const auto seeds_count = f.count("seeds");
  if (seeds_count < 1) throw smu::ConfigError("--seeds must be >= 1");
  std::vector<smu::NamedActivation> acts;
  for (const auto& name : f.list("activation")) {
    const auto kind = activation_from(f, name, true);
    acts.push_back({std::string(smu::to_string(kind.type)), kind});
  }
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < seeds_count; ++s) seeds.push_back(config.seed + s);
  auto threads = f.count("threads");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  const auto dir = prepare_dir(f.str("out"));
  const auto ds = dataset_from(f);
  const auto result = smu::run_compare(ds, sizes, acts, seeds, config, threads);
  write_text((dir / "compare.csv").string(), smu::compare_csv(result.rows));
  write_text((dir / "runs.csv").string(), smu::compare_runs_csv(result.runs));

  for (const auto& r : result.rows)
    std::cout << r.activation << ": train " << r.mean_acc << " +- " << r.std_acc << ", test " << r.mean_test_acc
              << " +- " << r.std_test_acc << '\n';
  auto find = [&](std::string_view n) -> const smu::CompareRow* {
    for (const auto& r : result.rows)
      if (smu::parse_activation_type(r.activation) == smu::parse_activation_type(n)) return &r;
    return nullptr;
  };
  if (const auto *a = find("smu"), *b = find("relu"); a && b)
    std::cout << "ordering (mean test accuracy): SMU " << (a->mean_test_acc > b->mean_test_acc ? ">" : "<=")
              << " ReLU\n";
  return kExitOk;
}

int cmd_sweep_mu(const FlagSet& f) {
  const auto config = training_config(f);
  const auto kind = activation_from(f, f.str("activation"), false);
  const auto grid = f.double_list("mu");
  const auto sizes = smu::parse_model_spec(f.str("model"));
  const std::string out = f.str("out");
  const auto ds = dataset_from(f);
  const auto rows = smu::run_sweep_mu(ds, sizes, kind, grid, config);
  write_text(out, smu::sweep_csv(rows));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smooth Maximum Unit activations: curves, gradient checks, training and comparisons"};
  app.require_subcommand(1);

  try {
    std::vector<std::pair<CLI::App*, std::unique_ptr<FlagSet>>> cmds;
    auto add = [&](const std::string& name, const std::string& desc) -> FlagSet& {
      auto* sub = app.add_subcommand(name, desc);
      cmds.emplace_back(sub, std::make_unique<FlagSet>(sub, name));
      return *cmds.back().second;
    };

    FlagSet& plot = add("plot", "write activation curves and derivatives as CSV");
    plot.option("activation", "smu", "activation name");
    plot.option("preset", "classification", "classification | detection");
    plot.option("alpha", nullptr, "override alpha");
    plot.option("mu", "1,5,25", "comma-separated mu values (SMU family)");
    plot.option("x-min", -3.0, "range start");
    plot.option("x-max", 3.0, "range end");
    plot.option("step", 0.01, "grid step");
    plot.option("out", "-", "output CSV path ('-' for stdout)");

    FlagSet& grad = add("gradcheck", "compare analytic derivatives with central differences");
    grad.option("activation", "smu", "activation name");
    grad.option("preset", "classification", "classification | detection");
    grad.option("alpha", nullptr, "override alpha");
    grad.option("mu", nullptr, "override mu");
    grad.option("tolerance", 1e-6, "relative tolerance");
    grad.option("out", "-", "report CSV path ('-' for stdout)");

    FlagSet& train = add("train", "train an MLP and write log.csv and summary.json");
    add_training_flags(train, "smu");
    train.option("mu", nullptr, "override initial mu");
    train.option("out", nullptr, "output directory");

    FlagSet& compare = add("compare", "same-seed comparison of several activations");
    add_training_flags(compare, "smu,smu1,relu,leaky-relu,gelu,swish");
    compare.option("mu", nullptr, "override initial mu (SMU family)");
    compare.option("seeds", 15, "number of seeds (seed, seed+1, ...)");
    compare.option("threads", 0, "worker threads (0 = hardware concurrency)");
    compare.option("out", nullptr, "output directory");

    FlagSet& sweep = add("sweep-mu", "train with frozen mu over a grid of values");
    add_training_flags(sweep, "smu");
    sweep.option("mu", nullptr, "comma-separated mu grid");
    sweep.option("out", nullptr, "output CSV path");

    app.parse(argc, argv);

    for (auto& [sub, flags] : cmds) {
      if (!sub->parsed()) continue;
      flags->resolve();
      flags->print(std::cerr);
      const std::string name = sub->get_name();
      if (name == "plot") return cmd_plot(*flags);
      if (name == "gradcheck") return cmd_gradcheck(*flags);
      if (name == "train") return cmd_train(*flags);
      if (name == "compare") return cmd_compare(*flags);
      if (name == "sweep-mu") return cmd_sweep_mu(*flags);
    }
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const smu::DivergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const smu::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const smu::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
