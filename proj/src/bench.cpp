#include "bsbl/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "bsbl/errors.hpp"
#include "bsbl/metrics.hpp"
#include "bsbl/rng.hpp"

namespace bsbl::bench {

using json = nlohmann::ordered_json;

namespace {

std::string fmt(double v, const char* spec = "%.12g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// ---- strict JSON helpers -------------------------------------------------

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key))
      throw ConfigError("config: unknown key \"" + key + "\" in " + where);
}

const json* find(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_num(const json& obj, const std::string& key, double def,
               const std::string& where) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_number())
    throw ConfigError("config: \"" + key + "\" in " + where + " must be a number");
  return v->get<double>();
}

int get_int(const json& obj, const std::string& key, int def,
            const std::string& where) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_number_integer() && !v->is_number_unsigned())
    throw ConfigError("config: \"" + key + "\" in " + where +
                      " must be an integer");
  return v->get<int>();
}

int get_int_req(const json& obj, const std::string& key,
                const std::string& where) {
  if (!find(obj, key))
    throw ConfigError("config: missing required key \"" + key + "\" in " + where);
  return get_int(obj, key, 0, where);
}

bool get_bool(const json& obj, const std::string& key, bool def,
              const std::string& where) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_boolean())
    throw ConfigError("config: \"" + key + "\" in " + where + " must be a boolean");
  return v->get<bool>();
}

std::string get_str(const json& obj, const std::string& key,
                    const std::string& def, const std::string& where) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_string())
    throw ConfigError("config: \"" + key + "\" in " + where + " must be a string");
  return v->get<std::string>();
}

// ---- config sections -------------------------------------------------------

ScenarioEntry parse_scenario(const json& obj, std::size_t index) {
  const std::string where = "scenarios[" + std::to_string(index) + "]";
  if (!obj.is_object()) throw ConfigError("config: " + where + " must be an object");
  check_keys(obj,
             {"name", "N", "L", "M", "pattern", "num_blocks", "block_len",
              "num_isolated", "num_nonzero"},
             where);
  ScenarioEntry e;
  e.spec.n = get_int_req(obj, "N", where);
  e.spec.l = get_int_req(obj, "L", where);
  e.spec.m = get_int_req(obj, "M", where);
  const std::string pat = get_str(obj, "pattern", "", where);
  if (pat == "block") {
    e.spec.pattern = BlockPattern{get_int_req(obj, "num_blocks", where),
                                  get_int_req(obj, "block_len", where)};
    if (find(obj, "num_isolated") || find(obj, "num_nonzero"))
      throw ConfigError("config: key not valid for block pattern in " + where);
  } else if (pat == "hybrid") {
    e.spec.pattern = HybridPattern{get_int_req(obj, "num_blocks", where),
                                   get_int_req(obj, "block_len", where),
                                   get_int_req(obj, "num_isolated", where)};
    if (find(obj, "num_nonzero"))
      throw ConfigError("config: key \"num_nonzero\" not valid for hybrid pattern in " + where);
  } else if (pat == "random") {
    e.spec.pattern = RandomPattern{get_int_req(obj, "num_nonzero", where)};
    if (find(obj, "num_blocks") || find(obj, "block_len") || find(obj, "num_isolated"))
      throw ConfigError("config: block keys not valid for random pattern in " + where);
  } else {
    throw ConfigError("config: \"pattern\" in " + where +
                      " must be one of block, hybrid, random");
  }
  e.name = get_str(obj, "name", pattern_name(e.spec.pattern), where);
  return e;
}

AlgorithmSpec parse_algorithm(const json& obj, std::size_t index) {
  const std::string where = "algorithms[" + std::to_string(index) + "]";
  if (!obj.is_object()) throw ConfigError("config: " + where + " must be an object");
  check_keys(obj,
             {"name", "variant", "window", "rho", "gamma_update", "warmup",
              "normalize_beta", "fixed_beta", "k_max", "t_max", "eps_outer",
              "eps_inner", "gamma_floor", "gamma_cap", "denom_floor",
              "gamma_init"},
             where);
  if (!find(obj, "variant"))
    throw ConfigError("config: missing required key \"variant\" in " + where);
  AlgorithmSpec a;
  a.config.variant = variant_from_string(get_str(obj, "variant", "", where));
  a.name = get_str(obj, "name", to_string(a.config.variant), where);
  const int w = get_int(obj, "window", static_cast<int>(a.config.window), where);
  if (w < 0) throw ConfigError("config: \"window\" in " + where + " must be >= 0");
  a.config.window = static_cast<std::size_t>(w);
  a.config.rho = get_num(obj, "rho", a.config.rho, where);
  const std::string step =
      get_str(obj, "gamma_update",
              a.config.gamma_step == GammaStep::exact ? "exact" : "closed_form",
              where);
  if (step == "exact") a.config.gamma_step = GammaStep::exact;
  else if (step == "closed_form") a.config.gamma_step = GammaStep::closed_form;
  else
    throw ConfigError("config: \"gamma_update\" in " + where +
                      " must be \"exact\" or \"closed_form\"");
  a.config.warmup_iterations =
      get_int(obj, "warmup", a.config.warmup_iterations, where);
  a.config.normalize_beta =
      get_bool(obj, "normalize_beta", a.config.normalize_beta, where);
  a.config.fixed_beta = get_num(obj, "fixed_beta", a.config.fixed_beta, where);
  a.config.k_max = get_int(obj, "k_max", a.config.k_max, where);
  a.config.t_max = get_int(obj, "t_max", a.config.t_max, where);
  a.config.eps_outer = get_num(obj, "eps_outer", a.config.eps_outer, where);
  a.config.eps_inner = get_num(obj, "eps_inner", a.config.eps_inner, where);
  a.config.gamma_floor = get_num(obj, "gamma_floor", a.config.gamma_floor, where);
  a.config.gamma_cap = get_num(obj, "gamma_cap", a.config.gamma_cap, where);
  a.config.denom_floor = get_num(obj, "denom_floor", a.config.denom_floor, where);
  a.config.gamma_init = get_num(obj, "gamma_init", a.config.gamma_init, where);
  return a;
}

json scenario_json(const ScenarioEntry& e) {
  json o;
  o["name"] = e.name;
  o["N"] = e.spec.n;
  o["L"] = e.spec.l;
  o["M"] = e.spec.m;
  o["pattern"] = pattern_name(e.spec.pattern);
  if (const auto* b = std::get_if<BlockPattern>(&e.spec.pattern)) {
    o["num_blocks"] = b->num_blocks;
    o["block_len"] = b->block_len;
  } else if (const auto* h = std::get_if<HybridPattern>(&e.spec.pattern)) {
    o["num_blocks"] = h->num_blocks;
    o["block_len"] = h->block_len;
    o["num_isolated"] = h->num_isolated;
  } else if (const auto* r = std::get_if<RandomPattern>(&e.spec.pattern)) {
    o["num_nonzero"] = r->num_nonzero;
  }
  return o;
}

json algorithm_json(const AlgorithmSpec& a) {
  const SolverConfig c = a.config.normalized();
  json o;
  o["name"] = a.name;
  o["variant"] = to_string(c.variant);
  o["window"] = c.window;
  o["rho"] = c.rho;
  o["gamma_update"] = c.gamma_step == GammaStep::exact ? "exact" : "closed_form";
  o["warmup"] = c.warmup_iterations;
  o["normalize_beta"] = c.normalize_beta;
  if (c.beta_mode == BetaMode::fixed) o["fixed_beta"] = c.fixed_beta;
  o["k_max"] = c.k_max;
  o["t_max"] = c.t_max;
  o["eps_outer"] = c.eps_outer;
  o["eps_inner"] = c.eps_inner;
  o["gamma_floor"] = c.gamma_floor;
  o["gamma_cap"] = c.gamma_cap;
  o["denom_floor"] = c.denom_floor;
  o["gamma_init"] = c.gamma_init;
  return o;
}

// ---- scoring ----------------------------------------------------------------

double nan_val() { return std::numeric_limits<double>::quiet_NaN(); }

std::vector<TrialRecord> run_cell(const ExperimentConfig& cfg,
                                  std::size_t sc_idx, std::size_t snr_idx,
                                  int trial, const RunOptions& opts,
                                  std::mutex& log_mutex) {
  const std::uint64_t seed =
      derive_seed(cfg.master_seed,
                  {sc_idx, snr_idx, static_cast<std::uint64_t>(trial)});
  ScenarioSpec spec = cfg.scenarios[sc_idx].spec;
  spec.snr_db = cfg.snr_grid[snr_idx];
  spec.seed = seed;
  const Dataset ds = make_dataset(spec);

  if (opts.verbose) {
    std::lock_guard<std::mutex> g(log_mutex);
    std::cerr << "cell scenario=" << cfg.scenarios[sc_idx].name
              << " snr=" << spec.snr_db << " trial=" << trial
              << " seed=" << seed << " dataset=" << dataset_checksum(ds)
              << "\n";
  }

  std::vector<TrialRecord> rows;
  rows.reserve(cfg.algorithms.size() + 1);

  auto base_record = [&](const std::string& alg) {
    TrialRecord r;
    r.scenario = cfg.scenarios[sc_idx].name;
    r.snr_db = spec.snr_db;
    r.trial_index = trial;
    r.algorithm = alg;
    r.seed = seed;
    return r;
  };

  for (const AlgorithmSpec& alg : cfg.algorithms) {
    TrialRecord r = base_record(alg.name);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const SolverResult res = run(ds.problem, alg.config);
      r.nmse = nmse(ds.x_true, res.x_hat);
      const TrialScores sc = precision_recall_f1(
          ds.support_true, estimate_support(res.gamma, cfg.support_tau));
      r.precision = sc.precision;
      r.recall = sc.recall;
      r.f1_standard = sc.f1_standard;
      r.f1_paper = sc.f1_paper;
      r.em_iterations = res.iterations;
      for (int t : res.inner_iteration_counts) r.total_inner_iterations += t;
      r.converged = res.converged;
    } catch (const NumericError& e) {
      r.failed = true;
      r.nmse = r.precision = r.recall = r.f1_standard = r.f1_paper = nan_val();
      std::lock_guard<std::mutex> g(log_mutex);
      std::cerr << "trial failed: scenario=" << r.scenario << " snr=" << r.snr_db
                << " trial=" << trial << " algorithm=" << alg.name << ": "
                << e.what() << "\n";
    }
    if (opts.timing) {
      const auto t1 = std::chrono::steady_clock::now();
      r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    rows.push_back(std::move(r));
  }

  TrialRecord r = base_record("oracle_mmse");
  const auto t0 = std::chrono::steady_clock::now();
  const CMatrix x_or = oracle_mmse(ds.problem, ds.support_true, ds.gamma_true);
  r.nmse = nmse(ds.x_true, x_or);
  const TrialScores sc = precision_recall_f1(ds.support_true, ds.support_true);
  r.precision = sc.precision;
  r.recall = sc.recall;
  r.f1_standard = sc.f1_standard;
  r.f1_paper = sc.f1_paper;
  r.converged = true;
  if (opts.timing) {
    const auto t1 = std::chrono::steady_clock::now();
    r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  rows.push_back(std::move(r));
  return rows;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (scenarios.empty()) throw ConfigError("config: no scenarios given");
  if (algorithms.empty()) throw ConfigError("config: no algorithms given");
  if (trials < 1) throw ConfigError("config: trials must be >= 1");
  if (snr_grid.empty()) throw ConfigError("config: snr_grid must be nonempty");
  for (double s : snr_grid)
    if (!std::isfinite(s)) throw ConfigError("config: snr_grid entries must be finite");
  if (!(support_tau > 0.0) || !(support_tau < 1.0))
    throw ConfigError("config: support_tau must lie in (0,1)");

  std::set<std::string> names;
  int min_n = std::numeric_limits<int>::max();
  for (const ScenarioEntry& e : scenarios) {
    if (!names.insert(e.name).second)
      throw ConfigError("config: duplicate scenario name \"" + e.name + "\"");
    ScenarioSpec probe = e.spec;
    probe.snr_db = 0.0;
    probe.validate();
    min_n = std::min(min_n, e.spec.n);
  }
  names.clear();
  for (const AlgorithmSpec& a : algorithms) {
    if (a.name == "oracle_mmse")
      throw ConfigError("config: algorithm name \"oracle_mmse\" is reserved");
    if (!names.insert(a.name).second)
      throw ConfigError("config: duplicate algorithm name \"" + a.name + "\"");
    const SolverConfig c = a.config.normalized();
    if (c.window >= static_cast<std::size_t>(min_n))
      throw ConfigError("config: algorithm \"" + a.name + "\": window " +
                        std::to_string(c.window) + " must be < N (smallest N is " +
                        std::to_string(min_n) + ")");
  }
}

void ExperimentConfig::apply_scale(double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw ConfigError("config: scale factor must be positive");
  const auto scaled = [factor](int v, int lo) {
    return std::max(lo, static_cast<int>(std::lround(v * factor)));
  };
  for (ScenarioEntry& e : scenarios) {
    e.spec.n = scaled(e.spec.n, 1);
    if (auto* b = std::get_if<BlockPattern>(&e.spec.pattern)) {
      b->num_blocks = scaled(b->num_blocks, 1);
    } else if (auto* h = std::get_if<HybridPattern>(&e.spec.pattern)) {
      h->num_blocks = scaled(h->num_blocks, 1);
      h->num_isolated = scaled(h->num_isolated, 0);
    } else if (auto* r = std::get_if<RandomPattern>(&e.spec.pattern)) {
      r->num_nonzero = scaled(r->num_nonzero, 1);
    }
  }
}

ExperimentConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  check_keys(root,
             {"scenario", "scenarios", "snr_grid", "trials", "master_seed",
              "output_dir", "report_paper_f1", "support_tau", "algorithms"},
             "top level");

  ExperimentConfig cfg;
  const json* one = find(root, "scenario");
  const json* many = find(root, "scenarios");
  if ((one == nullptr) == (many == nullptr))
    throw ConfigError("config: give exactly one of \"scenario\" or \"scenarios\"");
  if (one) {
    cfg.scenarios.push_back(parse_scenario(*one, 0));
  } else {
    if (!many->is_array() || many->empty())
      throw ConfigError("config: \"scenarios\" must be a nonempty array");
    for (std::size_t i = 0; i < many->size(); ++i)
      cfg.scenarios.push_back(parse_scenario((*many)[i], i));
  }

  if (const json* grid = find(root, "snr_grid")) {
    if (!grid->is_array() || grid->empty())
      throw ConfigError("config: \"snr_grid\" must be a nonempty array");
    cfg.snr_grid.clear();
    for (const auto& v : *grid) {
      if (!v.is_number())
        throw ConfigError("config: \"snr_grid\" entries must be numbers");
      cfg.snr_grid.push_back(v.get<double>());
    }
  }
  cfg.trials = get_int(root, "trials", cfg.trials, "top level");
  if (const json* seed = find(root, "master_seed")) {
    if (!seed->is_number_unsigned() && !seed->is_number_integer())
      throw ConfigError("config: \"master_seed\" must be an integer");
    cfg.master_seed = seed->get<std::uint64_t>();
  }
  cfg.output_dir = get_str(root, "output_dir", cfg.output_dir, "top level");
  cfg.report_paper_f1 =
      get_bool(root, "report_paper_f1", cfg.report_paper_f1, "top level");
  cfg.support_tau = get_num(root, "support_tau", cfg.support_tau, "top level");

  const json* algs = find(root, "algorithms");
  if (!algs || !algs->is_array() || algs->empty())
    throw ConfigError("config: \"algorithms\" must be a nonempty array");
  for (std::size_t i = 0; i < algs->size(); ++i)
    cfg.algorithms.push_back(parse_algorithm((*algs)[i], i));

  cfg.validate();
  return cfg;
}

ExperimentConfig validate_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
  std::ostringstream oss;
  oss << in.rdbuf();
  return parse_config_text(oss.str());
}

std::string normalized_json(const ExperimentConfig& cfg) {
  json o;
  json scenarios = json::array();
  for (const ScenarioEntry& e : cfg.scenarios) scenarios.push_back(scenario_json(e));
  o["scenarios"] = std::move(scenarios);
  o["snr_grid"] = cfg.snr_grid;
  o["trials"] = cfg.trials;
  o["master_seed"] = cfg.master_seed;
  o["output_dir"] = cfg.output_dir;
  o["report_paper_f1"] = cfg.report_paper_f1;
  o["support_tau"] = cfg.support_tau;
  json algs = json::array();
  for (const AlgorithmSpec& a : cfg.algorithms) algs.push_back(algorithm_json(a));
  o["algorithms"] = std::move(algs);
  return o.dump(2);
}

ExperimentConfig demo_config() {
  ExperimentConfig cfg;
  cfg.snr_grid = {0, 10, 20};
  cfg.trials = 50;
  cfg.master_seed = 12345;
  cfg.output_dir = "demo_results";

  ScenarioEntry block{"block", {}};
  block.spec.n = 100;
  block.spec.l = 30;
  block.spec.m = 5;
  block.spec.pattern = BlockPattern{3, 4};
  ScenarioEntry hybrid{"hybrid", {}};
  hybrid.spec.n = 100;
  hybrid.spec.l = 30;
  hybrid.spec.m = 5;
  hybrid.spec.pattern = HybridPattern{2, 4, 3};
  ScenarioEntry random{"random", {}};
  random.spec.n = 100;
  random.spec.l = 30;
  random.spec.m = 5;
  random.spec.pattern = RandomPattern{11};
  cfg.scenarios = {block, hybrid, random};

  AlgorithmSpec proposed{"proposed", {}};
  AlgorithmSpec msbl{"m_sbl", {}};
  msbl.config.variant = Variant::m_sbl;
  AlgorithmSpec dol{"msbl_dol", {}};
  dol.config.variant = Variant::msbl_dol;
  cfg.algorithms = {proposed, msbl, dol};
  return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const RunOptions& opts) {
  cfg.validate();

  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
  const fs::path trial_path = dir / "per_trial.csv";
  const fs::path agg_path = dir / "aggregate.csv";
  std::ofstream trial_out(trial_path), agg_out(agg_path);
  if (!trial_out || !agg_out)
    throw IoError("output directory " + dir.string() + " is not writable");

  struct Cell {
    std::size_t sc, snr;
    int trial;
  };
  std::vector<Cell> cells;
  for (std::size_t sc = 0; sc < cfg.scenarios.size(); ++sc)
    for (std::size_t snr = 0; snr < cfg.snr_grid.size(); ++snr)
      for (int t = 0; t < cfg.trials; ++t) cells.push_back({sc, snr, t});

  std::vector<std::vector<TrialRecord>> slots(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex err_mutex, log_mutex;
  std::exception_ptr first_error;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>(
      cells.size(),
      opts.threads > 0 ? static_cast<std::size_t>(opts.threads) : hw);

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size() || abort.load()) return;
      try {
        slots[i] = run_cell(cfg, cells[i].sc, cells[i].snr, cells[i].trial,
                            opts, log_mutex);
      } catch (...) {
        std::lock_guard<std::mutex> g(err_mutex);
        if (!first_error) first_error = std::current_exception();
        abort.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  ExperimentResult result;
  for (auto& rows : slots)
    for (auto& r : rows) result.records.push_back(std::move(r));

  // aggregates over non-failed trials, deterministic group order
  std::vector<std::string> alg_names;
  for (const AlgorithmSpec& a : cfg.algorithms) alg_names.push_back(a.name);
  alg_names.push_back("oracle_mmse");
  for (std::size_t sc = 0; sc < cfg.scenarios.size(); ++sc)
    for (std::size_t snr = 0; snr < cfg.snr_grid.size(); ++snr)
      for (const std::string& alg : alg_names) {
        std::vector<double> nm, f1;
        for (const TrialRecord& r : result.records) {
          if (r.failed || r.scenario != cfg.scenarios[sc].name ||
              r.snr_db != cfg.snr_grid[snr] || r.algorithm != alg)
            continue;
          nm.push_back(r.nmse);
          f1.push_back(cfg.report_paper_f1 ? r.f1_paper : r.f1_standard);
        }
        AggregateRow row;
        row.scenario = cfg.scenarios[sc].name;
        row.snr_db = cfg.snr_grid[snr];
        row.algorithm = alg;
        row.n_trials = static_cast<int>(nm.size());
        const auto mean = [](const std::vector<double>& v) {
          double s = 0.0;
          for (double x : v) s += x;
          return v.empty() ? nan_val() : s / static_cast<double>(v.size());
        };
        const auto stderr_of = [&mean](const std::vector<double>& v) {
          if (v.size() < 2) return 0.0;
          const double m = mean(v);
          double ss = 0.0;
          for (double x : v) ss += (x - m) * (x - m);
          return std::sqrt(ss / static_cast<double>(v.size() - 1) /
                           static_cast<double>(v.size()));
        };
        row.nmse_mean = mean(nm);
        row.nmse_db = 10.0 * std::log10(row.nmse_mean);
        row.nmse_stderr = stderr_of(nm);
        row.f1_mean = mean(f1);
        row.f1_stderr = stderr_of(f1);
        result.aggregates.push_back(std::move(row));
      }

  trial_out << per_trial_csv(result.records);
  agg_out << aggregate_csv(result.aggregates);
  trial_out.flush();
  agg_out.flush();
  if (!trial_out || !agg_out)
    throw IoError("failed writing CSV output under " + dir.string());
  result.per_trial_path = trial_path;
  result.aggregate_path = agg_path;
  return result;
}

std::string per_trial_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "scenario,snr_db,trial_index,algorithm,nmse,precision,recall,"
         "f1_standard,f1_paper,em_iterations,total_inner_iterations,"
         "converged,runtime_ms,seed\n";
  for (const TrialRecord& r : records) {
    out << r.scenario << ',' << fmt(r.snr_db) << ',' << r.trial_index << ','
        << r.algorithm << ',' << fmt(r.nmse) << ',' << fmt(r.precision) << ','
        << fmt(r.recall) << ',' << fmt(r.f1_standard) << ',' << fmt(r.f1_paper)
        << ',' << r.em_iterations << ',' << r.total_inner_iterations << ','
        << (r.converged ? 1 : 0) << ',' << fmt(r.runtime_ms, "%.3f") << ','
        << r.seed << '\n';
  }
  return out.str();
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream out;
  out << "scenario,snr_db,algorithm,nmse_mean,nmse_db,nmse_stderr,f1_mean,"
         "f1_stderr,n_trials\n";
  for (const AggregateRow& r : rows) {
    out << r.scenario << ',' << fmt(r.snr_db) << ',' << r.algorithm << ','
        << fmt(r.nmse_mean) << ',' << fmt(r.nmse_db) << ','
        << fmt(r.nmse_stderr) << ',' << fmt(r.f1_mean) << ','
        << fmt(r.f1_stderr) << ',' << r.n_trials << '\n';
  }
  return out.str();
}

}  // namespace bsbl::bench
