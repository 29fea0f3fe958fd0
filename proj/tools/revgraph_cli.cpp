// Command-line front end: every subcommand resolves its flags (defaults
// included) into a flat key/value map, runs from that map alone, and writes a
// manifest sufficient to replay the run bit-for-bit.

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "revgraph/branching.hpp"
#include "revgraph/cayley.hpp"
#include "revgraph/errors.hpp"
#include "revgraph/experiments.hpp"
#include "revgraph/io.hpp"
#include "revgraph/random_graph.hpp"
#include "revgraph/rng.hpp"
#include "revgraph/signed_perm.hpp"

namespace {

using revgraph::csv_field;
using revgraph::format_double;
using Params = std::map<std::string, std::string>;

constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) out.push_back(std::stoi(item));
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(std::stod(item));
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

std::uint64_t parse_u64(const std::string& text) {
  return std::stoull(text);
}

revgraph::GeneratorKind parse_gens(const std::string& text) {
  if (text == "reversals") return revgraph::GeneratorKind::Reversals;
  if (text == "transpositions")
    return revgraph::GeneratorKind::SignChangeTranspositions;
  if (text == "transpositions-noflip")
    return revgraph::GeneratorKind::SignChangeTranspositionsNoFlip;
  throw std::invalid_argument("unknown generator kind: " + text);
}

revgraph::SamplerKind parse_sampler(const std::string& text) {
  if (text == "hash") return revgraph::SamplerKind::Hash;
  if (text == "skip") return revgraph::SamplerKind::GeometricSkip;
  throw std::invalid_argument("unknown sampler: " + text);
}

revgraph::SweepMethod parse_method(const std::string& text) {
  if (text == "explicit") return revgraph::SweepMethod::Explicit;
  if (text == "lazy") return revgraph::SweepMethod::Lazy;
  if (text == "both") return revgraph::SweepMethod::Both;
  throw std::invalid_argument("unknown method: " + text);
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Expands `--config FILE` into option tokens placed ahead of the explicit
// flags, so the command line wins on conflicts (options are take-last).
// Config lines are `key=value`; blank lines and '#' comments are skipped.
std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string config_path;
  for (std::size_t i = 1; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw std::invalid_argument("--config needs a file path");
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  if (config_path.empty()) return args;
  if (args.size() < 2)
    throw std::invalid_argument("--config requires a subcommand");

  std::vector<std::string> tokens;
  std::istringstream is(revgraph::read_text_file(config_path));
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(config_path + ":" +
                                  std::to_string(lineno) +
                                  ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    const bool is_flag = key == "no-eps-family" || key == "no-flips";
    if (is_flag) {
      if (value == "true" || value == "1" || value == "yes")
        tokens.push_back("--" + key);
    } else {
      tokens.push_back("--" + key);
      tokens.push_back(value);
    }
  }
  std::vector<std::string> out;
  out.push_back(args[0]);
  out.push_back(args[1]);
  out.insert(out.end(), tokens.begin(), tokens.end());
  out.insert(out.end(), args.begin() + 2, args.end());
  return out;
}

// Collects output files so the manifest can list them after the run.
struct OutputSink {
  std::vector<std::string> paths;

  void write(const std::string& path, const std::string& content) {
    revgraph::write_text_file(path, content);
    paths.push_back(path);
  }
};

std::string out_stem(const Params& params, const std::string& command) {
  const auto it = params.find("out");
  if (it != params.end() && !it->second.empty()) return it->second;
  std::string stem = command;
  std::replace(stem.begin(), stem.end(), '-', '_');
  return stem;
}

bool json_format(const Params& params) {
  const auto it = params.find("format");
  return it != params.end() && it->second == "json";
}

void apply_threads(const Params& params) {
  const auto it = params.find("threads");
  if (it == params.end()) return;
  const int threads = std::stoi(it->second);
  if (threads > 0) omp_set_num_threads(threads);
}

// lambda/c resolution: at most one of the two flags is set; the other column
// is derived per n.
struct RateSpec {
  bool by_c = true;
  std::vector<double> values;
};

RateSpec rate_spec(const Params& params) {
  const std::string c = params.count("c") ? params.at("c") : "";
  const std::string lambda = params.count("lambda") ? params.at("lambda") : "";
  if (!c.empty() && !lambda.empty())
    throw std::invalid_argument("--c and --lambda are mutually exclusive");
  RateSpec spec;
  if (!lambda.empty()) {
    spec.by_c = false;
    spec.values = parse_double_list(lambda);
  } else {
    spec.by_c = true;
    spec.values = parse_double_list(c.empty() ? "1.5" : c);
  }
  return spec;
}

// ---------------------------------------------------------------------------
// survival

void run_survival(const Params& params, OutputSink& sink) {
  const auto epsilons = parse_double_list(params.at("epsilon"));
  const double tol = std::stod(params.at("tol"));
  std::vector<revgraph::SurvivalResult> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons)
    rows.push_back(revgraph::survival_fixed_point(eps, tol));

  const std::string stem = out_stem(params, "survival");
  if (json_format(params)) {
    nlohmann::json doc;
    doc["command"] = "survival";
    for (const auto& r : rows)
      doc["rows"].push_back({{"epsilon", r.epsilon},
                             {"lambda", r.lambda},
                             {"root", r.root},
                             {"residual", r.residual},
                             {"iterations", r.iterations}});
    sink.write(stem + ".json", doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "epsilon,lambda,root,residual,iterations\n";
    for (const auto& r : rows)
      os << csv_field(r.epsilon) << ',' << csv_field(r.lambda) << ','
         << csv_field(r.root) << ',' << csv_field(r.residual) << ','
         << csv_field(r.iterations) << '\n';
    sink.write(stem + ".csv", os.str());
  }
  for (const auto& r : rows)
    std::cout << "epsilon " << format_double(r.epsilon) << " -> root "
              << format_double(r.root) << " (residual "
              << format_double(r.residual) << ", " << r.iterations
              << " iterations)\n";
}

// ---------------------------------------------------------------------------
// sweep / transposition-sweep

std::string sweep_trials_csv(const std::vector<revgraph::TrialRow>& trials) {
  std::ostringstream os;
  os << "n,c,lambda,method,trial,largest,second,vertex_count,seed\n";
  for (const auto& t : trials)
    os << csv_field(t.n) << ',' << csv_field(t.c) << ',' << csv_field(t.lambda)
       << ',' << csv_field(t.method) << ',' << csv_field(t.trial) << ','
       << csv_field(t.largest) << ',' << csv_field(t.second) << ','
       << csv_field(t.vertex_count) << ',' << csv_field(t.seed) << '\n';
  return os.str();
}

std::string sweep_summary_csv(const std::vector<revgraph::SweepRow>& rows) {
  std::ostringstream os;
  os << "n,c,lambda,method,trials,mean_largest_fraction,std_largest_fraction,"
        "mean_second_over_first,predicted_wp,predicted_2eps\n";
  for (const auto& r : rows)
    os << csv_field(r.n) << ',' << csv_field(r.c) << ',' << csv_field(r.lambda)
       << ',' << csv_field(r.method) << ',' << csv_field(r.trials) << ','
       << csv_field(r.mean_largest_fraction) << ','
       << csv_field(r.std_largest_fraction) << ','
       << csv_field(r.mean_second_over_first) << ','
       << csv_field(r.predicted_wp) << ',' << csv_field(r.predicted_2eps)
       << '\n';
  return os.str();
}

std::string sweep_plot_csv(const std::vector<revgraph::SweepRow>& rows) {
  // c vs mean largest fraction per n, with the predicted curve
  std::ostringstream os;
  os << "n,method,c,mean_largest_fraction,predicted_wp\n";
  for (const auto& r : rows) {
    if (r.trials == 0) continue;
    os << csv_field(r.n) << ',' << csv_field(r.method) << ',' << csv_field(r.c)
       << ',' << csv_field(r.mean_largest_fraction) << ','
       << csv_field(r.predicted_wp) << '\n';
  }
  return os.str();
}

nlohmann::json sweep_json(const revgraph::SweepResult& result) {
  nlohmann::json doc;
  doc["summary"] = nlohmann::json::array();
  for (const auto& r : result.rows)
    doc["summary"].push_back({{"n", r.n},
                              {"c", r.c},
                              {"lambda", r.lambda},
                              {"method", r.method},
                              {"trials", r.trials},
                              {"mean_largest_fraction", r.mean_largest_fraction},
                              {"std_largest_fraction", r.std_largest_fraction},
                              {"mean_second_over_first", r.mean_second_over_first},
                              {"predicted_wp", r.predicted_wp},
                              {"predicted_2eps", r.predicted_2eps}});
  doc["trials"] = nlohmann::json::array();
  for (const auto& t : result.trials)
    doc["trials"].push_back({{"n", t.n},
                             {"c", t.c},
                             {"lambda", t.lambda},
                             {"method", t.method},
                             {"trial", t.trial},
                             {"largest", t.largest},
                             {"second", t.second},
                             {"vertex_count", t.vertex_count},
                             {"seed", t.seed}});
  return doc;
}

revgraph::SweepConfig sweep_config_from(const Params& params,
                                        const std::string& n_key,
                                        const std::string& method_key) {
  revgraph::SweepConfig cfg;
  cfg.n_values = parse_int_list(params.at(n_key));
  cfg.master_seed = parse_u64(params.at("seed"));
  cfg.trials_per_cell = std::stoi(params.at("trials"));
  cfg.method = parse_method(params.at(method_key));
  cfg.gens = parse_gens(params.at("gens"));
  cfg.sampler = parse_sampler(params.at("sampler"));
  cfg.include_vanishing_eps_family = params.at("eps_family") == "true";
  if (!params.at("cutoff").empty())
    cfg.fixed_cutoff = parse_u64(params.at("cutoff"));

  const auto rates = rate_spec(params);
  if (rates.by_c) {
    cfg.c_values = rates.values;
  } else {
    // one c per lambda per n is resolved inside the library; translate here
    cfg.c_values.clear();
    for (double lambda : rates.values)
      cfg.c_values.push_back(
          lambda *
          static_cast<double>(
              revgraph::GeneratorSet{cfg.gens, cfg.n_values.front()}.count()));
  }
  return cfg;
}

void run_sweep_command(const std::string& command, const Params& params,
                       OutputSink& sink) {
  revgraph::SweepResult result;
  {
    const auto cfg = sweep_config_from(params, "n", "method");
    result = command == "transposition-sweep"
                 ? revgraph::run_transposition_analogue(cfg)
                 : revgraph::run_threshold_sweep(cfg);
  }
  if (params.count("n2") && !params.at("n2").empty()) {
    const auto cfg2 = sweep_config_from(params, "n2", "method2");
    auto extra = command == "transposition-sweep"
                     ? revgraph::run_transposition_analogue(cfg2)
                     : revgraph::run_threshold_sweep(cfg2);
    result.rows.insert(result.rows.end(), extra.rows.begin(), extra.rows.end());
    result.trials.insert(result.trials.end(), extra.trials.begin(),
                         extra.trials.end());
  }

  const std::string stem = out_stem(params, command);
  if (json_format(params)) {
    auto doc = sweep_json(result);
    doc["command"] = command;
    sink.write(stem + ".json", doc.dump(2) + "\n");
  } else {
    sink.write(stem + ".csv", sweep_trials_csv(result.trials));
    sink.write(stem + "_summary.csv", sweep_summary_csv(result.rows));
    sink.write(stem + "_plot.csv", sweep_plot_csv(result.rows));
  }
  for (const auto& r : result.rows) {
    std::cout << "n=" << r.n << " c=" << format_double(r.c) << " " << r.method;
    if (r.trials == 0) {
      std::cout << ": infeasible with this method\n";
      continue;
    }
    std::cout << ": mean largest fraction "
              << format_double(r.mean_largest_fraction);
    if (r.c > 1.0)
      std::cout << " (predicted " << format_double(r.predicted_wp) << ")";
    std::cout << "\n";
  }
}

// ---------------------------------------------------------------------------
// components

void run_components(const Params& params, OutputSink& sink) {
  const int n = std::stoi(params.at("n"));
  const auto gens = parse_gens(params.at("gens"));
  const auto rates = rate_spec(params);
  if (rates.values.size() != 1)
    throw std::invalid_argument("components takes a single c or lambda");
  auto cfg = rates.by_c
                 ? revgraph::SampleConfig::from_c(n, rates.values[0], gens,
                                                  parse_u64(params.at("seed")))
                 : revgraph::SampleConfig::from_lambda(
                       n, rates.values[0], gens, parse_u64(params.at("seed")));
  cfg.sampler = parse_sampler(params.at("sampler"));

  const auto graph = revgraph::sample_subgraph_explicit(cfg);
  const auto stats = revgraph::components(graph);
  const double largest_fraction = static_cast<double>(stats.largest) /
                                  static_cast<double>(stats.vertex_count);
  const double ratio = stats.largest
                           ? static_cast<double>(stats.second) /
                                 static_cast<double>(stats.largest)
                           : 0.0;

  if (params.count("save_graph") && !params.at("save_graph").empty()) {
    revgraph::save_subgraph(graph, params.at("save_graph"));
    sink.paths.push_back(params.at("save_graph"));
  }
  if (params.count("dump_sizes") && !params.at("dump_sizes").empty()) {
    std::ostringstream os;
    for (auto s : stats.sizes) os << s << '\n';
    sink.write(params.at("dump_sizes"), os.str());
  }

  const std::string stem = out_stem(params, "components");
  if (json_format(params)) {
    nlohmann::json doc;
    doc["command"] = "components";
    doc["row"] = {{"n", n},
                  {"c", cfg.c},
                  {"lambda", cfg.lambda},
                  {"gens", revgraph::generator_kind_name(cfg.gens)},
                  {"seed", cfg.seed},
                  {"vertex_count", stats.vertex_count},
                  {"edge_count", graph.edges.size()},
                  {"component_count", stats.component_count},
                  {"largest", stats.largest},
                  {"second", stats.second},
                  {"largest_fraction", largest_fraction},
                  {"second_over_first", ratio}};
    sink.write(stem + ".json", doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "n,c,lambda,gens,seed,vertex_count,edge_count,component_count,"
          "largest,second,largest_fraction,second_over_first\n";
    os << csv_field(n) << ',' << csv_field(cfg.c) << ','
       << csv_field(cfg.lambda) << ','
       << csv_field(std::string(revgraph::generator_kind_name(cfg.gens)))
       << ',' << csv_field(cfg.seed) << ',' << csv_field(stats.vertex_count)
       << ',' << csv_field(static_cast<std::uint64_t>(graph.edges.size()))
       << ',' << csv_field(stats.component_count) << ','
       << csv_field(stats.largest) << ',' << csv_field(stats.second) << ','
       << csv_field(largest_fraction) << ',' << csv_field(ratio) << '\n';
    sink.write(stem + ".csv", os.str());
  }
  std::cout << "vertices " << stats.vertex_count << ", edges "
            << graph.edges.size() << ", components " << stats.component_count
            << ", largest " << stats.largest << " (fraction "
            << format_double(largest_fraction) << ")\n";
}

// ---------------------------------------------------------------------------
// explore

void run_explore(const Params& params, OutputSink& sink) {
  const int n = std::stoi(params.at("n"));
  const auto gens = parse_gens(params.at("gens"));
  const auto rates = rate_spec(params);
  if (rates.values.size() != 1)
    throw std::invalid_argument("explore takes a single c or lambda");
  const double degree =
      static_cast<double>(revgraph::GeneratorSet{gens, n}.count());
  const double lambda =
      rates.by_c ? rates.values[0] / degree : rates.values[0];
  const double c = rates.by_c ? rates.values[0] : rates.values[0] * degree;
  const std::uint64_t trials = parse_u64(params.at("trials"));
  const std::uint64_t master_seed = parse_u64(params.at("seed"));
  std::uint64_t cutoff;
  if (!params.at("cutoff").empty()) {
    cutoff = parse_u64(params.at("cutoff"));
  } else {
    const auto nn = static_cast<std::uint64_t>(n);
    cutoff = nn * nn * nn * nn;
  }

  const auto id = revgraph::SignedPerm::identity(n);
  std::vector<revgraph::ExplorationResult> runs(trials);
  std::vector<std::uint64_t> seeds(trials);
  for (std::uint64_t t = 0; t < trials; ++t)
    seeds[t] = revgraph::derive_seed(master_seed, t);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t)
    runs[static_cast<std::size_t>(t)] = revgraph::explore_component_lazy(
        n, lambda, id, cutoff, gens, seeds[static_cast<std::size_t>(t)]);

  std::uint64_t hits = 0;
  for (const auto& r : runs) hits += r.hit_cutoff ? 1 : 0;
  const double mean = static_cast<double>(hits) / static_cast<double>(trials);
  const double se =
      std::sqrt(mean * (1.0 - mean) / static_cast<double>(trials));

  const std::string stem = out_stem(params, "explore");
  if (json_format(params)) {
    nlohmann::json doc;
    doc["command"] = "explore";
    doc["summary"] = {{"n", n},          {"c", c},
                      {"lambda", lambda}, {"cutoff", cutoff},
                      {"trials", trials}, {"hits", hits},
                      {"mean", mean},     {"std_error", se}};
    doc["trials"] = nlohmann::json::array();
    for (std::uint64_t t = 0; t < trials; ++t)
      doc["trials"].push_back({{"trial", t},
                               {"seed", seeds[t]},
                               {"component_size", runs[t].component_size},
                               {"hit_cutoff", runs[t].hit_cutoff},
                               {"edges_examined", runs[t].edges_examined}});
    sink.write(stem + ".json", doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "trial,seed,component_size,hit_cutoff,edges_examined\n";
    for (std::uint64_t t = 0; t < trials; ++t)
      os << csv_field(t) << ',' << csv_field(seeds[t]) << ','
         << csv_field(runs[t].component_size) << ','
         << (runs[t].hit_cutoff ? "true" : "false") << ','
         << csv_field(runs[t].edges_examined) << '\n';
    sink.write(stem + ".csv", os.str());

    std::ostringstream sum;
    sum << "n,c,lambda,cutoff,trials,hits,mean,std_error\n";
    sum << csv_field(n) << ',' << csv_field(c) << ',' << csv_field(lambda)
        << ',' << csv_field(cutoff) << ',' << csv_field(trials) << ','
        << csv_field(hits) << ',' << csv_field(mean) << ',' << csv_field(se)
        << '\n';
    sink.write(stem + "_summary.csv", sum.str());
  }
  std::cout << "hit fraction " << format_double(mean) << " (" << hits << "/"
            << trials << ", cutoff " << cutoff << ")\n";
}

// ---------------------------------------------------------------------------
// branching

void run_branching(const Params& params, OutputSink& sink) {
  revgraph::BranchingConfig cfg;
  const std::string process = params.at("process");
  if (process == "poisson") {
    cfg.model = revgraph::OffspringModel::Poisson;
    cfg.lambda = std::stod(params.at("lambda"));
  } else if (process == "pm") {
    cfg.model = revgraph::OffspringModel::Binomial;
    cfg.m = std::stoi(params.at("m"));
    cfg.p = std::stod(params.at("p"));
  } else if (process == "p0") {
    cfg.model = revgraph::OffspringModel::BinomialRoot;
    cfg.m = std::stoi(params.at("m"));
    cfg.p = std::stod(params.at("p"));
  } else {
    throw std::invalid_argument("unknown process: " + process);
  }
  cfg.max_generations = std::stoi(params.at("max_generations"));
  cfg.population_cap = parse_u64(params.at("cap"));
  const std::uint64_t trials = parse_u64(params.at("trials"));
  const std::uint64_t seed = parse_u64(params.at("seed"));

  const auto est = revgraph::simulate_branching(cfg, trials, seed);

  const std::string stem = out_stem(params, "branching");
  if (json_format(params)) {
    nlohmann::json doc;
    doc["command"] = "branching";
    doc["row"] = {{"process", process},
                  {"m", cfg.m},
                  {"p", cfg.p},
                  {"lambda", cfg.lambda},
                  {"max_generations", cfg.max_generations},
                  {"population_cap", cfg.population_cap},
                  {"trials", est.trials},
                  {"survived", est.survived},
                  {"mean", est.mean},
                  {"ci_low", est.ci_low},
                  {"ci_high", est.ci_high}};
    sink.write(stem + ".json", doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "process,m,p,lambda,max_generations,population_cap,trials,"
          "survived,mean,ci_low,ci_high\n";
    os << csv_field(process) << ',' << csv_field(cfg.m) << ','
       << csv_field(cfg.p) << ',' << csv_field(cfg.lambda) << ','
       << csv_field(cfg.max_generations) << ','
       << csv_field(cfg.population_cap) << ',' << csv_field(est.trials) << ','
       << csv_field(est.survived) << ',' << csv_field(est.mean) << ','
       << csv_field(est.ci_low) << ',' << csv_field(est.ci_high) << '\n';
    sink.write(stem + ".csv", os.str());
  }
  std::cout << "survival estimate " << format_double(est.mean) << " (95% CI ["
            << format_double(est.ci_low) << ", " << format_double(est.ci_high)
            << "])\n";
}

// ---------------------------------------------------------------------------
// tree

void run_tree(const Params& params, OutputSink& sink) {
  const int n = std::stoi(params.at("n"));
  const auto rates = rate_spec(params);
  if (rates.values.size() != 1)
    throw std::invalid_argument("tree takes a single c or lambda");
  const double degree = static_cast<double>(
      revgraph::GeneratorSet{revgraph::GeneratorKind::Reversals, n}.count());
  const double lambda =
      rates.by_c ? rates.values[0] / degree : rates.values[0];
  const double c = rates.by_c ? rates.values[0] : rates.values[0] * degree;
  const std::uint64_t runs = parse_u64(params.at("runs"));
  const std::uint64_t master_seed = parse_u64(params.at("seed"));

  const auto results = revgraph::grow_restricted_trees(n, lambda, runs, master_seed);
  const auto tree_params = revgraph::restricted_tree_params(n);

  std::uint64_t successes = 0;
  bool all_distinct = true;
  for (const auto& run : results) {
    successes += run.succeeded ? 1 : 0;
    std::vector<std::vector<int>> seen;
    for (const auto& v : run.vertices) seen.push_back(v.entries());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      all_distinct = false;
  }
  const double frequency =
      static_cast<double>(successes) / static_cast<double>(runs);
  const double predicted =
      c > 1.0 ? revgraph::predicted_giant_fraction(c - 1.0, n).value : 0.0;

  const std::string stem = out_stem(params, "tree");
  if (json_format(params)) {
    nlohmann::json doc;
    doc["command"] = "tree";
    doc["summary"] = {{"n", n},
                      {"c", c},
                      {"lambda", lambda},
                      {"target_size", tree_params.target_size},
                      {"m_offspring", tree_params.m_offspring},
                      {"runs", runs},
                      {"successes", successes},
                      {"success_frequency", frequency},
                      {"all_distinct", all_distinct},
                      {"predicted_wp", predicted}};
    doc["runs"] = nlohmann::json::array();
    for (std::uint64_t i = 0; i < results.size(); ++i)
      doc["runs"].push_back({{"run", i},
                             {"seed", results[i].seed},
                             {"size", results[i].vertices.size()},
                             {"succeeded", results[i].succeeded}});
    sink.write(stem + ".json", doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "run,seed,target_size,m_offspring,size,succeeded\n";
    for (std::uint64_t i = 0; i < results.size(); ++i)
      os << csv_field(i) << ',' << csv_field(results[i].seed) << ','
         << csv_field(tree_params.target_size) << ','
         << csv_field(static_cast<std::uint64_t>(tree_params.m_offspring))
         << ',' << csv_field(static_cast<std::uint64_t>(results[i].vertices.size()))
         << ',' << (results[i].succeeded ? "true" : "false") << '\n';
    sink.write(stem + ".csv", os.str());

    std::ostringstream sum;
    sum << "n,c,lambda,target_size,m_offspring,runs,successes,"
           "success_frequency,all_distinct,predicted_wp\n";
    sum << csv_field(n) << ',' << csv_field(c) << ',' << csv_field(lambda)
        << ',' << csv_field(tree_params.target_size) << ','
        << csv_field(static_cast<std::uint64_t>(tree_params.m_offspring))
        << ',' << csv_field(runs) << ',' << csv_field(successes) << ','
        << csv_field(frequency) << ',' << (all_distinct ? "true" : "false")
        << ',' << csv_field(predicted) << '\n';
    sink.write(stem + "_summary.csv", sum.str());
  }

  if (params.count("dump") && !params.at("dump").empty()) {
    std::ostringstream os;
    for (std::uint64_t i = 0; i < results.size(); ++i) {
      const auto& run = results[i];
      os << "run " << i << " seed " << run.seed << " size "
         << run.vertices.size() << (run.succeeded ? " succeeded" : " died")
         << '\n';
      for (std::size_t v = 0; v < run.vertices.size(); ++v)
        os << "  v" << v << ' ' << revgraph::to_string(run.vertices[v]) << '\n';
      for (const auto& e : run.parent_edges)
        os << "  v" << e.parent << " -> v" << e.child << " via (" << e.rev.i
           << ',' << e.rev.j << ")\n";
    }
    sink.write(params.at("dump"), os.str());
  }

  std::cout << "success frequency " << format_double(frequency) << " ("
            << successes << "/" << runs << "), target size "
            << tree_params.target_size << ", m "
            << tree_params.m_offspring
            << (all_distinct ? ", all vertices distinct"
                             : ", DUPLICATE VERTICES FOUND")
            << "\n";
}

// ---------------------------------------------------------------------------
// distance / density

revgraph::SignedPerm parse_vertex(const std::string& text, int n) {
  if (!text.empty() &&
      text.find_first_not_of("0123456789") == std::string::npos)
    return revgraph::unrank(n, parse_u64(text));
  return revgraph::parse_signed_perm(text);
}

void run_distance(const Params& params, OutputSink& sink) {
  const int n = std::stoi(params.at("n"));
  const auto gens = parse_gens(params.at("gens"));
  const auto from = parse_vertex(params.at("from"), n);
  const auto to = parse_vertex(params.at("to"), n);
  if (from.n() != n || to.n() != n)
    throw std::invalid_argument("vertex length does not match --n");
  const int max_depth = params.at("max_depth").empty()
                            ? 2 * (n + 1)
                            : std::stoi(params.at("max_depth"));
  const auto d =
      revgraph::bfs_distance(from, to, {gens, n}, max_depth);

  const std::string stem = out_stem(params, "distance");
  if (json_format(params)) {
    nlohmann::json doc;
    doc["command"] = "distance";
    doc["row"] = {{"n", n},
                  {"from", revgraph::to_string(from)},
                  {"to", revgraph::to_string(to)},
                  {"max_depth", max_depth},
                  {"reachable", d.has_value()}};
    if (d) doc["row"]["distance"] = *d;
    sink.write(stem + ".json", doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "n,from,to,max_depth,reachable,distance\n";
    os << csv_field(n) << ',' << csv_field(revgraph::to_string(from)) << ','
       << csv_field(revgraph::to_string(to)) << ',' << csv_field(max_depth)
       << ',' << (d ? "true" : "false") << ','
       << (d ? std::to_string(*d) : std::string()) << '\n';
    sink.write(stem + ".csv", os.str());
  }
  if (d)
    std::cout << "distance " << *d << "\n";
  else
    std::cout << "unreachable within depth " << max_depth << "\n";
}

void run_density(const Params& params, OutputSink& sink) {
  const int n = std::stoi(params.at("n"));
  const auto gens = parse_gens(params.at("gens"));
  const auto text = revgraph::read_text_file(params.at("set"));
  revgraph::VertexSet set;
  set.n = n;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (line.empty() || line[0] == '#') continue;
    set.members.push_back(revgraph::rank_of(parse_vertex(line, n)));
  }
  std::sort(set.members.begin(), set.members.end());
  set.members.erase(std::unique(set.members.begin(), set.members.end()),
                    set.members.end());
  if (set.members.empty())
    throw std::invalid_argument("vertex set file has no vertices");

  const bool dense = revgraph::is_dense(set, {gens, n});
  const auto bound = revgraph::check_boundary_bound(set, {gens, n});

  if (params.count("dump_boundary") && !params.at("dump_boundary").empty()) {
    const auto boundary = revgraph::vertex_boundary(set, {gens, n});
    std::ostringstream os;
    for (auto r : boundary.members) os << r << '\n';
    sink.write(params.at("dump_boundary"), os.str());
  }

  const std::string stem = out_stem(params, "density");
  if (json_format(params)) {
    nlohmann::json doc;
    doc["command"] = "density";
    doc["row"] = {{"n", n},
                  {"set_size", set.members.size()},
                  {"dense", dense},
                  {"boundary_size", bound.boundary_size},
                  {"bound_lhs", bound.lhs},
                  {"bound_rhs", bound.rhs},
                  {"bound_holds", bound.holds}};
    sink.write(stem + ".json", doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "n,set_size,dense,boundary_size,bound_lhs,bound_rhs,bound_holds\n";
    os << csv_field(n) << ','
       << csv_field(static_cast<std::uint64_t>(set.members.size())) << ','
       << (dense ? "true" : "false") << ',' << csv_field(bound.boundary_size)
       << ',' << csv_field(bound.lhs) << ',' << csv_field(bound.rhs) << ','
       << (bound.holds ? "true" : "false") << '\n';
    sink.write(stem + ".csv", os.str());
  }
  std::cout << "set of " << set.members.size() << (dense ? " is" : " is not")
            << " dense; boundary " << bound.boundary_size << " (bound "
            << format_double(bound.rhs) << ", holds "
            << (bound.holds ? "yes" : "no") << ")\n";
}

// ---------------------------------------------------------------------------
// critical-rates

void run_critical_rates(const Params& params, OutputSink& sink) {
  const auto lengths = parse_double_list(params.at("lengths"));
  const auto rows = revgraph::critical_rate_table(lengths);

  const std::string stem = out_stem(params, "critical-rates");
  if (json_format(params)) {
    nlohmann::json doc;
    doc["command"] = "critical-rates";
    for (const auto& r : rows) {
      const double rounded =
          std::round(r.critical_probability * 100.0) / 100.0;
      doc["rows"].push_back({{"block_length", r.block_length},
                             {"critical_probability", r.critical_probability},
                             {"critical_probability_2dp", rounded}});
    }
    sink.write(stem + ".json", doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "block_length,critical_probability,critical_probability_2dp\n";
    for (const auto& r : rows) {
      char rounded[16];
      std::snprintf(rounded, sizeof(rounded), "%.2f", r.critical_probability);
      os << csv_field(r.block_length) << ','
         << csv_field(r.critical_probability) << ',' << rounded << '\n';
    }
    sink.write(stem + ".csv", os.str());
  }
  for (const auto& r : rows)
    std::cout << "block length " << format_double(r.block_length)
              << " -> critical probability "
              << format_double(r.critical_probability) << "\n";
}

// ---------------------------------------------------------------------------
// dispatch and manifest plumbing

void run_command(const std::string& command, const Params& params,
                 OutputSink& sink) {
  if (command == "survival")
    run_survival(params, sink);
  else if (command == "sweep" || command == "transposition-sweep")
    run_sweep_command(command, params, sink);
  else if (command == "components")
    run_components(params, sink);
  else if (command == "explore")
    run_explore(params, sink);
  else if (command == "branching")
    run_branching(params, sink);
  else if (command == "tree")
    run_tree(params, sink);
  else if (command == "distance")
    run_distance(params, sink);
  else if (command == "density")
    run_density(params, sink);
  else if (command == "critical-rates")
    run_critical_rates(params, sink);
  else
    throw std::invalid_argument("unknown command: " + command);
}

int execute(const std::string& command, Params params) {
  apply_threads(params);
  revgraph::RunManifest manifest;
  manifest.command = command;
  manifest.started_at = revgraph::iso8601_utc_now();
  manifest.master_seed =
      params.count("seed") ? parse_u64(params.at("seed")) : 0;

  OutputSink sink;
  run_command(command, params, sink);

  manifest.parameters = std::move(params);
  manifest.finished_at = revgraph::iso8601_utc_now();
  manifest.outputs = sink.paths;
  const std::string manifest_path =
      out_stem(manifest.parameters, command) + ".manifest.json";
  revgraph::write_manifest(manifest, manifest_path);
  std::cout << "wrote manifest " << manifest_path << "\n";
  return 0;
}

int run_replay(const std::string& manifest_path) {
  const auto manifest = revgraph::read_manifest(manifest_path);
  std::cout << "replaying " << manifest.command << " from " << manifest_path
            << "\n";
  return execute(manifest.command, manifest.parameters);
}

// Registers the flags shared by the randomized subcommands.
struct CommonFlags {
  std::string seed;
  std::string format = "csv";
  std::string out;
  std::string threads = "0";
  std::string gens = "reversals";

  void attach(CLI::App* cmd, bool with_gens = true) {
    cmd->add_option("--seed", seed, "master seed (sampled if omitted)");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out, "output path stem");
    cmd->add_option("--threads", threads, "worker threads (0 = default)");
    if (with_gens)
      cmd->add_option("--gens", gens, "generator set")
          ->check(CLI::IsMember(
              {"reversals", "transpositions", "transpositions-noflip"}));
  }

  void fill(Params& params, bool with_gens = true) const {
    params["seed"] = seed.empty() ? std::to_string(fresh_seed()) : seed;
    params["format"] = format;
    params["out"] = out;
    params["threads"] = threads;
    if (with_gens) params["gens"] = gens;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "random reversal graph toolkit: phase-transition experiments over "
      "signed permutations"};
  app.require_subcommand(1);
  app.fallthrough(false);
  // config-file tokens precede explicit flags; last value wins
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // --- survival
  auto* survival = app.add_subcommand(
      "survival", "root of x + e^{-(1+eps) x} = 1 with diagnostics");
  std::string sv_epsilon;
  std::string sv_tol = "1e-10";
  CommonFlags sv_common;
  survival->add_option("--epsilon", sv_epsilon, "epsilon value or list")
      ->required();
  survival->add_option("--tol", sv_tol, "residual tolerance");
  sv_common.attach(survival, /*with_gens=*/false);

  // --- sweep / transposition-sweep
  struct SweepFlags {
    std::string n, c, lambda, trials = "10", cutoff, method = "explicit";
    std::string sampler = "hash";
    bool no_eps_family = false;
    CommonFlags common;
  };
  SweepFlags sw, tw;
  const auto add_sweep_flags = [](CLI::App* cmd, SweepFlags& flags,
                                  bool transposition) {
    cmd->add_option("--n", flags.n,
                    "n values (default: 5,6,7 explicit plus 8..12 lazy)");
    cmd->add_option("--c", flags.c, "c values; lambda = c/C(n+1,2)");
    cmd->add_option("--lambda", flags.lambda, "absolute edge probabilities");
    cmd->add_option("--trials", flags.trials, "trials per cell");
    cmd->add_option("--cutoff", flags.cutoff, "lazy cutoff (default n^4)");
    cmd->add_option("--method", flags.method, "explicit, lazy or both")
        ->check(CLI::IsMember({"explicit", "lazy", "both"}));
    cmd->add_option("--sampler", flags.sampler, "hash or skip")
        ->check(CLI::IsMember({"hash", "skip"}));
    cmd->add_flag("--no-eps-family", flags.no_eps_family,
                  "skip the c = 1 + n^(-1/8) row family");
    flags.common.attach(cmd, /*with_gens=*/!transposition);
  };
  auto* sweep = app.add_subcommand(
      "sweep", "largest-component sweep across the c grid");
  add_sweep_flags(sweep, sw, false);
  auto* tsweep = app.add_subcommand(
      "transposition-sweep",
      "the same sweep over the sign-change-transposition graph");
  add_sweep_flags(tsweep, tw, true);
  bool tw_no_flips = false;
  tsweep->add_flag("--no-flips", tw_no_flips,
                   "drop the i = j sign flips (degree C(n,2))");

  // --- components
  std::string co_n = "6", co_c, co_lambda, co_sampler = "hash";
  std::string co_save, co_sizes;
  CommonFlags co_common;
  auto* comps = app.add_subcommand(
      "components", "sample one explicit subgraph and report components");
  comps->add_option("--n", co_n, "genome length");
  comps->add_option("--c", co_c, "c value; lambda = c/C(n+1,2)");
  comps->add_option("--lambda", co_lambda, "absolute edge probability");
  comps->add_option("--sampler", co_sampler, "hash or skip")
      ->check(CLI::IsMember({"hash", "skip"}));
  comps->add_option("--save-graph", co_save, "persist the edge list (binary)");
  comps->add_option("--dump-sizes", co_sizes, "write all component sizes");
  co_common.attach(comps);

  // --- explore
  std::string ex_n = "8", ex_c, ex_lambda, ex_cutoff, ex_trials = "1";
  CommonFlags ex_common;
  auto* explore = app.add_subcommand(
      "explore", "lazy component exploration from the identity");
  explore->add_option("--n", ex_n, "genome length");
  explore->add_option("--c", ex_c, "c value; lambda = c/C(n+1,2)");
  explore->add_option("--lambda", ex_lambda, "absolute edge probability");
  explore->add_option("--cutoff", ex_cutoff, "stop after this many vertices");
  explore->add_option("--trials", ex_trials, "independent explorations");
  ex_common.attach(explore);

  // --- branching
  std::string br_process = "poisson", br_m = "50", br_p = "0.03";
  std::string br_lambda = "2.0", br_trials = "10000", br_cap = "10000";
  std::string br_maxgen = "200";
  CommonFlags br_common;
  auto* branching = app.add_subcommand(
      "branching", "survival proxy for the offspring processes");
  branching->add_option("--process", br_process, "p0, pm or poisson")
      ->check(CLI::IsMember({"p0", "pm", "poisson"}));
  branching->add_option("--m", br_m, "binomial candidate count");
  branching->add_option("--p", br_p, "binomial success probability");
  branching->add_option("--lambda", br_lambda, "poisson mean");
  branching->add_option("--trials", br_trials, "simulated trials");
  branching->add_option("--cap", br_cap, "population cap (survival proxy)");
  branching->add_option("--max-generations", br_maxgen, "generation cap");
  br_common.attach(branching, /*with_gens=*/false);

  // --- tree
  std::string tr_n = "64", tr_c, tr_lambda, tr_runs = "1", tr_dump;
  CommonFlags tr_common;
  auto* tree = app.add_subcommand(
      "tree", "restricted tree-growth process over high-left reversals");
  tree->add_option("--n", tr_n, "genome length (>= 16)");
  tree->add_option("--c", tr_c, "c value; lambda = c/C(n+1,2)");
  tree->add_option("--lambda", tr_lambda, "absolute edge probability");
  tree->add_option("--runs", tr_runs, "independent runs");
  tree->add_option("--dump", tr_dump, "write vertex/edge lists");
  tr_common.attach(tree, /*with_gens=*/false);

  // --- distance
  std::string di_n = "4", di_from, di_to, di_depth;
  CommonFlags di_common;
  auto* distance = app.add_subcommand(
      "distance", "BFS distance between two signed permutations");
  distance->add_option("--n", di_n, "genome length");
  distance->add_option("--from", di_from, "vertex (text or rank)")->required();
  distance->add_option("--to", di_to, "vertex (text or rank)")->required();
  distance->add_option("--max-depth", di_depth, "search depth cap");
  di_common.attach(distance);

  // --- density
  std::string de_n = "4", de_set, de_boundary;
  CommonFlags de_common;
  auto* density = app.add_subcommand(
      "density", "density and boundary bound of a vertex set");
  density->add_option("--n", de_n, "genome length");
  density->add_option("--set", de_set, "file of ranks or permutations")
      ->required();
  density->add_option("--dump-boundary", de_boundary,
                      "write the boundary as a rank list");
  de_common.attach(density);

  // --- critical-rates
  std::string cr_lengths;
  CommonFlags cr_common;
  auto* rates = app.add_subcommand(
      "critical-rates", "critical probability at real-valued block lengths");
  rates->add_option("--lengths", cr_lengths, "block lengths")->required();
  cr_common.attach(rates, /*with_gens=*/false);

  // --- replay
  std::string rp_manifest;
  auto* replay = app.add_subcommand("replay", "re-run a recorded manifest");
  replay->add_option("--manifest", rp_manifest, "manifest path")->required();

  try {
    auto args = expand_config_args(argc, argv);
    std::vector<const char*> cargs;
    cargs.reserve(args.size());
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()),
              const_cast<char**>(cargs.data()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const revgraph::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (survival->parsed()) {
      Params params;
      params["epsilon"] = sv_epsilon;
      params["tol"] = sv_tol;
      sv_common.fill(params, /*with_gens=*/false);
      return execute("survival", std::move(params));
    }
    if (sweep->parsed() || tsweep->parsed()) {
      const bool transposition = tsweep->parsed();
      SweepFlags& flags = transposition ? tw : sw;
      Params params;
      params["trials"] = flags.trials;
      params["cutoff"] = flags.cutoff;
      params["sampler"] = flags.sampler;
      params["eps_family"] = flags.no_eps_family ? "false" : "true";
      flags.common.fill(params, /*with_gens=*/!transposition);
      if (transposition)
        params["gens"] = tw_no_flips ? "transpositions-noflip"
                                     : "transpositions";
      params["c"] = flags.c;
      params["lambda"] = flags.lambda;
      if (flags.c.empty() && flags.lambda.empty())
        params["c"] = "0.25,0.5,0.75,0.9,1.0,1.1,1.25,1.5,2.0";
      const auto* active = transposition ? tsweep : sweep;
      if (flags.n.empty() && active->count("--method") == 0) {
        // default grid: small n explicitly, larger n by lazy exploration
        params["n"] = "5,6,7";
        params["method"] = "explicit";
        params["n2"] = "8,9,10,11,12";
        params["method2"] = "lazy";
      } else {
        params["n"] = flags.n.empty() ? "5,6,7" : flags.n;
        params["method"] = flags.method;
        params["n2"] = "";
        params["method2"] = "";
      }
      return execute(transposition ? "transposition-sweep" : "sweep",
                     std::move(params));
    }
    if (comps->parsed()) {
      Params params;
      params["n"] = co_n;
      params["c"] = co_c;
      params["lambda"] = co_lambda;
      if (co_c.empty() && co_lambda.empty()) params["c"] = "1.5";
      params["sampler"] = co_sampler;
      params["save_graph"] = co_save;
      params["dump_sizes"] = co_sizes;
      co_common.fill(params);
      return execute("components", std::move(params));
    }
    if (explore->parsed()) {
      Params params;
      params["n"] = ex_n;
      params["c"] = ex_c;
      params["lambda"] = ex_lambda;
      if (ex_c.empty() && ex_lambda.empty()) params["c"] = "1.5";
      params["cutoff"] = ex_cutoff;
      params["trials"] = ex_trials;
      ex_common.fill(params);
      return execute("explore", std::move(params));
    }
    if (branching->parsed()) {
      Params params;
      params["process"] = br_process;
      params["m"] = br_m;
      params["p"] = br_p;
      params["lambda"] = br_lambda;
      params["trials"] = br_trials;
      params["cap"] = br_cap;
      params["max_generations"] = br_maxgen;
      br_common.fill(params, /*with_gens=*/false);
      return execute("branching", std::move(params));
    }
    if (tree->parsed()) {
      Params params;
      params["n"] = tr_n;
      params["c"] = tr_c;
      params["lambda"] = tr_lambda;
      if (tr_c.empty() && tr_lambda.empty()) params["c"] = "1.5";
      params["runs"] = tr_runs;
      params["dump"] = tr_dump;
      tr_common.fill(params, /*with_gens=*/false);
      return execute("tree", std::move(params));
    }
    if (distance->parsed()) {
      Params params;
      params["n"] = di_n;
      params["from"] = di_from;
      params["to"] = di_to;
      params["max_depth"] = di_depth;
      di_common.fill(params);
      return execute("distance", std::move(params));
    }
    if (density->parsed()) {
      Params params;
      params["n"] = de_n;
      params["set"] = de_set;
      params["dump_boundary"] = de_boundary;
      de_common.fill(params);
      return execute("density", std::move(params));
    }
    if (rates->parsed()) {
      Params params;
      params["lengths"] = cr_lengths;
      cr_common.fill(params, /*with_gens=*/false);
      return execute("critical-rates", std::move(params));
    }
    if (replay->parsed()) return run_replay(rp_manifest);
    throw std::invalid_argument("no subcommand given");
  } catch (const revgraph::infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const revgraph::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
