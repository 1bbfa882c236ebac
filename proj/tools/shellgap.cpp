// shellgap: gap-sequence generation, benchmarking, grid search and table
// reproduction from the command line.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shellgap/catalog.hpp"
#include "shellgap/chain_pass.hpp"
#include "shellgap/error.hpp"
#include "shellgap/experiment.hpp"
#include "shellgap/gap_sequences.hpp"
#include "shellgap/grid_optimizer.hpp"
#include "shellgap/reproduce.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDeviation = 2;

using namespace shellgap;

// Comma-separated values are accepted wherever a list option repeats.
std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const std::string& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
}

struct GenArgs {
  std::string name;
  std::size_t n = 0;
  std::string rounding = "ceil";
};

int run_gen(const GenArgs& args) {
  GapSequence seq = resolve_sequence(args.name, args.n);
  if (args.name.starts_with("pratt:")) {
    const std::string_view bases = std::string_view(args.name).substr(6);
    const auto comma = bases.find(',');
    const PrattBasePair pair{static_cast<unsigned>(std::stoul(std::string(bases.substr(0, comma)))),
                             static_cast<unsigned>(std::stoul(std::string(bases.substr(comma + 1))))};
    if (auto warning = pratt_warning(pair)) std::cerr << "warning: " << *warning << '\n';
  }
  if (args.rounding != "ceil" && args.name.starts_with("ciura")) {
    const ExtensionRounding rounding =
        args.rounding == "round" ? ExtensionRounding::Round : ExtensionRounding::Floor;
    const CiuraVariant variant = args.name == "ciura-128"    ? CiuraVariant::C128
                                 : args.name == "ciura-1000" ? CiuraVariant::C1000
                                                             : CiuraVariant::CLarge;
    seq = ciura(variant, args.n, rounding);
  }
  std::string line;
  for (std::size_t g : seq.gaps()) {
    if (!line.empty()) line += ' ';
    line += std::to_string(g);
  }
  std::cout << line << '\n';
  return kExitOk;
}

struct BenchArgs {
  std::string config;
  std::vector<std::string> sequences;
  std::vector<std::size_t> sizes;
  std::size_t trials = 1000;
  std::vector<std::string> costs;
  std::uint64_t seed = 1;
  bool paired = false;
  std::string format;
  unsigned threads = 0;
  std::string plot_baseline;
  std::string output;
};

int run_bench(const BenchArgs& args, const CLI::App& cmd) {
  ExperimentConfig cfg;
  if (!args.config.empty()) {
    cfg = load_experiment_config(args.config);
  }
  // Inline flags override the config file.
  if (!args.sequences.empty()) cfg.sequences = split_list(args.sequences);
  if (!args.sizes.empty()) cfg.sizes = args.sizes;
  if (cmd.count("--trials") > 0) cfg.trials = args.trials;
  if (cmd.count("--seed") > 0) cfg.seed = args.seed;
  if (args.paired) cfg.paired = true;
  if (!args.format.empty()) cfg.format = parse_output_format(args.format);
  if (cmd.count("--threads") > 0) cfg.threads = args.threads;
  if (!args.costs.empty()) {
    cfg.costs.clear();
    for (const std::string& c : split_list(args.costs)) cfg.costs.push_back(parse_cost_kind(c));
  }
  cfg.validate();
  const auto rows = run_experiment(cfg);
  if (!args.plot_baseline.empty()) {
    write_output(emit_plot_data(rows, args.plot_baseline), args.output);
  } else {
    write_output(format_rows(rows, cfg.format, cfg.seed), args.output);
  }
  return kExitOk;
}

struct OptimizeArgs {
  std::string family = "a";
  std::size_t n = 128;
  std::string cost = "comparisons";
  std::string grid;
  std::uint64_t seed = 1;
  bool refine = false;
  bool paired = false;
  bool exponent_floor = false;
  std::size_t trials = 1000;
  std::size_t top = 10;
  std::string baseline = "tokuda";
  double factor = 1.02;
  double spread = 0.05;
  double threshold = 0.0;
  double confidence = 0.95;
  std::size_t min_trials = 5;
  std::size_t max_trials = 100;
  std::string checkpoint;
  std::string output;
  unsigned threads = 0;
  bool quiet = false;
};

int run_optimize(const OptimizeArgs& args, const CLI::App& cmd) {
  const TemplateFamily family = args.family == "a" ? TemplateFamily::A : TemplateFamily::B;
  std::string grid_text = args.grid;
  if (grid_text.empty()) grid_text = family == TemplateFamily::A ? "coarse-a" : "default-b";
  GridSpec spec = GridSpec::parse(family, grid_text);
  if (args.exponent_floor) {
    if (family != TemplateFamily::B) throw Error(ErrorCode::InvalidConfig, "--floor needs --template b");
    spec.exponent_floor = true;
  }
  const CostKind cost = parse_cost_kind(args.cost);
  const StreamPolicy streams{args.paired, args.threads};

  SprtConfig cfg;
  if (cmd.count("--threshold") > 0) {
    cfg.mean_threshold = args.threshold;
    cfg.variance_upper_bound = std::pow(args.spread * args.threshold, 2);
  } else {
    const TrialStats base =
        evaluate(resolve_sequence(args.baseline, args.n), args.n, args.trials, cost, args.seed, streams);
    cfg = SprtConfig::relative_to(base.mean, args.factor, args.spread);
    if (!args.quiet) {
      std::cerr << "baseline " << args.baseline << " mean " << base.mean << ", threshold "
                << cfg.mean_threshold << '\n';
    }
  }
  cfg.confidence = args.confidence;
  cfg.min_trials = args.min_trials;
  cfg.max_trials = args.max_trials;

  SearchOptions options;
  options.full_trials = args.trials;
  options.top_k = args.top;
  options.streams = streams;
  if (!args.checkpoint.empty()) options.checkpoint_path = args.checkpoint;
  if (!args.quiet) {
    options.progress = [](std::uint64_t done, std::uint64_t total) {
      std::cerr << "\rscreened " << done << " / " << total << std::flush;
      if (done == total) std::cerr << '\n';
    };
  }

  SearchReport report = grid_search(spec, args.n, cost, cfg, args.seed, options);
  if (!args.quiet) {
    std::cerr << "tuples " << report.tuples << ", unique " << report.unique << ", degenerate "
              << report.degenerate << ", accepted " << report.accepted << ", rejected "
              << report.rejected << ", screening trials " << report.screening_trials << '\n';
  }
  if (!report.diagnostic.empty()) std::cerr << report.diagnostic << '\n';
  if (args.refine && !report.results.empty()) {
    SearchOptions refine_options = options;
    refine_options.checkpoint_path.reset();
    refine_options.progress = nullptr;
    SearchResult refined =
        local_refine(report.results.front().params, args.n, cost, cfg, args.seed, 0.2, 20, refine_options);
    if (!args.quiet) std::cerr << "refined: " << describe(refined.params) << '\n';
    report.results.insert(report.results.begin(), refined);
    for (std::size_t r = 0; r < report.results.size(); ++r) report.results[r].rank = r + 1;
  }
  write_output(results_csv(report.results), args.output);
  return kExitOk;
}

struct ReproduceArgs {
  std::string table;
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  bool strict = false;
  double tolerance = 0.02;
  unsigned threads = 0;
  std::string output;
};

int run_reproduce(const ReproduceArgs& args) {
  const TableId id = parse_table_id(args.table);
  const ReproductionReport report = reproduce_table(id, args.seed, {args.trials, args.threads});
  write_output(format_reproduction_csv(report), args.output);
  const double worst = report.max_abs_deviation();
  std::cerr << "max |deviation| " << worst << '\n';
  if (!args.strict) return kExitOk;
  bool failed = worst > args.tolerance;
  if (id == TableId::Time && !timing_order_holds(report)) {
    std::cerr << "published timing order did not hold\n";
    failed = true;
  }
  return failed ? kExitDeviation : kExitOk;
}

struct VerifyArgs {
  std::size_t arrays = 10000;
  std::size_t min_n = 50;
  std::size_t max_n = 2000;
  std::uint64_t seed = 1;
};

int run_verify(const VerifyArgs& args) {
  bool clean = true;
  const std::pair<PrattBasePair, const char*> settings[] = {{{2, 5}, "2,5"}, {{3, 4}, "3,4"}};
  for (const auto& [bases, label] : settings) {
    const StructureSurvey survey = survey_structure(bases, args.arrays, args.min_n, args.max_n, args.seed);
    std::cout << label << ": arrays " << survey.arrays << ", unsorted " << survey.unsorted
              << ", fallbacks " << survey.chains.fallbacks;
    for (std::size_t k = 0; k < survey.chains.chains.size(); ++k) {
      if (survey.chains.chains[k] == 0) continue;
      std::cout << ", " << to_string(static_cast<ChainKind>(k)) << ' ' << survey.chains.chains[k];
    }
    std::cout << '\n';
    for (const auto& [what, count] : survey.violations) {
      std::cout << "  violation: " << what << " (" << count << " arrays)\n";
    }
    clean &= survey.clean();
  }
  std::cout << (clean ? "all structural checks passed\n" : "structural checks FAILED\n");
  return clean ? kExitOk : kExitDeviation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shellsort gap-sequence toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Print the gaps of a named sequence");
  gen_cmd->add_option("name", gen.name, "Sequence name")->required();
  gen_cmd->add_option("--n", gen.n, "Array size")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--rounding", gen.rounding, "Ciura extension rounding")
      ->check(CLI::IsMember({"ceil", "round", "floor"}));

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Measure sequences on random permutations");
  bench_cmd->add_option("--config", bench.config, "JSON experiment config")->check(CLI::ExistingFile);
  bench_cmd->add_option("--seq", bench.sequences, "Sequence names (repeat or comma-separate)");
  bench_cmd->add_option("--n", bench.sizes, "Array sizes")->delimiter(',')->check(CLI::PositiveNumber);
  bench_cmd->add_option("--trials", bench.trials, "Permutations per cell")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--cost", bench.costs, "comparisons, exchanges, exchange-ops, time");
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_flag("--paired", bench.paired, "Same permutations for every sequence");
  bench_cmd->add_option("--format", bench.format, "csv, markdown or json")
      ->check(CLI::IsMember({"csv", "markdown", "md", "json"}));
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0 = all cores)");
  bench_cmd->add_option("--plot-baseline", bench.plot_baseline,
                        "Emit differences against this sequence instead of the table");
  bench_cmd->add_option("--output,-o", bench.output, "Output file (default stdout)");

  OptimizeArgs opt;
  auto* opt_cmd = app.add_subcommand("optimize", "Grid-search template parameters");
  opt_cmd->add_option("--template", opt.family, "Template family")
      ->check(CLI::IsMember({"a", "b"}));
  opt_cmd->add_option("--n", opt.n, "Array size")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--cost", opt.cost, "Cost to minimise");
  opt_cmd->add_option("--grid", opt.grid,
                      "Preset (default-a, default-b, coarse-a) or axes like a=0.5:5:20,...,e=0:10");
  opt_cmd->add_option("--seed", opt.seed, "Base seed");
  opt_cmd->add_flag("--refine", opt.refine, "Refine the best tuple with a local grid");
  opt_cmd->add_flag("--paired", opt.paired, "Common random numbers for all candidates");
  opt_cmd->add_flag("--floor", opt.exponent_floor, "Floor the template-b exponent");
  opt_cmd->add_option("--trials", opt.trials, "Trials for full evaluation")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--top", opt.top, "Results to report")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--baseline", opt.baseline, "Sequence that sets the screening threshold");
  opt_cmd->add_option("--factor", opt.factor, "Threshold = factor * baseline mean");
  opt_cmd->add_option("--spread", opt.spread, "Variance bound = (spread * threshold)^2");
  opt_cmd->add_option("--threshold", opt.threshold, "Absolute screening threshold");
  opt_cmd->add_option("--confidence", opt.confidence, "Screening confidence");
  opt_cmd->add_option("--min-trials", opt.min_trials, "Screening minimum trials");
  opt_cmd->add_option("--max-trials", opt.max_trials, "Screening maximum trials");
  opt_cmd->add_option("--checkpoint", opt.checkpoint, "Resumable checkpoint file");
  opt_cmd->add_option("--output,-o", opt.output, "Results CSV (default stdout)");
  opt_cmd->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
  opt_cmd->add_flag("--quiet,-q", opt.quiet, "No progress on stderr");

  ReproduceArgs rep;
  auto* rep_cmd = app.add_subcommand("reproduce", "Re-run a published table");
  rep_cmd->add_option("--table", rep.table, "small, medium, large, time or inversions")
      ->required()
      ->check(CLI::IsMember({"small", "medium", "large", "time", "inversions"}));
  rep_cmd->add_option("--seed", rep.seed, "Base seed");
  rep_cmd->add_option("--trials", rep.trials, "Permutations per cell")->check(CLI::PositiveNumber);
  rep_cmd->add_flag("--strict", rep.strict, "Exit 2 when a deviation exceeds the tolerance");
  rep_cmd->add_option("--tolerance", rep.tolerance, "Relative tolerance for --strict");
  rep_cmd->add_option("--threads", rep.threads, "Worker threads (0 = all cores)");
  rep_cmd->add_option("--output,-o", rep.output, "Output file (default stdout)");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run the structural checks on presorted arrays");
  ver_cmd->add_option("--arrays", ver.arrays, "Arrays per base pair")->check(CLI::PositiveNumber);
  ver_cmd->add_option("--min-n", ver.min_n, "Smallest array")->check(CLI::Range(2, 1 << 24));
  ver_cmd->add_option("--max-n", ver.max_n, "Largest array")->check(CLI::Range(2, 1 << 24));
  ver_cmd->add_option("--seed", ver.seed, "Base seed");

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

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*bench_cmd) return run_bench(bench, *bench_cmd);
    if (*opt_cmd) return run_optimize(opt, *opt_cmd);
    if (*rep_cmd) return run_reproduce(rep);
    if (*ver_cmd) return run_verify(ver);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
