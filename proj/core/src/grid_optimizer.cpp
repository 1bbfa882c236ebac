#include "shellgap/grid_optimizer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_set>

#include <boost/math/distributions/normal.hpp>

#include "checkpoint.hpp"
#include "format.hpp"
#include "shellgap/error.hpp"
#include "shellgap/parallel.hpp"
#include "shellgap/random.hpp"
#include "shellgap/stats.hpp"

namespace shellgap {
namespace {

constexpr std::uint64_t kPairedStream = stream_id("paired");
constexpr std::uint64_t kScreenTag = stream_id("screen");
// Timing noise needs a larger sample before any screening decision.
constexpr std::size_t kMinTimeTrials = 30;

std::uint64_t candidate_stream(const GapSequence& seq, const StreamPolicy& policy) {
  return policy.paired ? kPairedStream : stream_id(canonical_key(seq));
}

unsigned resolve_threads(unsigned requested) {
  return requested == 0 ? default_threads() : requested;
}

double metric_value(const SortMetrics& m, CostKind cost) {
  switch (cost) {
    case CostKind::Comparisons: return static_cast<double>(m.comparisons);
    case CostKind::Exchanges: return static_cast<double>(m.exchanges);
    case CostKind::ExchangeOps: return static_cast<double>(m.exchange_ops);
    case CostKind::Time: break;
  }
  return 0.0;
}

std::vector<std::string> axis_names(TemplateFamily family) {
  if (family == TemplateFamily::A) return {"a", "b", "c", "d", "e", "f"};
  return {"a", "b", "c", "d"};
}

std::string integer_axis(TemplateFamily family) { return family == TemplateFamily::A ? "e" : "d"; }

double parse_double(std::string_view text, std::string_view context) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidConfig,
                "bad number '" + std::string(text) + "' in " + std::string(context));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  for (;;) {
    const auto pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

void count_degenerate(const TemplateParams& params, std::size_t n, DedupResult& out,
                      std::unordered_set<std::string>& seen) {
  ++out.total_in;
  try {
    GapSequence seq = generate(params, n);
    if (n > 4 && seq.size() < 2) {
      ++out.degenerate;
      return;
    }
    std::string key = canonical_key(seq);
    if (seen.insert(key).second) {
      out.unique.push_back(Candidate{params, std::move(seq), std::move(key)});
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateSequence && e.code() != ErrorCode::InvalidParameters) {
      throw;
    }
    ++out.degenerate;
  }
}

nlohmann::json search_identity(const GridSpec& spec, std::size_t n, CostKind cost,
                               const SprtConfig& cfg, std::uint64_t seed,
                               const SearchOptions& options) {
  return {{"spec", detail::to_json(spec)},
          {"n", n},
          {"cost", std::string(to_string(cost))},
          {"seed", seed},
          {"paired", options.streams.paired},
          {"full_trials", options.full_trials},
          {"sprt",
           {{"mean_threshold", std::isinf(cfg.mean_threshold) ? -1.0 : cfg.mean_threshold},
            {"variance_upper_bound", cfg.variance_upper_bound},
            {"confidence", cfg.confidence},
            {"min_trials", cfg.min_trials},
            {"max_trials", cfg.max_trials}}}};
}

}  // namespace

std::string_view to_string(CostKind kind) noexcept {
  switch (kind) {
    case CostKind::Comparisons: return "comparisons";
    case CostKind::Exchanges: return "exchanges";
    case CostKind::ExchangeOps: return "exchange-ops";
    case CostKind::Time: return "time";
  }
  return "?";
}

CostKind parse_cost_kind(std::string_view text) {
  if (text == "comparisons" || text == "co") return CostKind::Comparisons;
  if (text == "exchanges" || text == "ex") return CostKind::Exchanges;
  if (text == "exchange-ops" || text == "exop") return CostKind::ExchangeOps;
  if (text == "time") return CostKind::Time;
  throw Error(ErrorCode::InvalidConfig, "unknown cost '" + std::string(text) + "'");
}

Axis Axis::linear(std::string name, double lower, double upper, std::size_t points) {
  Axis axis{std::move(name), lower, upper, points, false};
  if (points == 0 || !(lower <= upper)) {
    throw Error(ErrorCode::InvalidConfig, "axis " + axis.name + " needs points >= 1 and lower <= upper");
  }
  return axis;
}

Axis Axis::integers(std::string name, int lower, int upper) {
  if (lower > upper) {
    throw Error(ErrorCode::InvalidConfig, "axis " + name + " needs lower <= upper");
  }
  return Axis{std::move(name), static_cast<double>(lower), static_cast<double>(upper),
              static_cast<std::size_t>(upper - lower + 1), true};
}

std::size_t Axis::size() const noexcept { return points; }

double Axis::value(std::size_t index) const {
  if (index >= points) throw Error(ErrorCode::InvalidConfig, "axis index out of range");
  if (integer) return lower + static_cast<double>(index);
  if (points == 1) return lower + (upper - lower) / 2;
  return lower + (upper - lower) * static_cast<double>(index) / static_cast<double>(points - 1);
}

std::vector<double> Axis::values() const {
  std::vector<double> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) out.push_back(value(i));
  return out;
}

GridSpec GridSpec::default_a() {
  GridSpec spec;
  spec.family = TemplateFamily::A;
  for (const char* name : {"a", "b", "c", "d"}) spec.axes.push_back(Axis::linear(name, 0.5, 5.0, 20));
  spec.axes.push_back(Axis::integers("e", 0, 10));
  spec.axes.push_back(Axis::linear("f", 0.5, 5.0, 20));
  return spec;
}

GridSpec GridSpec::default_b() {
  GridSpec spec;
  spec.family = TemplateFamily::B;
  for (const char* name : {"a", "b", "c"}) spec.axes.push_back(Axis::linear(name, 0.0, 10.0, 50));
  spec.axes.push_back(Axis::integers("d", 0, 10));
  return spec;
}

GridSpec GridSpec::coarse_a() {
  GridSpec spec;
  spec.family = TemplateFamily::A;
  for (const char* name : {"a", "b", "c", "d"}) spec.axes.push_back(Axis::linear(name, 0.5, 5.0, 6));
  spec.axes.push_back(Axis::integers("e", 0, 5));
  spec.axes.push_back(Axis::linear("f", 0.5, 5.0, 6));
  return spec;
}

GridSpec GridSpec::parse(TemplateFamily family, std::string_view text) {
  if (text == "default-a" || text == "default-b" || text == "coarse-a") {
    GridSpec spec = text == "default-a" ? default_a() : text == "default-b" ? default_b() : coarse_a();
    if (spec.family != family) {
      throw Error(ErrorCode::InvalidConfig, "grid preset " + std::string(text) +
                                                " does not match the template family");
    }
    return spec;
  }
  GridSpec spec;
  spec.family = family;
  const auto names = axis_names(family);
  std::vector<std::optional<Axis>> axes(names.size());
  for (std::string_view item : split(text, ',')) {
    if (item.empty()) continue;
    if (item == "floor") {
      if (family != TemplateFamily::B) {
        throw Error(ErrorCode::InvalidConfig, "'floor' only applies to template-b grids");
      }
      spec.exponent_floor = true;
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidConfig, "grid axis '" + std::string(item) + "' lacks '='");
    }
    const std::string name(item.substr(0, eq));
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorCode::InvalidConfig, "unknown grid axis '" + name + "'");
    const auto fields = split(item.substr(eq + 1), ':');
    const bool is_int = name == integer_axis(family);
    Axis axis;
    if (fields.size() == 1) {
      const double v = parse_double(fields[0], name);
      axis = is_int ? Axis::integers(name, static_cast<int>(v), static_cast<int>(v))
                    : Axis::linear(name, v, v, 1);
    } else if (is_int && fields.size() == 2) {
      axis = Axis::integers(name, static_cast<int>(parse_double(fields[0], name)),
                            static_cast<int>(parse_double(fields[1], name)));
    } else if (!is_int && fields.size() == 3) {
      const double points = parse_double(fields[2], name);
      if (points < 1 || points != std::floor(points)) {
        throw Error(ErrorCode::InvalidConfig, "axis " + name + " needs a positive point count");
      }
      axis = Axis::linear(name, parse_double(fields[0], name), parse_double(fields[1], name),
                          static_cast<std::size_t>(points));
    } else {
      throw Error(ErrorCode::InvalidConfig,
                  "axis " + name + (is_int ? " takes lo:hi or a single value"
                                           : " takes lo:hi:points or a single value"));
    }
    axes[static_cast<std::size_t>(it - names.begin())] = axis;
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!axes[i]) throw Error(ErrorCode::InvalidConfig, "grid is missing axis '" + names[i] + "'");
    spec.axes.push_back(*axes[i]);
  }
  return spec;
}

std::uint64_t GridSpec::cardinality() const noexcept {
  if (axes.empty()) return 0;
  std::uint64_t total = 1;
  for (const Axis& a : axes) total *= a.size();
  return total;
}

TemplateParams GridSpec::at(std::uint64_t index) const {
  std::vector<double> v(axes.size());
  for (std::size_t k = axes.size(); k-- > 0;) {
    const std::uint64_t size = axes[k].size();
    v[k] = axes[k].value(static_cast<std::size_t>(index % size));
    index /= size;
  }
  if (family == TemplateFamily::A) return TemplateParamsA{v[0], v[1], v[2], v[3], v[4], v[5]};
  return TemplateParamsB{v[0], v[1], v[2], v[3], exponent_floor};
}

void GridSpec::validate() const {
  const std::size_t expected = family == TemplateFamily::A ? 6 : 4;
  if (axes.size() != expected) {
    throw Error(ErrorCode::InvalidConfig, "template-" + std::string(family == TemplateFamily::A ? "a" : "b") +
                                              " grids need " + std::to_string(expected) + " axes");
  }
  for (const Axis& a : axes) {
    if (a.points == 0 || !(a.lower <= a.upper)) {
      throw Error(ErrorCode::InvalidConfig, "axis " + a.name + " is malformed");
    }
  }
}

GridEnumerator::GridEnumerator(GridSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  size_ = spec_.cardinality();
}

std::optional<TemplateParams> GridEnumerator::next() {
  if (cursor_ >= size_) return std::nullopt;
  return spec_.at(cursor_++);
}

DedupResult dedupe(GridEnumerator tuples, std::size_t n) {
  DedupResult out;
  std::unordered_set<std::string> seen;
  while (auto params = tuples.next()) count_degenerate(*params, n, out, seen);
  return out;
}

DedupResult dedupe(const std::vector<TemplateParams>& tuples, std::size_t n) {
  DedupResult out;
  std::unordered_set<std::string> seen;
  for (const auto& params : tuples) count_degenerate(params, n, out, seen);
  return out;
}

double trial_cost(const GapSequence& seq, std::size_t n, CostKind cost, std::uint64_t seed,
                  std::uint64_t stream, std::uint64_t trial) {
  thread_local std::vector<Key> buffer;
  Rng rng(derive_seed(seed, stream, trial));
  fisher_yates_into(buffer, n, rng);
  if (cost == CostKind::Time) {
    const auto elapsed = timed_shellsort(buffer, seq);
    return std::chrono::duration<double, std::milli>(elapsed).count();
  }
  return metric_value(shellsort(buffer, seq), cost);
}

TrialStats evaluate(const GapSequence& seq, std::size_t n, std::size_t trials, CostKind cost,
                    std::uint64_t seed, const StreamPolicy& policy) {
  if (trials == 0) throw Error(ErrorCode::InvalidParameters, "trials must be positive");
  const std::uint64_t stream = candidate_stream(seq, policy);
  std::vector<double> samples(trials);
  const unsigned threads = cost == CostKind::Time ? 1 : resolve_threads(policy.threads);
  parallel_for(trials, threads,
               [&](std::size_t t) { samples[t] = trial_cost(seq, n, cost, seed, stream, t); });
  const RunningStats s = summarize(samples);
  return TrialStats{s.mean(), s.sd(), trials, cost};
}

void SprtConfig::validate() const {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "confidence must lie in (0, 1)");
  }
  if (min_trials == 0 || min_trials > max_trials) {
    throw Error(ErrorCode::InvalidConfig, "need 1 <= min_trials <= max_trials");
  }
  if (!(variance_upper_bound >= 0.0) || std::isnan(mean_threshold)) {
    throw Error(ErrorCode::InvalidConfig, "variance bound must be >= 0 and threshold a number");
  }
}

SprtConfig SprtConfig::relative_to(double baseline_mean, double factor, double spread) {
  SprtConfig cfg;
  cfg.mean_threshold = factor * baseline_mean;
  cfg.variance_upper_bound = std::pow(spread * cfg.mean_threshold, 2);
  return cfg;
}

SprtOutcome sequential_filter(const SprtConfig& cfg,
                              const std::function<double(std::size_t)>& draw) {
  cfg.validate();
  const boost::math::normal_distribution<double> normal;
  const double z = boost::math::quantile(normal, 1.0 - (1.0 - cfg.confidence) / 2.0);
  RunningStats s;
  for (std::size_t t = 1; t <= cfg.max_trials; ++t) {
    s.add(draw(t - 1));
    if (t < cfg.min_trials) continue;
    const double half = z * std::sqrt(cfg.variance_upper_bound / static_cast<double>(t));
    if (s.mean() + half < cfg.mean_threshold) return {SprtDecision::Accept, t, s.mean()};
    if (s.mean() - half > cfg.mean_threshold) return {SprtDecision::Reject, t, s.mean()};
  }
  const auto decision = s.mean() < cfg.mean_threshold ? SprtDecision::Accept : SprtDecision::Reject;
  return {decision, cfg.max_trials, s.mean()};
}

SprtOutcome sprt_filter(const GapSequence& seq, std::size_t n, const SprtConfig& cfg,
                        CostKind cost, std::uint64_t seed, const StreamPolicy& policy) {
  SprtConfig effective = cfg;
  if (cost == CostKind::Time) {
    effective.min_trials = std::max(effective.min_trials, kMinTimeTrials);
    effective.max_trials = std::max(effective.max_trials, effective.min_trials);
  }
  const std::uint64_t stream = candidate_stream(seq, policy) ^ kScreenTag;
  return sequential_filter(effective, [&](std::size_t t) {
    return trial_cost(seq, n, cost, seed, stream, t);
  });
}

bool ranks_before(const SearchResult& a, const SearchResult& b) {
  if (a.stats.mean != b.stats.mean) return a.stats.mean < b.stats.mean;
  if (a.gap_count != b.gap_count) return a.gap_count < b.gap_count;
  return a.key < b.key;
}

SearchReport grid_search(const GridSpec& spec, std::size_t n, CostKind cost,
                         const SprtConfig& cfg, std::uint64_t seed, const SearchOptions& options) {
  spec.validate();
  cfg.validate();
  if (options.full_trials == 0 || options.batch_size == 0) {
    throw Error(ErrorCode::InvalidConfig, "full_trials and batch_size must be positive");
  }
  const DedupResult candidates = dedupe(GridEnumerator(spec), n);

  SearchReport report;
  report.tuples = candidates.total_in;
  report.unique = candidates.unique.size();
  report.degenerate = candidates.degenerate;

  detail::SearchCheckpoint state;
  state.identity = search_identity(spec, n, cost, cfg, seed, options);
  state.unique = report.unique;
  if (options.checkpoint_path) {
    if (auto loaded = detail::load_checkpoint(*options.checkpoint_path, state.identity)) {
      if (loaded->unique != report.unique || loaded->processed > report.unique) {
        throw Error(ErrorCode::InvalidConfig, "checkpoint does not match the candidate list");
      }
      state = std::move(*loaded);
    }
  }

  const unsigned threads = cost == CostKind::Time ? 1 : resolve_threads(options.streams.threads);
  const StreamPolicy inner{options.streams.paired, 1};
  const std::uint64_t total = report.unique;
  while (state.processed < total) {
    const std::uint64_t begin = state.processed;
    const std::uint64_t end = std::min<std::uint64_t>(total, begin + options.batch_size);
    const auto count = static_cast<std::size_t>(end - begin);
    std::vector<SprtOutcome> outcomes(count);
    std::vector<std::optional<TrialStats>> stats(count);
    parallel_for(count, threads, [&](std::size_t k) {
      const Candidate& c = candidates.unique[begin + k];
      outcomes[k] = sprt_filter(c.sequence, n, cfg, cost, seed, inner);
      if (outcomes[k].decision == SprtDecision::Accept) {
        stats[k] = evaluate(c.sequence, n, options.full_trials, cost, seed, inner);
      }
    });
    for (std::size_t k = 0; k < count; ++k) {
      const Candidate& c = candidates.unique[begin + k];
      state.screening_trials += outcomes[k].trials_used;
      if (stats[k]) {
        state.accepted.push_back(SearchResult{c.params, c.key, c.sequence.size(), *stats[k], 0});
      } else {
        ++state.rejected;
      }
    }
    state.processed = end;
    if (options.checkpoint_path) detail::save_checkpoint(*options.checkpoint_path, state);
    if (options.progress) options.progress(end, total);
  }

  report.accepted = state.accepted.size();
  report.rejected = state.rejected;
  report.screening_trials = state.screening_trials;
  std::vector<SearchResult> ranked = std::move(state.accepted);
  std::sort(ranked.begin(), ranked.end(), ranks_before);
  if (ranked.size() > options.top_k) ranked.resize(options.top_k);
  for (std::size_t r = 0; r < ranked.size(); ++r) ranked[r].rank = r + 1;
  report.results = std::move(ranked);
  if (report.results.empty()) {
    report.diagnostic = report.unique == 0
                            ? "no valid candidate in the grid (all tuples degenerate)"
                            : "no candidate passed the screen; the mean threshold may be too strict";
  }
  return report;
}

SearchResult local_refine(const TemplateParams& best, std::size_t n, CostKind cost,
                          const SprtConfig& cfg, std::uint64_t seed, double radius,
                          std::size_t points, const SearchOptions& options) {
  if (!(radius >= 0.0) || points == 0) {
    throw Error(ErrorCode::InvalidConfig, "refinement needs radius >= 0 and points >= 1");
  }
  GridSpec spec;
  std::vector<double> v;
  if (const auto* a = std::get_if<TemplateParamsA>(&best)) {
    spec.family = TemplateFamily::A;
    v = {a->a, a->b, a->c, a->d, a->e, a->f};
  } else {
    const auto& b = std::get<TemplateParamsB>(best);
    spec.family = TemplateFamily::B;
    spec.exponent_floor = b.exponent_floor;
    v = {b.a, b.b, b.c, b.d};
  }
  const auto names = axis_names(spec.family);
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == integer_axis(spec.family)) {
      spec.axes.push_back(Axis{names[k], v[k], v[k], 1, true});
    } else if (radius == 0.0 || points == 1) {
      spec.axes.push_back(Axis::linear(names[k], v[k], v[k], 1));
    } else {
      spec.axes.push_back(Axis::linear(names[k], v[k] - radius, v[k] + radius, points));
    }
  }

  const GapSequence input_seq = generate(best, n);
  SearchResult input{best, canonical_key(input_seq), input_seq.size(),
                     evaluate(input_seq, n, options.full_trials, cost, seed, options.streams), 1};

  SearchOptions inner = options;
  inner.top_k = 1;
  const SearchReport report = grid_search(spec, n, cost, cfg, seed, inner);
  if (!report.results.empty() && ranks_before(report.results.front(), input)) {
    SearchResult refined = report.results.front();
    refined.rank = 1;
    return refined;
  }
  return input;
}

std::string describe(const TemplateParams& params) {
  if (const auto* a = std::get_if<TemplateParamsA>(&params)) {
    std::string out = "template-a:<";
    for (double x : {a->a, a->b, a->c, a->d, a->e, a->f}) {
      if (out.back() != '<') out += ',';
      out += detail::shortest(x);
    }
    return out + ">";
  }
  const auto& b = std::get<TemplateParamsB>(params);
  std::string out = "template-b:<";
  for (double x : {b.a, b.b, b.c, b.d}) {
    if (out.back() != '<') out += ',';
    out += detail::shortest(x);
  }
  if (b.exponent_floor) out += ",floor";
  return out + ">";
}

std::string results_csv(const std::vector<SearchResult>& results) {
  std::string out = "rank,family,a,b,c,d,e,f,gap_prefix,mean,sd,trials\n";
  for (const SearchResult& r : results) {
    std::vector<std::string> cells(6);
    std::string family;
    if (const auto* a = std::get_if<TemplateParamsA>(&r.params)) {
      family = "A";
      const double v[] = {a->a, a->b, a->c, a->d, a->e, a->f};
      for (std::size_t k = 0; k < 6; ++k) cells[k] = detail::shortest(v[k]);
    } else {
      const auto& b = std::get<TemplateParamsB>(r.params);
      family = b.exponent_floor ? "B-floor" : "B";
      const double v[] = {b.a, b.b, b.c, b.d};
      for (std::size_t k = 0; k < 4; ++k) cells[k] = detail::shortest(v[k]);
    }
    // First eight gaps, space separated so the field needs no quoting.
    std::string prefix;
    std::size_t taken = 0;
    for (std::string_view key = r.key; !key.empty() && taken < 8; ++taken) {
      const auto comma = key.find(',');
      if (!prefix.empty()) prefix += ' ';
      prefix += key.substr(0, comma);
      key = comma == std::string_view::npos ? std::string_view{} : key.substr(comma + 1);
    }
    out += std::to_string(r.rank) + ',' + family;
    for (const auto& cell : cells) out += ',' + cell;
    out += ',' + prefix + ',' + detail::fixed(r.stats.mean, 3) + ',' +
           detail::fixed(r.stats.sd, 3) + ',' + std::to_string(r.stats.trials) + '\n';
  }
  return out;
}

}  // namespace shellgap
