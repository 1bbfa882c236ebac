#include "checkpoint.hpp"

#include <filesystem>
#include <fstream>

#include "shellgap/error.hpp"

namespace shellgap::detail {

using nlohmann::json;

json to_json(const GridSpec& spec) {
  json axes = json::array();
  for (const Axis& a : spec.axes) {
    axes.push_back({{"name", a.name},
                    {"lower", a.lower},
                    {"upper", a.upper},
                    {"points", a.points},
                    {"integer", a.integer}});
  }
  return {{"family", spec.family == TemplateFamily::A ? "A" : "B"},
          {"exponent_floor", spec.exponent_floor},
          {"axes", axes}};
}

json to_json(const TemplateParams& params) {
  if (const auto* a = std::get_if<TemplateParamsA>(&params)) {
    return {{"family", "A"}, {"values", {a->a, a->b, a->c, a->d, a->e, a->f}}};
  }
  const auto& b = std::get<TemplateParamsB>(params);
  return {{"family", "B"},
          {"values", {b.a, b.b, b.c, b.d}},
          {"exponent_floor", b.exponent_floor}};
}

TemplateParams params_from_json(const json& j) {
  const auto v = j.at("values").get<std::vector<double>>();
  if (j.at("family") == "A" && v.size() == 6) {
    return TemplateParamsA{v[0], v[1], v[2], v[3], v[4], v[5]};
  }
  if (j.at("family") == "B" && v.size() == 4) {
    return TemplateParamsB{v[0], v[1], v[2], v[3], j.value("exponent_floor", false)};
  }
  throw Error(ErrorCode::InvalidConfig, "malformed parameter tuple in checkpoint");
}

std::optional<SearchCheckpoint> load_checkpoint(const std::string& path, const json& identity) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, "cannot parse checkpoint " + path + ": " + e.what());
  }
  if (j.value("identity", json()) != identity) {
    throw Error(ErrorCode::InvalidConfig,
                "checkpoint " + path + " was written by a different search; remove it to start over");
  }
  SearchCheckpoint state;
  try {
    state.identity = identity;
    state.unique = j.at("unique").get<std::uint64_t>();
    state.processed = j.at("processed").get<std::uint64_t>();
    state.rejected = j.at("rejected").get<std::uint64_t>();
    state.screening_trials = j.at("screening_trials").get<std::uint64_t>();
    for (const json& r : j.at("accepted")) {
      SearchResult res;
      res.params = params_from_json(r.at("params"));
      res.key = r.at("key").get<std::string>();
      res.gap_count = r.at("gap_count").get<std::size_t>();
      res.stats.mean = r.at("mean").get<double>();
      res.stats.sd = r.at("sd").get<double>();
      res.stats.trials = r.at("trials").get<std::size_t>();
      res.stats.cost_kind = parse_cost_kind(r.at("cost").get<std::string>());
      state.accepted.push_back(std::move(res));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, "malformed checkpoint " + path + ": " + e.what());
  }
  return state;
}

void save_checkpoint(const std::string& path, const SearchCheckpoint& state) {
  json accepted = json::array();
  for (const SearchResult& r : state.accepted) {
    accepted.push_back({{"params", to_json(r.params)},
                        {"key", r.key},
                        {"gap_count", r.gap_count},
                        {"mean", r.stats.mean},
                        {"sd", r.stats.sd},
                        {"trials", r.stats.trials},
                        {"cost", std::string(to_string(r.stats.cost_kind))}});
  }
  const json j = {{"identity", state.identity},
                  {"unique", state.unique},
                  {"processed", state.processed},
                  {"rejected", state.rejected},
                  {"screening_trials", state.screening_trials},
                  {"accepted", accepted}};
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write checkpoint " + tmp);
    out << j.dump(1) << '\n';
    if (!out) throw Error(ErrorCode::Io, "cannot write checkpoint " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot replace checkpoint " + path + ": " + ec.message());
}

}  // namespace shellgap::detail
