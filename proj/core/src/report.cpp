#include <algorithm>
#include <map>

#include "format.hpp"
#include "json.hpp"
#include "shellgap/error.hpp"
#include "shellgap/experiment.hpp"

namespace shellgap {
namespace {

int digits_for(CostKind cost) { return cost == CostKind::Time ? 6 : 3; }

}  // namespace

std::string format_csv(const std::vector<ReportRow>& rows, std::uint64_t seed) {
  std::string out = "sequence,n,cost,mean,sd,trials,seed\n";
  for (const ReportRow& row : rows) {
    for (const auto& [cost, summary] : row.costs) {
      out += row.sequence + ',' + std::to_string(row.n) + ',' + std::string(to_string(cost)) + ',' +
             detail::fixed(summary.mean, digits_for(cost)) + ',' +
             detail::fixed(summary.sd, digits_for(cost)) + ',' + std::to_string(row.trials) + ',' +
             std::to_string(seed) + '\n';
    }
  }
  return out;
}

std::string format_markdown(const std::vector<ReportRow>& rows) {
  std::vector<CostKind> costs;
  for (const ReportRow& row : rows) {
    for (const auto& entry : row.costs) {
      if (std::find(costs.begin(), costs.end(), entry.first) == costs.end()) {
        costs.push_back(entry.first);
      }
    }
  }
  std::sort(costs.begin(), costs.end());
  std::string out = "| sequence | n |";
  std::string rule = "|---|---:|";
  for (CostKind c : costs) {
    out += ' ' + std::string(to_string(c)) + " |";
    rule += "---:|";
  }
  out += "\n" + rule + "\n";
  for (const ReportRow& row : rows) {
    out += "| " + row.sequence + " | " + std::to_string(row.n) + " |";
    for (CostKind c : costs) {
      const auto it = row.costs.find(c);
      if (it == row.costs.end()) {
        out += " |";
        continue;
      }
      const int digits = c == CostKind::Time ? 3 : 0;
      out += ' ' + detail::fixed(it->second.mean, digits) + " ± " +
             detail::fixed(it->second.sd, digits) + " |";
    }
    out += '\n';
  }
  return out;
}

std::string format_json(const std::vector<ReportRow>& rows, std::uint64_t seed) {
  nlohmann::ordered_json out = {{"seed", seed}, {"rows", nlohmann::ordered_json::array()}};
  for (const ReportRow& row : rows) {
    nlohmann::ordered_json costs = nlohmann::ordered_json::object();
    for (const auto& [cost, summary] : row.costs) {
      costs[std::string(to_string(cost))] = {{"mean", summary.mean}, {"sd", summary.sd}};
    }
    out["rows"].push_back(
        {{"sequence", row.sequence}, {"n", row.n}, {"trials", row.trials}, {"costs", costs}});
  }
  return out.dump(2) + "\n";
}

std::string format_rows(const std::vector<ReportRow>& rows, OutputFormat format,
                        std::uint64_t seed) {
  switch (format) {
    case OutputFormat::Csv: return format_csv(rows, seed);
    case OutputFormat::Markdown: return format_markdown(rows);
    case OutputFormat::Json: return format_json(rows, seed);
  }
  return {};
}

std::string emit_plot_data(const std::vector<ReportRow>& rows, const std::string& baseline) {
  std::map<std::size_t, const ReportRow*> base;
  for (const ReportRow& row : rows) {
    if (row.sequence == baseline) base[row.n] = &row;
  }
  std::string out = "sequence,n,cost,baseline,difference\n";
  for (const ReportRow& row : rows) {
    const auto it = base.find(row.n);
    if (it == base.end()) {
      throw Error(ErrorCode::InvalidConfig,
                  "baseline " + baseline + " has no row at n=" + std::to_string(row.n));
    }
    for (const auto& [cost, summary] : row.costs) {
      const auto b = it->second->costs.find(cost);
      if (b == it->second->costs.end()) continue;
      out += row.sequence + ',' + std::to_string(row.n) + ',' + std::string(to_string(cost)) + ',' +
             baseline + ',' + detail::fixed(summary.mean - b->second.mean, digits_for(cost)) + '\n';
    }
  }
  return out;
}

}  // namespace shellgap
