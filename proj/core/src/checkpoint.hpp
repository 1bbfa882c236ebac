#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "shellgap/grid_optimizer.hpp"

namespace shellgap::detail {

/// Resumable grid-search progress.
struct SearchCheckpoint {
  nlohmann::json identity;  // spec, n, cost, seed, screen and trial settings
  std::uint64_t unique = 0;
  std::uint64_t processed = 0;
  std::uint64_t rejected = 0;
  std::uint64_t screening_trials = 0;
  std::vector<SearchResult> accepted;
};

nlohmann::json to_json(const GridSpec& spec);
nlohmann::json to_json(const TemplateParams& params);
TemplateParams params_from_json(const nlohmann::json& j);

/// Returns nullopt when the file does not exist. Throws Error(InvalidConfig)
/// when it exists but belongs to a different search, Error(Io) when it cannot
/// be parsed.
std::optional<SearchCheckpoint> load_checkpoint(const std::string& path,
                                                const nlohmann::json& identity);

/// Written to a temporary file and renamed over `path`.
void save_checkpoint(const std::string& path, const SearchCheckpoint& state);

}  // namespace shellgap::detail
