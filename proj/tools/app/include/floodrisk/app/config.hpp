#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floodrisk/risk.hpp"
#include "floodrisk/terrain.hpp"

namespace floodrisk::app {

/// Everything a pipeline run needs. Built from a key = value config file,
/// then overridden by command-line flags.
struct RunConfig {
  std::filesystem::path dem;
  std::filesystem::path landuse;
  std::filesystem::path hydrolith;
  std::optional<std::filesystem::path> truth;
  std::optional<std::filesystem::path> permanent_water;
  double threshold_ha = kDefaultStreamThresholdHa;
  std::vector<ModelVariant> variants{kModelVariants.begin(), kModelVariants.end()};
  std::vector<int> projects;  // empty = all 48
  std::filesystem::path out = "out";
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0 = hardware concurrency

  std::vector<int> selected_projects() const;

  /// Throws Error{config} when an invariant does not hold.
  void validate() const;
};

/// Raw key/value pairs in file order; later duplicates win.
using ConfigEntries = std::map<std::string, std::string>;

/// Parses `key = value` lines; `#` starts a comment. Throws Error{config}
/// on lines without '='.
ConfigEntries parse_config_text(const std::string& text);

/// Applies entries to `config`. Relative paths resolve against `base_dir`.
/// Unknown keys throw Error{config}.
void apply_config(RunConfig& config, const ConfigEntries& entries,
                  const std::filesystem::path& base_dir = {});

RunConfig load_config_file(const std::filesystem::path& path);

/// "all" or a comma list with ranges, e.g. "1,5-8,48".
std::vector<int> parse_project_list(const std::string& text);

/// "all" or a comma list of variant names (case-insensitive).
std::vector<ModelVariant> parse_variant_list(const std::string& text);

}  // namespace floodrisk::app
