#include "floodrisk/app/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>

#include "floodrisk/ahp.hpp"

namespace floodrisk::app {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::config, "config key '" + key + "': cannot parse '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<int> RunConfig::selected_projects() const {
  if (!projects.empty()) return projects;
  std::vector<int> all(kProjectCount);
  std::iota(all.begin(), all.end(), 1);
  return all;
}

void RunConfig::validate() const {
  if (!(threshold_ha > 0.0)) {
    throw Error(ErrorKind::config, "threshold_ha must be positive, got " + std::to_string(threshold_ha));
  }
  if (variants.empty()) throw Error(ErrorKind::config, "no model variants selected");
  for (int p : projects) {
    if (p < 1 || p > static_cast<int>(kProjectCount)) {
      throw Error(ErrorKind::config, "project number out of range: " + std::to_string(p));
    }
  }
}

ConfigEntries parse_config_text(const std::string& text) {
  ConfigEntries entries;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::config, "config line " + std::to_string(number) + " has no '='");
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    if (key.empty()) throw Error(ErrorKind::config, "config line " + std::to_string(number) + " has no key");
    entries[key] = trim(line.substr(eq + 1));
  }
  return entries;
}

void apply_config(RunConfig& config, const ConfigEntries& entries, const std::filesystem::path& base_dir) {
  auto resolve = [&](const std::string& value) {
    std::filesystem::path p(value);
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  for (const auto& [key, value] : entries) {
    if (key == "dem") config.dem = resolve(value);
    else if (key == "landuse") config.landuse = resolve(value);
    else if (key == "hydrolith") config.hydrolith = resolve(value);
    else if (key == "truth") config.truth = resolve(value);
    else if (key == "permanent_water") config.permanent_water = resolve(value);
    else if (key == "out") config.out = resolve(value);
    else if (key == "threshold_ha") config.threshold_ha = parse_number<double>(key, value);
    else if (key == "seed") config.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "threads") config.threads = parse_number<unsigned>(key, value);
    else if (key == "projects") config.projects = parse_project_list(value);
    else if (key == "variants") config.variants = parse_variant_list(value);
    else throw Error(ErrorKind::config, "unknown config key '" + key + "'");
  }
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "cannot open config file '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  RunConfig config;
  apply_config(config, parse_config_text(text), path.parent_path());
  return config;
}

std::vector<int> parse_project_list(const std::string& text) {
  const std::string t = lower(trim(text));
  if (t == "all") return {};
  std::vector<int> out;
  for (const auto& part : split(t, ',')) {
    if (part.empty()) continue;
    if (auto dash = part.find('-'); dash != std::string::npos && dash > 0) {
      const int lo = parse_number<int>("projects", trim(part.substr(0, dash)));
      const int hi = parse_number<int>("projects", trim(part.substr(dash + 1)));
      if (hi < lo) throw Error(ErrorKind::config, "descending project range '" + part + "'");
      for (int p = lo; p <= hi; ++p) out.push_back(p);
    } else {
      out.push_back(parse_number<int>("projects", part));
    }
  }
  for (int p : out) {
    if (p < 1 || p > static_cast<int>(kProjectCount)) {
      throw Error(ErrorKind::config, "project number out of range: " + std::to_string(p));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw Error(ErrorKind::config, "empty project list");
  return out;
}

std::vector<ModelVariant> parse_variant_list(const std::string& text) {
  const std::string t = lower(trim(text));
  if (t == "all") return {kModelVariants.begin(), kModelVariants.end()};
  std::vector<ModelVariant> out;
  for (const auto& part : split(t, ',')) {
    if (part.empty()) continue;
    bool found = false;
    for (ModelVariant v : kModelVariants) {
      if (lower(std::string(variant_name(v))) == part) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        found = true;
      }
    }
    if (!found) throw Error(ErrorKind::config, "unknown model variant '" + part + "'");
  }
  if (out.empty()) throw Error(ErrorKind::config, "empty variant list");
  // Keep the canonical variant order regardless of how they were listed.
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace floodrisk::app
