#include "rctsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "rctsim/error.hpp"

namespace rctsim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Parser {
  std::size_t line = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ConfigParse, "line " + std::to_string(line) + ": " + what);
  }

  template <typename Int>
  Int integer(std::string_view key, std::string_view value) const {
    Int out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
      fail("field '" + std::string(key) + "': expected a non-negative integer, got '" +
           std::string(value) + "'");
    }
    return out;
  }

  double real(std::string_view key, std::string_view value) const {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
      fail("field '" + std::string(key) + "': expected a number, got '" + std::string(value) +
           "'");
    }
    return out;
  }

  bool boolean(std::string_view key, std::string_view value) const {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail("field '" + std::string(key) + "': expected true or false");
  }

  std::vector<std::string_view> list(std::string_view key, std::string_view value) const {
    std::vector<std::string_view> items;
    while (true) {
      const auto comma = value.find(',');
      const auto item = trim(value.substr(0, comma));
      if (item.empty()) fail("field '" + std::string(key) + "': empty list item");
      items.push_back(item);
      if (comma == std::string_view::npos) break;
      value.remove_prefix(comma + 1);
    }
    return items;
  }
};

bool is_adjusted_ht(std::string_view name) {
  return name == "adj_ht_crossfit" || name == "adj_ht_loo" || name == "adj_ht_full";
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  RunConfig config;
  McConfig& mc = config.mc;
  Parser p;
  std::string section;
  std::set<std::string> seen;
  std::map<std::string, EstimatorConfig> overrides;
  std::optional<std::vector<std::string>> roster_names;

  std::istringstream lines{std::string(text)};
  std::string raw;
  while (std::getline(lines, raw)) {
    ++p.line;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    // trailing comment: '#' after whitespace
    for (std::size_t k = 1; k < line.size(); ++k) {
      if (line[k] == '#' && (line[k - 1] == ' ' || line[k - 1] == '\t')) {
        line = trim(line.substr(0, k));
        break;
      }
    }

    if (line.front() == '[') {
      if (line.back() != ']') p.fail("unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section == "simulation" || section == "nuisance" || section == "estimators") continue;
      if (section.starts_with("estimator.")) {
        const std::string name = section.substr(10);
        if (!is_canonical_estimator(name)) p.fail("unknown estimator section '" + name + "'");
        if (!is_adjusted_ht(name)) {
          p.fail("estimator '" + name + "' has no configurable settings");
        }
        if (overrides.contains(name)) p.fail("duplicate section '" + section + "'");
        overrides.emplace(name, default_estimator_config(name));
        continue;
      }
      p.fail("unknown section '" + section + "'");
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) p.fail("expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) p.fail("key '" + std::string(key) + "' outside any section");
    const std::string qualified = section + "." + std::string(key);
    if (!seen.insert(qualified).second) p.fail("duplicate key '" + std::string(key) + "'");

    auto& nuisance = mc.context.nuisance;
    if (section == "simulation") {
      if (key == "experiments") {
        mc.experiments.clear();
        for (const auto item : p.list(key, value)) mc.experiments.push_back(p.integer<int>(key, item));
      } else if (key == "n_grid") {
        mc.n_grid.clear();
        for (const auto item : p.list(key, value)) {
          mc.n_grid.push_back(p.integer<std::size_t>(key, item));
        }
      } else if (key == "reps") {
        mc.reps = p.integer<std::size_t>(key, value);
      } else if (key == "seed") {
        mc.master_seed = p.integer<std::uint64_t>(key, value);
      } else if (key == "alpha") {
        mc.context.alpha = p.real(key, value);
      } else if (key == "workers") {
        mc.workers = p.integer<std::size_t>(key, value);
      } else if (key == "out_dir") {
        if (value.empty()) p.fail("field 'out_dir': empty path");
        config.out_dir = std::filesystem::path(std::string(value));
      } else {
        p.fail("unknown key '" + std::string(key) + "' in [simulation]");
      }
    } else if (section == "nuisance") {
      if (key == "forest.n_trees") {
        nuisance.forest.n_trees = p.integer<std::size_t>(key, value);
      } else if (key == "forest.min_node_size") {
        nuisance.forest.min_node_size = p.integer<std::size_t>(key, value);
      } else if (key == "forest.bootstrap") {
        nuisance.forest.bootstrap = p.boolean(key, value);
      } else if (key == "forest.max_depth") {
        nuisance.forest.max_depth = p.integer<std::size_t>(key, value);
      } else if (key == "logistic.tolerance") {
        nuisance.logistic.tolerance = p.real(key, value);
      } else if (key == "logistic.max_iterations") {
        nuisance.logistic.max_iterations = p.integer<std::size_t>(key, value);
      } else if (key == "ps_clip") {
        mc.context.ps_clip = p.real(key, value);
      } else if (key == "delta_override") {
        mc.context.delta_override = p.real(key, value);
      } else {
        p.fail("unknown key '" + std::string(key) + "' in [nuisance]");
      }
    } else if (section == "estimators") {
      if (key != "roster") p.fail("unknown key '" + std::string(key) + "' in [estimators]");
      roster_names.emplace();
      for (const auto item : p.list(key, value)) {
        if (!is_canonical_estimator(item)) {
          p.fail("field 'roster': unknown estimator '" + std::string(item) + "'");
        }
        roster_names->emplace_back(item);
      }
    } else {
      auto& est = overrides.at(section.substr(10));
      if (key == "family") {
        const auto family = parse_model_family(value);
        if (!family) p.fail("field 'family': expected logistic, forest or zero");
        est.family = *family;
      } else if (key == "cao_weighted") {
        est.cao_weighted = p.boolean(key, value);
      } else {
        p.fail("unknown key '" + std::string(key) + "' in [" + section + "]");
      }
    }
  }

  if (roster_names) {
    mc.roster.clear();
    for (const auto& name : *roster_names) mc.roster.push_back(default_estimator_config(name));
  }
  for (auto& est : mc.roster) {
    if (const auto it = overrides.find(est.name); it != overrides.end()) est = it->second;
  }
  for (const auto& [name, est] : overrides) {
    const bool listed = std::any_of(mc.roster.begin(), mc.roster.end(),
                                    [&](const EstimatorConfig& e) { return e.name == name; });
    if (!listed) {
      throw Error(ErrorKind::ConfigParse,
                  "section [estimator." + name + "]: estimator not in roster");
    }
  }
  validate(mc);
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot read config '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_run_config(text);
}

}  // namespace rctsim
