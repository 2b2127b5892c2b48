#pragma once

// Line-oriented configuration: "[section]" headers, "key = value" lines,
// '#' or ';' comments. Sections and keys may repeat; order is preserved.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stm/error.hpp"
#include "stm/presets.hpp"

namespace stm {

struct ConfigSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  std::vector<std::string> all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries) {
      if (k == key) out.push_back(v);
    }
    return out;
  }

  /// Last value for key, if any.
  std::optional<std::string> get(const std::string& key) const {
    std::optional<std::string> out;
    for (const auto& [k, v] : entries) {
      if (k == key) out = v;
    }
    return out;
  }
};

struct Config {
  std::vector<ConfigSection> sections;

  std::vector<const ConfigSection*> named(const std::string& name) const {
    std::vector<const ConfigSection*> out;
    for (const auto& s : sections) {
      if (s.name == name) out.push_back(&s);
    }
    return out;
  }

  std::optional<std::string> get(const std::string& section, const std::string& key) const {
    std::optional<std::string> out;
    for (const auto* s : named(section)) {
      if (auto v = s->get(key)) out = v;
    }
    return out;
  }

  std::vector<std::string> all(const std::string& section, const std::string& key) const {
    std::vector<std::string> out;
    for (const auto* s : named(section)) {
      for (auto& v : s->all(key)) out.push_back(std::move(v));
    }
    return out;
  }
};

inline Config parse_config(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw InputError("config line " + std::to_string(lineno) + ": malformed section header");
      cfg.sections.push_back({trim(line.substr(1, line.size() - 2)), {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
    if (cfg.sections.empty()) throw InputError("config line " + std::to_string(lineno) + ": entry outside any section");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw InputError("config line " + std::to_string(lineno) + ": empty key");
    cfg.sections.back().entries.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return cfg;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// Builds the datum described by the [group] and [factor] sections, or
/// nullopt when the config names no group.
///
/// [group] keys: preset, expr, factor (e.g. A5, repeatable), torus,
/// lattice (sc | ad | generated), generator (ambient row, repeatable), label,
/// and for an explicit datum lattice_rank, simple_root, simple_coroot.
/// [factor] sections: family, rank.
inline std::optional<RootDatum> datum_from_config(const Config& cfg) {
  if (cfg.named("group").empty() && cfg.named("factor").empty()) return std::nullopt;
  if (auto p = cfg.get("group", "preset")) return build_preset(*p);
  const auto label = cfg.get("group", "label");
  if (auto r = cfg.get("group", "lattice_rank")) {
    IntMat roots, coroots;
    for (const auto& v : cfg.all("group", "simple_root")) roots.push_back(parse_int_vec(v));
    for (const auto& v : cfg.all("group", "simple_coroot")) coroots.push_back(parse_int_vec(v));
    const Int rank = parse_int(*r);
    if (rank < 1) throw InputError("lattice_rank must be positive");
    return RootDatum::from_explicit(static_cast<std::size_t>(rank), roots, coroots, label.value_or("explicit datum"));
  }
  DatumSpec spec;
  if (auto e = cfg.get("group", "expr")) spec = parse_group_expression(*e);
  for (const auto& f : cfg.all("group", "factor")) parse_factors(f, spec);
  for (const auto* s : cfg.named("factor")) {
    const auto fam = s->get("family");
    const auto rank = s->get("rank");
    if (!fam || !rank || fam->size() != 1) throw InputError("[factor] needs a one-letter family and a rank");
    parse_factors(*fam + trim(*rank), spec);
  }
  if (auto t = cfg.get("group", "torus")) spec.torus_rank += static_cast<int>(parse_int(*t));
  if (auto l = cfg.get("group", "lattice")) {
    if (*l == "sc") spec.lattice = LatticeChoice::kSimplyConnected;
    else if (*l == "ad") spec.lattice = LatticeChoice::kAdjoint;
    else if (*l == "generated") spec.lattice = LatticeChoice::kGenerated;
    else throw InputError("lattice must be sc, ad or generated");
  }
  for (const auto& g : cfg.all("group", "generator")) spec.generators.push_back(parse_rat_vec(g));
  if (!spec.generators.empty()) spec.lattice = LatticeChoice::kGenerated;
  if (label) spec.label = *label;
  return build_root_datum(spec);
}

}  // namespace stm
