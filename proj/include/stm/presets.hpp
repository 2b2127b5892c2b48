#pragma once

// Named groups and textual group/representation specifications.
//
// Group expressions: factors joined by 'x', e.g. "A5", "C2xD3", "D6xA1xT1",
// optionally suffixed "sc" (default) or "ad". Weights are written in
// ambient coordinates: fundamental-weight coordinates of the semisimple
// factors followed by the central torus coordinates.

#include <cctype>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "stm/error.hpp"
#include "stm/lattice.hpp"
#include "stm/root_datum.hpp"
#include "stm/weights.hpp"

namespace stm {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline Int parse_int(const std::string& s) {
  const std::string t = trim(s);
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    throw InputError("not an integer: '" + t + "'");
  }
  if (pos != t.size()) throw InputError("not an integer: '" + t + "'");
  return static_cast<Int>(v);
}

inline Rational parse_rational(const std::string& s) {
  const auto parts = split(s, '/');
  if (parts.size() == 1) return Rational(parse_int(parts[0]));
  if (parts.size() == 2) {
    const Int den = parse_int(parts[1]);
    if (den == 0) throw InputError("zero denominator in '" + s + "'");
    return Rational(parse_int(parts[0]), den);
  }
  throw InputError("not a rational number: '" + s + "'");
}

inline IntVec parse_int_vec(const std::string& s) {
  IntVec out;
  if (trim(s).empty()) return out;
  for (const auto& p : split(s, ',')) out.push_back(parse_int(p));
  return out;
}

inline RatVec parse_rat_vec(const std::string& s) {
  RatVec out;
  if (trim(s).empty()) return out;
  for (const auto& p : split(s, ',')) out.push_back(parse_rational(p));
  return out;
}

/// "A5xT1" -> factors {A5}, torus 1.
inline void parse_factors(const std::string& expr, DatumSpec& spec) {
  static const std::regex token(R"(([A-G])(\d+))");
  for (const auto& part : split(expr, 'x')) {
    std::smatch m;
    if (part.empty() || !std::regex_match(part, m, token)) throw InputError("cannot parse group factor '" + part + "'");
    spec.factors.push_back({m[1].str()[0], static_cast<int>(parse_int(m[2]))});
  }
}

inline DatumSpec parse_group_expression(std::string expr) {
  DatumSpec spec;
  expr = trim(expr);
  if (expr.size() > 2 && expr.substr(expr.size() - 2) == "ad") {
    spec.lattice = LatticeChoice::kAdjoint;
    expr.resize(expr.size() - 2);
  } else if (expr.size() > 2 && expr.substr(expr.size() - 2) == "sc") {
    expr.resize(expr.size() - 2);
  }
  std::vector<std::string> semisimple;
  for (const auto& part : split(expr, 'x')) {
    if (part.size() > 1 && part[0] == 'T') {
      spec.torus_rank += static_cast<int>(parse_int(part.substr(1)));
    } else {
      semisimple.push_back(part);
    }
  }
  std::string joined;
  for (std::size_t i = 0; i < semisimple.size(); ++i) joined += (i ? "x" : "") + semisimple[i];
  if (!joined.empty()) parse_factors(joined, spec);
  return spec;
}

struct Preset {
  std::string name;
  std::string description;
};

inline const std::vector<Preset>& preset_list() {
  static const std::vector<Preset> list{
      {"A1sc", "SL2"},
      {"A1ad", "PGL2"},
      {"E7sc", "simply connected E7 (alpha7 attached to alpha3)"},
      {"D6sc", "Spin12"},
      {"GL2", "GL2 with alpha = alpha^vee = (1,-1)"},
      {"SL6modZ3", "SL6/(Z/3)"},
      {"SL4xSL2modZ4", "SL4 x SL2 / (Z/4), Z/4 generated by (i, -1)"},
      {"Spin12xSL2modZ2", "Spin12 x SL2 / (Z/2), the Z/2 acting by -1 on vector x std"},
      {"Spin10xSL2modZ4", "the Levi of E7sc with node 5 deleted (D5 x A1 x T1)"},
  };
  return list;
}

inline RatVec ambient(std::initializer_list<Int> v) { return RatVec(v.begin(), v.end()); }

inline RootDatum build_preset(const std::string& name) {
  auto generated = [](std::vector<Factor> f, std::vector<RatVec> gens, const std::string& label) {
    DatumSpec s;
    s.factors = std::move(f);
    s.lattice = LatticeChoice::kGenerated;
    s.generators = std::move(gens);
    s.label = label;
    return build_root_datum(s);
  };
  if (name == "GL2") return RootDatum::from_explicit(2, {{1, -1}}, {{1, -1}}, "GL2");
  if (name == "SL6modZ3") return generated({{'A', 5}}, {ambient({0, 0, 1, 0, 0})}, "SL6/(Z/3)");
  if (name == "SL4xSL2modZ4") return generated({{'A', 3}, {'A', 1}}, {ambient({0, 1, 0, 1})}, "SL4 x SL2/(Z/4)");
  if (name == "Spin12xSL2modZ2") {
    return generated({{'D', 6}, {'A', 1}}, {ambient({1, 0, 0, 0, 0, 0, 1}), ambient({0, 0, 0, 0, 1, 0, 0})}, "Spin12 x SL2/(Z/2)");
  }
  if (name == "Spin10xSL2modZ4") {
    DatumSpec e7;
    e7.factors = {{'E', 7}};
    e7.label = "E7 simply connected";
    return build_root_datum(e7).levi_without({5});
  }
  const std::map<std::string, std::pair<std::string, std::string>> simple{
      {"A1sc", {"A1", "SL2"}}, {"A1ad", {"A1ad", "PGL2"}}, {"E7sc", {"E7", "E7 simply connected"}}, {"D6sc", {"D6", "Spin12"}}};
  if (auto it = simple.find(name); it != simple.end()) {
    DatumSpec s = parse_group_expression(it->second.first);
    s.label = it->second.second;
    return build_root_datum(s);
  }
  throw InputError("unknown preset '" + name + "'");
}

inline bool is_preset(const std::string& name) {
  for (const auto& p : preset_list()) {
    if (p.name == name) return true;
  }
  return false;
}

/// A preset name or a group expression.
inline RootDatum resolve_group(const std::string& text) {
  if (is_preset(text)) return build_preset(text);
  return build_root_datum(parse_group_expression(text));
}

/// Highest weight in ambient coordinates, converted to the lattice.
inline Weight weight_from_ambient(const RootDatum& d, const std::string& coords) {
  return d.from_ambient(parse_rat_vec(coords));
}

/// First fundamental-type weight (ambient unit vector) whose irreducible has dimension dim.
inline Weight fundamental_of_dim(const RootDatum& d, const BigInt& dim) {
  for (std::size_t i = 0; i < d.rank(); ++i) {
    RatVec e(d.rank(), Rational(0));
    e[i] = 1;
    Weight w;
    try {
      w = d.from_ambient(e);
    } catch (const InputError&) {
      continue;
    }
    if (!d.is_dominant(w)) continue;
    if (irreducible_dimension(d, w) == dim) return w;
  }
  throw InputError("no fundamental weight of " + d.label() + " has an irreducible of dimension " + dim.str());
}

/// Parses "a,b,c" or "a,b,c * m" into (weight, multiplicity).
inline std::pair<Weight, BigInt> parse_highest_weight(const RootDatum& d, const std::string& text) {
  const auto parts = split(text, '*');
  if (parts.size() > 2) throw InputError("malformed highest weight '" + text + "'");
  const BigInt mult = parts.size() == 2 ? BigInt(parse_int(parts[1])) : BigInt(1);
  if (mult <= 0) throw InputError("multiplicity must be positive in '" + text + "'");
  const Weight w = weight_from_ambient(d, parts[0]);
  require_dominant(d, w);
  return {w, mult};
}

/// "fundamental:<dim>", "omega:<i>" (1-based), or "hw:<coords>[*m]".
inline std::pair<Weight, BigInt> parse_rep_token(const RootDatum& d, const std::string& token) {
  const auto colon = token.find(':');
  if (colon == std::string::npos) throw InputError("representation must look like kind:value, got '" + token + "'");
  const std::string kind = trim(token.substr(0, colon));
  const std::string value = trim(token.substr(colon + 1));
  if (kind == "fundamental") return {fundamental_of_dim(d, BigInt(parse_int(value))), 1};
  if (kind == "omega") {
    const Int i = parse_int(value);
    if (i < 1 || static_cast<std::size_t>(i) > d.rank()) throw InputError("omega index out of range");
    RatVec e(d.rank(), Rational(0));
    e[static_cast<std::size_t>(i - 1)] = 1;
    const Weight w = d.from_ambient(e);
    require_dominant(d, w);
    return {w, 1};
  }
  if (kind == "hw") return parse_highest_weight(d, value);
  throw InputError("unknown representation kind '" + kind + "'");
}

}  // namespace stm
