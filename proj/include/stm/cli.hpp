#pragma once

// Command-line front end. run() parses arguments, executes one subcommand and
// returns the exit code together with the rendered report.
//
// Exit codes: 0 all checks pass, 1 a mathematical property failed,
// 2 input error, 3 internal error.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stm/anomaly.hpp"
#include "stm/config.hpp"
#include "stm/endoscopy.hpp"
#include "stm/epsilon.hpp"
#include "stm/error.hpp"
#include "stm/packets.hpp"
#include "stm/presets.hpp"
#include "stm/weights.hpp"

namespace stm::cli {

using nlohmann::json;

struct Outcome {
  int exit_code = 0;
  std::string out;  // report on stdout
  std::string err;  // diagnostics and wall time on stderr
};

inline std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

namespace detail {

/// Values gathered from flags, with the config file filling the gaps.
struct Inputs {
  std::string group;
  std::vector<std::string> reps;
  std::vector<std::string> highest_weights;
  std::string config_path;
  std::string orbit;
  std::string levi_delete;
  bool json = false;
  bool timing = false;
  bool dim_only = false;
  bool show_weights = false;
  bool sweep = false;
  std::uint64_t seed = 0;
  Int max_order = 2;
  int levi_depth = 1;
  int trials = 3;
  int shapes = 1;
  Int a1 = 1, b1 = 1, max_mult = 3, max_dim = 8;
  std::string scenario;
  int s_phi_rank = 2;
  std::int64_t square_classes = 4;
  std::int64_t s_phi_order = 2;
  std::int64_t j_order = 2;
  std::string signs;
  int liftings = 2;
  std::string epsilon_g = "+";
  std::string omega_rest;
};

struct Body {
  json records = json::array();
  std::vector<std::string> lines;
  bool pass = true;
  json extra = json::object();
  std::string plain;  // replaces the whole text report when set
};

inline std::string ambient_string(const RootDatum& d, const Weight& w) { return format_vec(d.to_ambient(w)); }

inline json int_matrix(const IntMat& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

inline std::vector<int> parse_node_list(const std::string& s) {
  std::vector<int> out;
  for (Int x : parse_int_vec(s)) out.push_back(static_cast<int>(x));
  return out;
}

inline int parse_sign(const std::string& s) {
  const std::string t = trim(s);
  if (t == "+" || t == "+1" || t == "1") return 1;
  if (t == "-" || t == "-1") return -1;
  throw InputError("not a sign: '" + t + "' (expected + or -)");
}

inline std::vector<int> parse_signs(const std::string& s) {
  std::vector<int> out;
  if (trim(s).empty()) return out;
  for (const auto& p : split(s, ',')) out.push_back(parse_sign(p));
  return out;
}

inline DatumPtr load_group(const Inputs& in, const Config& cfg) {
  if (!in.group.empty()) return share(resolve_group(in.group));
  if (auto d = datum_from_config(cfg)) return share(std::move(*d));
  throw InputError("no group given (use --group or a [group] config section)");
}

inline RepSpec load_rep(const DatumPtr& d, const Inputs& in, const Config& cfg) {
  std::vector<std::string> reps = in.reps, hws = in.highest_weights;
  if (reps.empty() && hws.empty()) {
    reps = cfg.all("rep", "rep");
    for (const auto& k : {"fundamental", "omega"}) {
      for (const auto& v : cfg.all("rep", k)) reps.push_back(std::string(k) + ":" + v);
    }
    hws = cfg.all("rep", "highest_weight");
  }
  if (reps.empty() && hws.empty()) throw InputError("no representation given (use --rep, --highest-weight or a [rep] config section)");
  std::map<Weight, BigInt> summands;
  for (const auto& t : reps) {
    auto [w, m] = parse_rep_token(*d, t);
    summands[w] += m;
  }
  for (const auto& t : hws) {
    auto [w, m] = parse_highest_weight(*d, t);
    summands[w] += m;
  }
  return RepSpec(d, std::move(summands));
}

inline json summand_records(const RootDatum& d, const std::map<Weight, BigInt>& summands, std::vector<std::string>& lines) {
  json out = json::array();
  for (const auto& [w, m] : summands) {
    const BigInt dim = irreducible_dimension(d, w);
    const std::string duality = to_string(self_duality_type(d, w));
    out.push_back({{"highest_weight", ambient_string(d, w)},
                   {"multiplicity", m.str()},
                   {"dimension", dim.str()},
                   {"duality", duality}});
    lines.push_back("  " + ambient_string(d, w) + " x" + m.str() + "  dim " + dim.str() + "  " + duality);
  }
  return out;
}

inline json certificate_json(const RootDatum& d, const AnomalyCertificate& c) {
  json j{{"anomaly_free", c.verdict}, {"polarization_sum", ambient_string(d, c.sum)}};
  if (c.eta) j["eta"] = ambient_string(d, *c.eta);
  if (c.chi) j["chi"] = ambient_string(d, *c.chi);
  if (c.obstruction) {
    std::string bits;
    for (auto b : c.obstruction->coset) bits += b ? '1' : '0';
    j["obstruction_mod2"] = bits;
  }
  return j;
}

inline Body cmd_roots(const Inputs& in, const Config& cfg) {
  const DatumPtr d = load_group(in, cfg);
  Body b;
  const std::size_t pos = d->positive_roots().size();
  json rec{{"label", d->label()},
           {"type", d->type_string()},
           {"rank", d->rank()},
           {"semisimple_rank", d->semisimple_rank()},
           {"roots", 2 * pos},
           {"positive_roots", pos},
           {"node_ids", d->node_ids()},
           {"simple_roots", int_matrix(d->simple_roots())},
           {"simple_coroots", int_matrix(d->simple_coroots())},
           {"cartan", int_matrix(d->cartan())},
           {"longest_word_length", d->longest_word().size()},
           {"invariant_characters", int_matrix(d->invariant_characters().basis())}};
  json amb = json::array();
  for (const auto& row : d->ambient_basis()) amb.push_back(format_vec(row));
  rec["ambient_basis"] = amb;
  b.lines.push_back(d->label() + ": type " + d->type_string() + ", rank " + std::to_string(d->rank()) + ", " +
                    std::to_string(2 * pos) + " roots");
  b.lines.push_back("  Weyl group longest element length " + std::to_string(d->longest_word().size()));
  b.lines.push_back("  invariant character lattice rank " + std::to_string(d->invariant_characters().rank()));
  if (!in.orbit.empty()) {
    const Weight w = weight_from_ambient(*d, in.orbit);
    const auto orbit = d->weyl_orbit(w);
    const Weight dom = d->dominant_representative(w);
    rec["orbit"] = {{"weight", ambient_string(*d, w)}, {"size", orbit.size()}, {"dominant", ambient_string(*d, dom)},
                    {"dual", ambient_string(*d, d->dual_involution(dom))}};
    b.lines.push_back("  orbit of " + ambient_string(*d, w) + ": " + std::to_string(orbit.size()) + " weights, dominant " +
                      ambient_string(*d, dom));
  }
  if (!in.levi_delete.empty()) {
    const RootDatum l = d->levi_without(parse_node_list(in.levi_delete));
    rec["levi"] = {{"deleted", parse_node_list(in.levi_delete)}, {"type", l.type_string()}};
    b.lines.push_back("  Levi without nodes " + in.levi_delete + ": " + l.type_string());
  }
  b.records.push_back(rec);
  return b;
}

inline Body cmd_rep(const Inputs& in, const Config& cfg) {
  const DatumPtr d = load_group(in, cfg);
  const RepSpec r = load_rep(d, in, cfg);
  Body b;
  const BigInt dim = dimension(r);
  if (in.dim_only) b.plain = dim.str() + "\n";
  b.lines.push_back(d->label() + " representation of dimension " + dim.str());
  json rec{{"group", d->label()}, {"dimension", dim.str()}, {"summands", summand_records(*d, r.summands, b.lines)}};
  if (in.show_weights) {
    json ws = json::array();
    const WeightMultiset all = weight_multiset(r);
    for (const auto& [w, m] : all.entries()) {
      ws.push_back({{"weight", ambient_string(*d, w)}, {"multiplicity", m.str()}});
      b.lines.push_back("  weight " + ambient_string(*d, w) + " x" + m.str());
    }
    rec["weights"] = ws;
  }
  if (!in.levi_delete.empty()) {
    const auto deleted = parse_node_list(in.levi_delete);
    const RepSpec res = restrict_to_levi_without(r, deleted);
    b.lines.push_back("restriction to the Levi " + res.datum->type_string() + " (nodes " + in.levi_delete + " deleted):");
    rec["levi"] = {{"deleted", deleted},
                   {"type", res.datum->type_string()},
                   {"summands", summand_records(*res.datum, res.summands, b.lines)}};
  }
  b.records.push_back(rec);
  return b;
}

inline Body cmd_anomaly(const Inputs& in, const Config& cfg) {
  const DatumPtr d = load_group(in, cfg);
  const RepSpec r = load_rep(d, in, cfg);
  Body b;
  const BigInt dim = dimension(r);
  b.lines.push_back(d->label() + " representation of dimension " + dim.str() + ":");
  json rec{{"group", d->label()}, {"dimension", dim.str()}, {"summands", summand_records(*d, r.summands, b.lines)}};
  try {
    const AnomalyCertificate c = is_anomaly_free(r);
    rec["certificate"] = certificate_json(*d, c);
    b.pass = c.verdict;
    b.lines.push_back("polarization sum " + ambient_string(*d, c.sum));
    if (c.verdict) {
      b.lines.push_back("certificate: sum = 2 chi + eta with chi = " + ambient_string(*d, *c.chi) + ", eta = " +
                        ambient_string(*d, *c.eta));
    } else {
      b.lines.push_back("not anomaly free: the polarization class is not the reduction of an invariant character");
    }
  } catch (const NoPolarization& e) {
    b.pass = false;
    rec["certificate"] = {{"anomaly_free", false}, {"reason", e.what()}};
    b.lines.push_back(e.what());
  }
  rec["eta_convention"] = "lexicographically smallest 0/1 coefficients on the Hermite basis of the invariant characters";
  b.records.push_back(rec);
  return b;
}

inline Body cmd_scan(const Inputs& in, const Config& cfg) {
  const DatumPtr d = load_group(in, cfg);
  const RepSpec r = load_rep(d, in, cfg);
  const ScanReport rep = endoscopic_anomaly_scan(r, in.max_order, in.levi_depth);
  Body b;
  std::size_t fails = 0, errors = 0;
  for (const auto& rec : rep.records) {
    const RootDatum levi = rec.context.empty() ? *d : d->levi_without(rec.context);
    json j{{"context", rec.context},
           {"context_type", rec.context_type},
           {"q", rec.s.to_string()},
           {"order", rec.s.order},
           {"centralizer_type", rec.centralizer_type},
           {"eigenspace_dim", rec.eigenspace_dim.str()},
           {"status", to_string(rec.status)}};
    if (rec.certificate) j["certificate"] = certificate_json(levi, *rec.certificate);
    if (!rec.message.empty()) j["message"] = rec.message;
    b.records.push_back(j);
    std::string ctx = "[";
    for (std::size_t i = 0; i < rec.context.size(); ++i) ctx += (i ? "," : "") + std::to_string(rec.context[i]);
    ctx += "]";
    b.lines.push_back(ctx + " " + rec.context_type + "  q=" + rec.s.to_string() + "  centralizer " + rec.centralizer_type +
                      "  dim V_s- " + rec.eigenspace_dim.str() + "  " + to_string(rec.status) +
                      (rec.message.empty() ? "" : " (" + rec.message + ")"));
    if (rec.status == ScanStatus::kFail) ++fails;
    if (rec.status == ScanStatus::kError) ++errors;
  }
  b.lines.push_back(std::to_string(rep.contexts) + " contexts, " + std::to_string(rep.records.size()) + " torsion classes, " +
                    std::to_string(fails) + " failed, " + std::to_string(errors) + " errors");
  b.lines.push_back("scope: " + rep.scope_note);
  b.extra["scope_note"] = rep.scope_note;
  b.extra["contexts"] = rep.contexts;
  b.extra["max_order"] = in.max_order;
  b.extra["levi_depth"] = in.levi_depth;
  b.pass = rep.verdict;
  return b;
}

inline Body cmd_ggp(const Inputs& in) {
  if (in.shapes < 1) throw InputError("--shapes must be at least 1");
  std::mt19937_64 rng(in.seed);
  Body b;
  for (int k = 0; k < in.shapes; ++k) {
    const eps::WDShape shape = eps::random_shape(rng, in.a1, in.b1, in.max_mult, in.max_dim);
    const eps::GgpResult res = eps::verify_ggp_identity(shape, in.trials, rng);
    json j{{"index", k},
           {"shape", shape.to_string()},
           {"elements", res.elements},
           {"evaluations", res.evaluations},
           {"status", res.ok ? "pass" : "fail"}};
    b.lines.push_back("shape " + std::to_string(k) + ": " + shape.to_string() + "  " + std::to_string(res.elements) +
                      " elements, " + std::to_string(res.evaluations) + " evaluations  " + (res.ok ? "pass" : "fail"));
    if (res.counterexample) {
      const auto& c = *res.counterexample;
      j["counterexample"] = {{"element", eps::to_string(c.element)},
                             {"omega", c.omega.to_string()},
                             {"chi", c.chi.to_string()},
                             {"reason", c.reason}};
      b.lines.push_back("  element " + eps::to_string(c.element) + ": omega = " + c.omega.to_string() +
                        ", chi = " + c.chi.to_string() + " (" + c.reason + ")");
      b.pass = false;
    }
    b.records.push_back(j);
  }
  b.extra["bounds"] = {{"a1", in.a1}, {"b1", in.b1}, {"max_mult", in.max_mult}, {"max_dim", in.max_dim}, {"trials", in.trials}};
  return b;
}

inline std::vector<packets::Mask> parse_masks(const std::string& s) {
  std::vector<packets::Mask> out;
  for (Int x : parse_int_vec(s)) {
    if (x < 0) throw InputError("omega bits must be nonnegative");
    out.push_back(static_cast<packets::Mask>(x));
  }
  return out;
}

inline Body cmd_packets(const Inputs& in) {
  if (in.scenario.empty()) throw InputError("--scenario is required");
  std::vector<packets::ScenarioReport> reports;
  if (in.sweep) {
    reports = packets::sweep(in.scenario);
  } else if (in.scenario == "whittaker") {
    reports.push_back(packets::scenario_whittaker(in.s_phi_rank));
  } else if (in.scenario == "sl2-split") {
    reports.push_back(packets::scenario_sl2_split(in.square_classes, in.s_phi_order));
  } else if (in.scenario == "sl2-elliptic") {
    std::vector<int> signs = parse_signs(in.signs);
    if (signs.empty() && in.j_order > 0) signs.assign(static_cast<std::size_t>(in.square_classes / in.j_order), 1);
    reports.push_back(packets::scenario_sl2_elliptic(in.square_classes, in.j_order, signs));
  } else if (in.scenario == "u6") {
    if (in.liftings != 1 && in.liftings != 2) throw InputError("--liftings must be 1 or 2");
    std::vector<int> signs = parse_signs(in.signs);
    if (signs.empty()) signs.assign(static_cast<std::size_t>(in.liftings), 1);
    reports.push_back(packets::scenario_u6(in.liftings == 2, signs, parse_sign(in.epsilon_g), in.s_phi_rank < 2 ? 2 : in.s_phi_rank,
                                           parse_masks(in.omega_rest)));
  } else {
    throw InputError("unknown scenario '" + in.scenario + "' (expected whittaker, sl2-split, sl2-elliptic or u6)");
  }
  Body b;
  for (const auto& r : reports) {
    json j{{"scenario", r.scenario}, {"details", r.details}, {"status", r.pass ? "pass" : "fail"}, {"violations", r.violations}};
    b.records.push_back(j);
    std::string line = r.scenario + " " + r.details.dump() + "  " + (r.pass ? "pass" : "fail");
    for (const auto& v : r.violations) line += "; " + v;
    b.lines.push_back(line);
    if (!r.pass) b.pass = false;
  }
  return b;
}

/// Fills inputs not given on the command line from the config file.
inline void apply_config(const Config& cfg, Inputs& in, const CLI::App& sub) {
  auto given = [&](const std::string& flag) {
    const CLI::Option* o = sub.get_option_no_throw(flag);
    return o != nullptr && o->count() > 0;
  };
  auto num = [&](const std::string& section, const std::string& key, const std::string& flag, auto& target) {
    if (given(flag)) return;
    if (auto v = cfg.get(section, key)) target = static_cast<std::decay_t<decltype(target)>>(parse_int(*v));
  };
  auto str = [&](const std::string& section, const std::string& key, const std::string& flag, std::string& target) {
    if (given(flag)) return;
    if (auto v = cfg.get(section, key)) target = *v;
  };
  num("scan", "max_order", "--max-order", in.max_order);
  num("scan", "levi_depth", "--levi-depth", in.levi_depth);
  num("ggp", "a1", "--a1", in.a1);
  num("ggp", "b1", "--b1", in.b1);
  num("ggp", "max_mult", "--max-mult", in.max_mult);
  num("ggp", "max_dim", "--max-dim", in.max_dim);
  num("ggp", "trials", "--trials", in.trials);
  num("ggp", "shapes", "--shapes", in.shapes);
  str("packets", "scenario", "--scenario", in.scenario);
  num("packets", "s_phi_rank", "--s-phi-rank", in.s_phi_rank);
  num("packets", "square_classes", "--square-classes", in.square_classes);
  num("packets", "s_phi_order", "--s-phi-order", in.s_phi_order);
  num("packets", "j_order", "--j-order", in.j_order);
  str("packets", "signs", "--signs", in.signs);
  num("packets", "liftings", "--liftings", in.liftings);
  str("packets", "epsilon_g", "--epsilon-g", in.epsilon_g);
  str("packets", "omega_rest", "--omega-rest", in.omega_rest);
  if (!given("--sweep")) {
    if (auto v = cfg.get("packets", "sweep")) in.sweep = (trim(*v) == "true" || trim(*v) == "1");
  }
  if (!given("--seed")) {
    if (auto v = cfg.get("run", "seed")) in.seed = static_cast<std::uint64_t>(parse_int(*v));
  }
}

inline std::string render_text(const std::string& command, const std::string& digest, std::uint64_t seed, const Body& b,
                               const std::optional<double>& wall_ms) {
  std::ostringstream out;
  out << "command: " << command << "\n";
  out << "input digest: " << digest << "\n";
  out << "seed: " << seed << "\n";
  for (const auto& l : b.lines) out << l << "\n";
  if (wall_ms) out << "wall time: " << std::fixed << std::setprecision(1) << *wall_ms << " ms\n";
  out << "verdict: " << (b.pass ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace detail

inline Outcome run(const std::vector<std::string>& args) {
  using namespace detail;
  const auto start = std::chrono::steady_clock::now();
  Inputs in;
  CLI::App app{"Exact root-datum, anomaly, sign-calculus and packet computations", "stm"};
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App* s) {
    s->add_flag("--json", in.json, "Emit the report as JSON");
    s->add_flag("--timing", in.timing, "Include wall time in the report");
    s->add_option("--config", in.config_path, "Configuration file");
    s->add_option("--seed", in.seed, "Random seed");
  };
  auto group_opts = [&](CLI::App* s) {
    s->add_option("--group", in.group, "Preset name or group expression such as A5, D6xA1xT1, A1ad");
  };
  auto rep_opts = [&](CLI::App* s) {
    s->add_option("--rep", in.reps, "fundamental:<dim>, omega:<i> or hw:<ambient coords>[*m]");
    s->add_option("--highest-weight", in.highest_weights, "Highest weight in ambient coordinates, optionally '* m'");
  };

  auto* roots = app.add_subcommand("roots", "Describe a root datum");
  common(roots);
  group_opts(roots);
  roots->add_option("--orbit", in.orbit, "Weyl orbit of a weight (ambient coordinates)");
  roots->add_option("--levi-delete", in.levi_delete, "Comma-separated node ids to delete");

  auto* rep = app.add_subcommand("rep", "Dimensions, duality and Levi restriction of a representation");
  common(rep);
  group_opts(rep);
  rep_opts(rep);
  rep->add_flag("--dim", in.dim_only, "Print only the dimension");
  rep->add_flag("--weights", in.show_weights, "List the weight multiset");
  rep->add_option("--levi-delete", in.levi_delete, "Restrict to the Levi with these node ids deleted");

  auto* anomaly = app.add_subcommand("anomaly", "Anomaly-free test with certificate");
  common(anomaly);
  group_opts(anomaly);
  rep_opts(anomaly);

  auto* scan = app.add_subcommand("endoscopy-scan", "Anomaly test on -1 eigenspaces of torsion elements");
  common(scan);
  group_opts(scan);
  rep_opts(scan);
  scan->add_option("--max-order", in.max_order, "Largest torsion order (default 2)");
  scan->add_option("--levi-depth", in.levi_depth, "Number of Dynkin nodes deleted in Levi recursion (default 1)");

  auto* ggp = app.add_subcommand("ggp-verify", "Check the orthogonal sign identity on random shapes");
  common(ggp);
  ggp->add_option("--a1", in.a1, "Number of orthogonal-type atoms on the M side");
  ggp->add_option("--b1", in.b1, "Number of orthogonal-type atoms on the N side");
  ggp->add_option("--max-mult", in.max_mult, "Largest atom multiplicity");
  ggp->add_option("--max-dim", in.max_dim, "Largest formal atom dimension");
  ggp->add_option("--trials", in.trials, "Random representatives per sign-group element");
  ggp->add_option("--shapes", in.shapes, "Number of random shapes");

  auto* pk = app.add_subcommand("packets", "Induced-character multiplicity scenarios");
  common(pk);
  pk->add_option("--scenario", in.scenario, "whittaker, sl2-split, sl2-elliptic or u6");
  pk->add_option("--s-phi-rank", in.s_phi_rank, "Rank of S_phi (whittaker, u6)");
  pk->add_option("--square-classes", in.square_classes, "|F^x/(F^x)^2|");
  pk->add_option("--s-phi-order", in.s_phi_order, "|S_phi| (sl2-split)");
  pk->add_option("--j-order", in.j_order, "|J| (sl2-elliptic)");
  pk->add_option("--signs", in.signs, "Epsilon signs per lifting, e.g. +,-,+");
  pk->add_option("--liftings", in.liftings, "Number of liftings (u6: 1 or 2)");
  pk->add_option("--epsilon-g", in.epsilon_g, "Sign distinguishing G from its inner form (u6)");
  pk->add_option("--omega-rest", in.omega_rest, "Values of each omega away from z, as bitmasks (u6)");
  pk->add_flag("--sweep", in.sweep, "Run the exhaustive sweep for the scenario");

  Outcome result;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    result.exit_code = code == 0 ? 0 : 2;
    return result;
  }

  std::string command;
  for (std::size_t i = 0; i < args.size(); ++i) command += (i ? " " : "") + args[i];
  try {
    Config cfg;
    std::string config_text;
    if (!in.config_path.empty()) {
      config_text = read_file(in.config_path);
      cfg = parse_config(config_text);
    }
    CLI::App* sub = app.get_subcommands().front();
    apply_config(cfg, in, *sub);
    const std::string digest = "fnv1a64:" + hex64(fnv1a(config_text, fnv1a(command + '\n')));

    Body body;
    const std::string name = sub->get_name();
    if (name == "roots") body = cmd_roots(in, cfg);
    else if (name == "rep") body = cmd_rep(in, cfg);
    else if (name == "anomaly") body = cmd_anomaly(in, cfg);
    else if (name == "endoscopy-scan") body = cmd_scan(in, cfg);
    else if (name == "ggp-verify") body = cmd_ggp(in);
    else body = cmd_packets(in);

    const double wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::optional<double> shown;
    if (in.timing) shown = wall_ms;
    {
      std::ostringstream e;
      e << "wall time: " << std::fixed << std::setprecision(1) << wall_ms << " ms\n";
      result.err = e.str();
    }
    if (in.json) {
      json report = body.extra;
      report["command"] = command;
      report["subcommand"] = name;
      report["input_digest"] = digest;
      report["seed"] = in.seed;
      report["records"] = body.records;
      report["verdict"] = body.pass ? "pass" : "fail";
      if (shown) report["wall_time_ms"] = *shown;
      result.out = report.dump(2) + "\n";
    } else if (!body.plain.empty()) {
      result.out = body.plain;
    } else {
      result.out = render_text(command, digest, in.seed, body, shown);
    }
    result.exit_code = body.pass ? 0 : 1;
  } catch (const InputError& e) {
    result.err = std::string("error: ") + e.what() + "\n";
    result.exit_code = 2;
  } catch (const ClosureOverflow& e) {
    result.err = std::string("error: ") + e.what() + "\n";
    result.exit_code = 2;
  } catch (const std::overflow_error& e) {
    result.err = std::string("error: input too large: ") + e.what() + "\n";
    result.exit_code = 2;
  } catch (const std::exception& e) {
    result.err = std::string("internal error: ") + e.what() + "\n";
    result.exit_code = 3;
  }
  return result;
}

}  // namespace stm::cli
