#pragma once

// Command-line front end. run() is the whole program; main() only forwards
// the process streams so that tests can drive it in-process.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gcoh/gcoh.hpp"

namespace gcoh::cli {

using Json = nlohmann::ordered_json;

/// Outcome of one subcommand before rendering.
struct CommandResult {
  std::string command;
  Json parameters = Json::object();
  bool pass = true;
  Json payload = Json::object();
  std::vector<std::string> columns;  // optional table
  std::vector<std::vector<Json>> rows;
};

namespace detail {

inline Json number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return Json(std::strtod(buf, nullptr));
}

inline Json integer(const Integer& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
    return Json(n.convert_to<std::int64_t>());
  return Json(n.str());
}

inline Json integers(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer(x));
  return out;
}

inline Json matrix(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(integers(m.row(i)));
  return out;
}

inline Json complex(Complex z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

inline std::string tsv_cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "-";
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v.get<double>());
    return buf;
  }
  if (v.is_array()) {
    std::string out;
    // matrices: rows separated by ';'
    const char* sep = (!v.empty() && v[0].is_array()) ? ";" : ",";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i == 0 ? "" : sep) + tsv_cell(v[i]);
    return out;
  }
  if (v.is_object() && v.contains("re") && v.contains("im") && v.size() == 2)
    return tsv_cell(v["re"]) + "," + tsv_cell(v["im"]);
  return v.dump();
}

inline void render_json(const CommandResult& r, std::ostream& out) {
  Json doc{{"command", r.command},
           {"parameters", r.parameters},
           {"status", r.pass ? "pass" : "fail"},
           {"payload", r.payload}};
  if (!r.columns.empty()) {
    Json table = Json::array();
    for (const auto& row : r.rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < r.columns.size(); ++i) obj[r.columns[i]] = row[i];
      table.push_back(std::move(obj));
    }
    doc["payload"]["table"] = std::move(table);
  }
  out << doc.dump(2) << "\n";
}

// Scalar payloads become key/value rows; with a table, scalars move into
// comment lines above the column header.
inline void render_tsv(const CommandResult& r, std::ostream& out) {
  out << "# gcoh " << r.command << " v1\n";
  out << "# status=" << (r.pass ? "pass" : "fail") << "\n";
  for (const auto& [k, v] : r.parameters.items()) out << "# param " << k << "=" << tsv_cell(v) << "\n";
  if (r.columns.empty()) {
    out << "key\tvalue\n";
    for (const auto& [k, v] : r.payload.items()) out << k << "\t" << tsv_cell(v) << "\n";
    return;
  }
  for (const auto& [k, v] : r.payload.items()) out << "# " << k << "=" << tsv_cell(v) << "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i == 0 ? "" : "\t") << r.columns[i];
  out << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i == 0 ? "" : "\t") << tsv_cell(row[i]);
    out << "\n";
  }
}

/// "re" or "re,im".
inline Complex parse_complex(const std::string& text) {
  auto comma = text.find(',');
  auto parse = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw DomainError("not a number: '" + part + "'");
    }
    if (used != part.size()) throw DomainError("not a number: '" + part + "'");
    return v;
  };
  if (comma == std::string::npos) return {parse(text), 0.0};
  return {parse(text.substr(0, comma)), parse(text.substr(comma + 1))};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
  if (!out.flush()) throw DomainError("write failed for " + path);
}

}  // namespace detail

/// Options shared by the subcommands; unset optionals mean "not given".
struct Options {
  std::string format = "tsv";
  std::string cache_path;
  std::optional<std::int64_t> D;
  std::optional<std::uint64_t> p;
  std::optional<std::uint64_t> bound;
  std::optional<std::string> s;
  std::optional<std::int64_t> a4, a6;
  std::optional<std::uint64_t> uhf;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> window;
  std::optional<std::size_t> terms;
  std::optional<int> degree;
  std::string kind = "motivic";
  std::vector<std::string> xs;
  std::vector<std::uint64_t> ramified;
  std::optional<std::string> save, load;
};

namespace detail {

inline std::int64_t need_D(const Options& o) {
  if (!o.D) throw DomainError("--D is required");
  return *o.D;
}

inline std::uint64_t need_p(const Options& o) {
  if (!o.p) throw DomainError("--p is required");
  return *o.p;
}

/// Curve from --a4/--a6, else the table curve for --D.
inline CurveQ curve_from(const Options& o, CommandResult& r) {
  if (o.a4 || o.a6) {
    if (!o.a4 || !o.a6) throw DomainError("--a4 and --a6 must be given together");
    r.parameters["a4"] = *o.a4;
    r.parameters["a6"] = *o.a6;
    return CurveQ(*o.a4, *o.a6);
  }
  if (o.D) {
    r.parameters["D"] = *o.D;
    return cm_curve_for(static_cast<int>(*o.D));
  }
  throw DomainError("give a curve with --a4/--a6 or a CM table --D");
}

inline CommandResult cmd_contfrac(const Options& o) {
  CommandResult r;
  r.command = "contfrac";
  const std::int64_t D = need_D(o);
  const std::size_t terms = o.terms.value_or(8);
  r.parameters["D"] = D;
  r.parameters["terms"] = terms;
  const QuadElement theta = omega_of(D);
  PeriodicCF cf = expand(theta);
  auto cs = convergents(cf, terms);
  bool ok = cf.preperiod.size() == 1;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    QuadElement diff = theta - Rational(cs[k].p, cs[k].q);
    QuadElement mag = diff.sign() < 0 ? -diff : diff;
    ok = ok && mag < QuadElement::from_rational(Rational(Integer(1), cs[k].q * cs[k].q), D);
    r.rows.push_back({Json(k), integer(cs[k].p), integer(cs[k].q)});
  }
  r.columns = {"k", "p", "q"};
  r.payload["theta"] = theta.to_string();
  r.payload["preperiod"] = integers(cf.preperiod);
  r.payload["period"] = integers(cf.period);
  r.payload["period_length"] = cf.period.size();
  r.pass = ok;
  return r;
}

inline CommandResult cmd_unit(const Options& o) {
  CommandResult r;
  r.command = "unit";
  const std::int64_t D = need_D(o);
  r.parameters["D"] = D;
  auto u = fundamental_unit(D);
  const bool stable = unit_stability_check(D);
  r.payload["epsilon"] = u.epsilon.to_string();
  r.payload["norm"] = u.norm;
  r.payload["approx"] = number(u.epsilon.to_double());
  r.payload["stable"] = stable;
  r.pass = stable && abs(u.epsilon.norm()) == 1;
  return r;
}

inline CommandResult cmd_omega(const Options& o) {
  CommandResult r;
  r.command = "omega";
  const std::int64_t D = need_D(o);
  r.parameters["D"] = D;
  const QuadElement w = omega_of(D);
  // x^2 - trace x + norm
  r.payload["omega"] = w.to_string();
  r.payload["trace"] = to_string(w.trace());
  r.payload["norm"] = to_string(w.norm());
  r.payload["approx"] = number(w.to_double());
  r.pass = w.is_algebraic_integer();
  return r;
}

inline void describe_stationary(const StationaryDiagram& s, CommandResult& r) {
  r.payload["B"] = matrix(s.B);
  r.payload["seed"] = integers(s.seed.sizes());
  r.payload["period"] = s.period_length;
  DimensionGroup g = stationary_k0(s);
  r.payload["rank"] = g.rank;
  if (g.real_embedding) {
    const bool shift = shift_action_check(*g.shift_multiplier, *g.real_embedding);
    r.payload["eigenvalue"] = g.shift_multiplier->to_string();
    r.payload["k0"] = g.real_embedding->to_string();
    r.payload["shift_automorphism"] = shift;
    r.pass = r.pass && shift;
  }
}

inline CommandResult cmd_dimgroup(const Options& o) {
  CommandResult r;
  r.command = "dimgroup";
  const int modes = (o.D ? 1 : 0) + (o.uhf ? 1 : 0) + (o.load ? 1 : 0);
  if (modes != 1) throw DomainError("dimgroup needs exactly one of --D, --uhf, --load");
  if (o.uhf) {
    const std::uint64_t p = *o.uhf;
    const std::size_t depth = o.depth.value_or(4);
    r.parameters["uhf"] = p;
    r.parameters["depth"] = depth;
    BratteliDiagram d = uhf_diagram(p, depth);
    Json sizes = Json::array();
    for (const auto& level : d.levels()) sizes.push_back(integer(level.sizes()[0]));
    r.payload["sizes"] = sizes;
    // membership in Z[1/p] against the finite stages of a long telescoped chain
    DimensionGroup deep = dimension_group(telescope(uhf_diagram(p, 64), 2));
    for (const auto& text : o.xs) {
      Rational x = parse_rational(text);
      const bool member = uhf_k0_membership(p, x);
      const bool staged = deep.contains_at_finite_stage(x);
      r.rows.push_back({Json(to_string(x)), Json(member), Json(staged)});
      r.pass = r.pass && member == staged;
    }
    if (!o.xs.empty()) r.columns = {"x", "member", "finite_stage"};
    return r;
  }
  std::optional<StationaryDiagram> s;
  if (o.D) {
    r.parameters["D"] = *o.D;
    const QuadElement w = omega_of(*o.D);
    s = effros_shen(w - Rational(w.floor()));
  } else {
    r.parameters["load"] = *o.load;
    s = parse_stationary_diagram(read_file(*o.load));
  }
  describe_stationary(*s, r);
  if (o.D) {
    const bool coherent = effros_shen_coherence(*o.D);
    r.payload["equals_integer_ring"] = coherent;
    r.pass = r.pass && coherent;
  }
  if (o.save) {
    r.parameters["save"] = *o.save;
    write_file(*o.save, serialize(*s));
  }
  return r;
}

inline CommandResult cmd_tower(const Options& o) {
  CommandResult r;
  r.command = "tower";
  const std::uint64_t p = need_p(o);
  const std::size_t window = o.window.value_or(3);
  r.parameters["p"] = p;
  r.parameters["window"] = window;
  ProfiniteTower t = cyclic_tower(p, window + 1);
  Json sizes = Json::array();
  for (const auto& level : t.levels) sizes.push_back(level.degrees.size());
  const bool pullback = t.pullback_invariants_hold();
  const bool similar = self_similarity_check(t, window);
  r.payload["blocks_per_level"] = sizes;
  r.payload["pullback_invariants"] = pullback;
  r.payload["self_similar"] = similar;
  r.pass = pullback && similar;
  return r;
}

inline CommandResult cmd_sl2(const Options& o) {
  CommandResult r;
  r.command = "sl2";
  const std::uint64_t p = need_p(o);
  r.parameters["p"] = p;
  auto profile = sl2_degree_profile(p);
  Json degrees = Json::array();
  for (auto d : profile.degrees) degrees.push_back(d);
  r.payload["group"] = profile.group_label;
  r.payload["order"] = integer(profile.order);
  r.payload["degrees"] = degrees;
  r.payload["sum_of_squares"] = integer(profile.sum_of_squares());
  r.payload["class_count"] = profile.degrees.size();
  r.pass = profile.burnside_holds() && profile.degrees.size() == p + 4;
  return r;
}

inline CommandResult cmd_count(const Options& o) {
  CommandResult r;
  r.command = "count";
  const CurveQ c = curve_from(o, r);
  const std::uint64_t p = need_p(o);
  r.parameters["p"] = p;
  r.payload["curve"] = c.to_string();
  r.payload["discriminant"] = integer(c.discriminant());
  const std::uint64_t n1 = count_points_fp(c, p);
  const FrobeniusMatrices m = frobenius_matrices(c, p);
  r.payload["a_p"] = integer(m.h1.trace());
  bool ok = m.lefschetz_sum() == Integer(n1);
  r.columns = {"r", "points", "enumerated"};
  for (unsigned k = 1; k <= 3; ++k) {
    Integer n = count_points_extension(c, p, k);
    Json check = nullptr;
    if (k == 1) check = n1;
    if (k == 2 && p <= 5000) {
      std::uint64_t e = count_points_fp2_enumerate(c, p);
      check = e;
      ok = ok && Integer(e) == n;
    }
    r.rows.push_back({Json(k), integer(n), check});
  }
  r.payload["lefschetz"] = integer(m.lefschetz_sum());
  r.pass = ok && Integer(n1) == count_points_extension(c, p, 1);
  return r;
}

inline CommandResult cmd_ap(const Options& o, ApCache& cache) {
  CommandResult r;
  r.command = "ap";
  const CurveQ c = curve_from(o, r);
  const std::uint64_t bound = o.bound.value_or(100);
  r.parameters["bound"] = bound;
  r.payload["curve"] = c.to_string();
  Json bad = Json::array();
  r.columns = {"p", "ap", "hasse"};
  for (auto p : primes_up_to(bound)) {
    FrobeniusData fr = cache.trace(c, p);
    if (!fr.good) {
      bad.push_back(p);
      continue;
    }
    const bool hasse = fr.a_p * fr.a_p <= 4 * static_cast<std::int64_t>(p);
    r.pass = r.pass && hasse;
    r.rows.push_back({Json(p), Json(fr.a_p), Json(hasse)});
  }
  r.payload["excluded"] = bad;
  return r;
}

inline CommandResult cmd_zeta_local(const Options& o) {
  CommandResult r;
  r.command = "zeta-local";
  const CurveQ c = curve_from(o, r);
  const std::uint64_t p = need_p(o);
  r.parameters["p"] = p;
  LocalZeta z = weil_zeta_local(c, p);
  r.payload["curve"] = c.to_string();
  r.payload["numerator"] = integers(z.numerator);
  r.payload["denominator"] = integers(z.denominator);
  auto logs = z.log_series(3);
  r.columns = {"r", "log_coefficient", "points_over_r", "match"};
  for (unsigned k = 1; k <= 3; ++k) {
    Integer n = count_points_extension(c, p, k);
    if (k == 2 && p <= 5000) n = count_points_fp2_enumerate(c, p);
    Rational expected = Rational(n) / Rational(k);
    const bool match = logs[k] == expected;
    r.pass = r.pass && match;
    r.rows.push_back({Json(k), Json(to_string(logs[k])), Json(to_string(expected)), Json(match)});
  }
  return r;
}

inline CommandResult cmd_lfun(const Options& o, ApCache& cache) {
  CommandResult r;
  r.command = "lfun";
  const Complex s = parse_complex(o.s.value_or("3"));
  const std::uint64_t bound = o.bound.value_or(1000);
  r.parameters["kind"] = o.kind;
  r.parameters["s"] = complex(s);
  r.parameters["bound"] = bound;
  EulerProductApprox e;
  if (o.kind == "zeta") {
    e = zeta_partial(s, bound);
  } else if (o.kind == "motivic") {
    e = motivic_l1_partial(curve_from(o, r), s, bound, &cache);
  } else if (o.kind == "automorphic") {
    const int i = o.degree.value_or(1);
    r.parameters["D"] = need_D(o);
    r.parameters["i"] = i;
    e = automorphic_l_partial(static_cast<int>(*o.D), i, s, bound);
  } else {
    throw DomainError("--kind must be zeta, motivic or automorphic");
  }
  const Complex again = e.recompute();
  r.payload["value"] = complex(e.value);
  r.payload["factors"] = e.factors.size();
  r.payload["recompute_exact"] = again.real() == e.value.real() && again.imag() == e.value.imag();
  r.pass = r.payload["recompute_exact"].get<bool>();
  return r;
}

inline CommandResult cmd_match(const Options& o, ApCache& cache) {
  CommandResult r;
  r.command = "match";
  const int D = static_cast<int>(need_D(o));
  const std::uint64_t bound = o.bound.value_or(1000);
  r.parameters["D"] = D;
  r.parameters["bound"] = bound;
  MatchReport report = local_factor_match(D, bound, &cache);
  r.columns = {"p", "ap_motivic", "ap_automorphic", "match"};
  for (const auto& row : report.rows)
    r.rows.push_back({Json(row.p), Json(row.motivic_trace), Json(row.automorphic_trace), Json(row.match() ? 1 : 0)});
  Json mism = Json::array();
  for (auto p : report.mismatches) mism.push_back(p);
  r.payload["primes_compared"] = report.rows.size();
  r.payload["mismatches"] = report.mismatches.size();
  r.payload["mismatch_primes"] = mism;
  if (D != 1) r.payload["calibration_prime"] = CmHeckeCharacter::calibrated(D).calibration_prime();
  r.pass = report.mismatches.empty();
  return r;
}

inline CommandResult cmd_prop3(const Options& o, ApCache& cache) {
  CommandResult r;
  r.command = "prop3";
  const int D = static_cast<int>(need_D(o));
  const Complex s = parse_complex(o.s.value_or("3"));
  const std::uint64_t bound = o.bound.value_or(500);
  r.parameters["D"] = D;
  r.parameters["s"] = complex(s);
  r.parameters["bound"] = bound;
  const double residual = proposition3_check(D, s, bound, &cache);
  r.payload["residual"] = number(residual);
  r.payload["tolerance"] = number(1e-10);
  r.pass = residual < 1e-10;
  return r;
}

inline CommandResult cmd_coherence(const Options& o) {
  CommandResult r;
  r.command = "coherence";
  const std::int64_t D = need_D(o);
  r.parameters["D"] = D;
  if (D == 1) {
    // Q(sqrt(1)) is not a quadratic field; there is no real-side K0 to test
    r.payload["skipped"] = "no real quadratic field for D=1";
    return r;
  }
  const RealModule k0 = k0_automorphic(D);
  r.payload["k0"] = k0.to_string();
  bool in_table = false;
  for (const auto& e : cm_table()) in_table = in_table || e.D == D;
  if (in_table) {
    TraceCohomology h = trace_cohomology_ecm(static_cast<int>(D));
    Json degrees = Json::array();
    for (const auto& m : h.modules) degrees.push_back(m.to_string());
    const bool coherent = g_coherence_check(h, k0);
    r.payload["trace_cohomology"] = degrees;
    r.payload["g_coherent"] = coherent;
    r.pass = r.pass && coherent && h.well_formed();
  }
  const bool es = effros_shen_coherence(D);
  const bool units = unit_stability_check(D);
  r.payload["effros_shen"] = es;
  r.payload["unit_stable"] = units;
  r.pass = r.pass && es && units;
  return r;
}

inline CommandResult cmd_adelic(const Options& o) {
  CommandResult r;
  r.command = "adelic";
  RestrictedProductSpec spec = [&] {
    if (o.load) {
      r.parameters["load"] = *o.load;
      return parse_restricted_product(read_file(*o.load));
    }
    const std::int64_t D = o.D.value_or(5);
    const std::uint64_t bound = o.bound.value_or(7);
    const std::size_t depth = o.depth.value_or(2);
    std::set<std::uint64_t> ramified(o.ramified.begin(), o.ramified.end());
    Json ram = Json::array();
    for (auto q : ramified) ram.push_back(q);
    r.parameters["ramified"] = ram;
    r.parameters["bound"] = bound;
    r.parameters["D"] = D;
    r.parameters["depth"] = depth;
    const QuadElement w = omega_of(D);
    return assemble_restricted_product(ramified, bound, effros_shen(w - Rational(w.floor())), depth);
  }();
  r.columns = {"place", "blocks_per_level"};
  for (const auto& [p, d] : spec.factors) {
    Json counts = Json::array();
    for (const auto& level : d.levels()) counts.push_back(level.block_count());
    r.rows.push_back({Json(std::to_string(p)), counts});
  }
  r.rows.push_back({Json("inf"), matrix(spec.infinite_factor.B)});
  r.payload["finite_factors"] = spec.factors.size();
  r.payload["infinite_primitive"] = is_primitive(spec.infinite_factor.B);
  if (o.save) {
    r.parameters["save"] = *o.save;
    write_file(*o.save, serialize(spec));
  }
  return r;
}

}  // namespace detail

inline std::string default_cache_path() {
  if (const char* env = std::getenv("GCOH_APCACHE"); env && *env) return env;
  return "apcache.tsv";
}

/// Exit codes: 0 pass, 1 fail, 2 usage or domain error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks on quadratic fields, AF-algebra dimension groups and CM elliptic curves", "gcoh"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  o.cache_path = default_cache_path();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--cache", o.cache_path, "Point-count cache file (env GCOH_APCACHE)");

  // every subcommand accepts the same option set; unused ones are ignored
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--D", o.D, "Square-free integer / CM table discriminant");
    sub->add_option("--p", o.p, "Prime");
    sub->add_option("--bound", o.bound, "Prime bound");
    sub->add_option("--s", o.s, "Evaluation point re[,im]");
    sub->add_option("--a4", o.a4, "Curve coefficient a4");
    sub->add_option("--a6", o.a6, "Curve coefficient a6");
    return sub;
  };
  add("contfrac", "Continued fraction of omega(D)")->add_option("--terms", o.terms, "Convergents to list");
  add("unit", "Fundamental unit of Q(sqrt(D)) and its action on the integers");
  add("omega", "Integral basis generator omega(D)");
  {
    CLI::App* sub = add("dimgroup", "Dimension group of an Effros-Shen, UHF or saved stationary diagram");
    sub->add_option("--uhf", o.uhf, "UHF algebra M_{p^inf}");
    sub->add_option("--depth", o.depth, "UHF chain depth");
    sub->add_option("--x", o.xs, "Rational to test for UHF K0 membership");
    sub->add_option("--save", o.save, "Write the stationary diagram record");
    sub->add_option("--load", o.load, "Read a stationary diagram record");
  }
  add("tower", "Self-similarity of the cyclic profinite tower")->add_option("--window", o.window, "Levels compared");
  add("sl2", "Irreducible degree profile of SL2(F_p)");
  add("count", "Point counts over F_p, F_{p^2}, F_{p^3}");
  add("ap", "Frobenius traces for good primes up to the bound");
  add("zeta-local", "Local zeta function and its logarithm");
  {
    CLI::App* sub = add("lfun", "Partial Euler product");
    sub->add_option("--kind", o.kind, "zeta, motivic or automorphic")->check(CLI::IsMember({"zeta", "motivic", "automorphic"}));
    sub->add_option("--i", o.degree, "Automorphic degree 0, 1 or 2");
  }
  add("match", "Compare point-count and Hecke-character local factors");
  add("prop3", "Residual of the L-function factorization");
  add("coherence", "Trace cohomology versus K0 and Effros-Shen coherence");
  {
    CLI::App* sub = add("adelic", "Restricted-product descriptor");
    sub->add_option("--ramified", o.ramified, "Ramified primes (comma separated)")->delimiter(',');
    sub->add_option("--depth", o.depth, "Tower depth per finite place");
    sub->add_option("--save", o.save, "Write the descriptor");
    sub->add_option("--load", o.load, "Read a descriptor");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    std::optional<ApCache> cache;
    auto cached = [&]() -> ApCache& {
      if (!cache) cache.emplace(o.cache_path);
      return *cache;
    };
    CommandResult r;
    if (name == "contfrac") r = detail::cmd_contfrac(o);
    else if (name == "unit") r = detail::cmd_unit(o);
    else if (name == "omega") r = detail::cmd_omega(o);
    else if (name == "dimgroup") r = detail::cmd_dimgroup(o);
    else if (name == "tower") r = detail::cmd_tower(o);
    else if (name == "sl2") r = detail::cmd_sl2(o);
    else if (name == "count") r = detail::cmd_count(o);
    else if (name == "ap") r = detail::cmd_ap(o, cached());
    else if (name == "zeta-local") r = detail::cmd_zeta_local(o);
    else if (name == "lfun") r = detail::cmd_lfun(o, cached());
    else if (name == "match") r = detail::cmd_match(o, cached());
    else if (name == "prop3") r = detail::cmd_prop3(o, cached());
    else if (name == "coherence") r = detail::cmd_coherence(o);
    else r = detail::cmd_adelic(o);
    if (cache && cache->dirty()) cache->flush();
    if (o.format == "json")
      detail::render_json(r, out);
    else
      detail::render_tsv(r, out);
    return r.pass ? 0 : 1;
  } catch (const std::exception& e) {
    err << "gcoh " << name << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace gcoh::cli
