#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tadic/compatible_map.hpp"
#include "tadic/ergodicity.hpp"
#include "tadic/error.hpp"
#include "tadic/lipschitz.hpp"
#include "tadic/monomial.hpp"
#include "tadic/report.hpp"
#include "tadic/sphere.hpp"
#include "tadic/vanderput.hpp"

namespace tadic::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MapSource {
  std::string text;
  std::string file;
};

CompatibleMap load_map(const MapSource& src) {
  if (src.text.empty() == src.file.empty()) {
    throw UsageError("exactly one of --map or --map-file is required");
  }
  if (!src.file.empty()) {
    std::ifstream in(src.file);
    if (!in) throw UsageError("cannot read map file " + src.file);
    std::stringstream buf;
    buf << in.rdbuf();
    return map_from_text(buf.str());
  }
  return map_from_text(src.text);
}

int exit_code_for(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::DecidedErgodic:
    case VerdictKind::VerifiedUpToLevel:
      return kErgodic;
    case VerdictKind::DecidedNotErgodic:
    case VerdictKind::DecidedNotMeasurePreserving:
    case VerdictKind::NotInvariant:
      return kNotErgodic;
    case VerdictKind::Inconclusive:
    case VerdictKind::NotOneLipschitz:
      return kInconclusive;
  }
  return kInconclusive;
}

Verdict inconclusive(Method method, const std::string& reason) {
  return {VerdictKind::Inconclusive, method, 0, {}, reason};
}

// Runs a check and turns mathematical errors into an Inconclusive verdict.
Verdict guarded(Method method, const std::function<Verdict()>& check) {
  try {
    return check();
  } catch (const Error& e) {
    return inconclusive(method, std::string(to_string(e.code())) + ": " + e.what());
  }
}

// Final verdict from independent routes. A decided route wins; any
// disagreement between an accepting and a rejecting route is reported.
struct Combined {
  Verdict final;
  bool consistent;
};

Combined combine(const std::vector<Verdict>& routes) {
  bool any_accept = false;
  bool any_reject = false;
  for (const auto& v : routes) {
    any_accept |= v.accepts();
    any_reject |= v.rejects();
  }
  // Priority: decided (Larin/monomial) > rejection > acceptance > rest.
  const Verdict* chosen = nullptr;
  for (const auto& v : routes) {
    if (v.kind == VerdictKind::DecidedErgodic || (v.rejects() && v.method != Method::Criterion &&
                                                  v.method != Method::Oracle)) {
      chosen = &v;
      break;
    }
  }
  if (!chosen) {
    for (const auto& v : routes) {
      if (v.rejects() || v.kind == VerdictKind::NotOneLipschitz) {
        chosen = &v;
        break;
      }
    }
  }
  if (!chosen) {
    for (const auto& v : routes) {
      if (v.accepts()) {
        chosen = &v;
        break;
      }
    }
  }
  if (!chosen) chosen = &routes.front();
  return {*chosen, !(any_accept && any_reject)};
}

class Report {
 public:
  Report(std::string subcommand, const RunConfig& cfg)
      : cfg_(cfg), start_(std::chrono::steady_clock::now()) {
    json_["subcommand"] = std::move(subcommand);
    json_["inputs"] = Json::object();
  }

  Json& inputs() { return json_["inputs"]; }
  Json& operator[](const char* key) { return json_[key]; }

  void emit(std::ostream& out) {
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - start_);
    json_["elapsed_ms"] = elapsed.count();
    out << json_.dump(2) << '\n';
  }

  bool json() const { return cfg_.format == OutputFormat::Json; }

 private:
  RunConfig cfg_;
  std::chrono::steady_clock::time_point start_;
  Json json_;
};

void print_verdict(std::ostream& out, const char* label, const Verdict& v) {
  out << label << ": " << to_string(v.kind) << " [" << to_string(v.method) << "]";
  if (v.kind == VerdictKind::VerifiedUpToLevel || v.rejects()) out << " level " << v.level;
  out << '\n';
  if (!v.reason.empty()) out << "  " << v.reason << '\n';
  if (const auto* c = std::get_if<ConditionViolation>(&v.witness)) {
    out << "  witness: " << c->relation << "; observed " << c->observed << " mod " << c->modulus;
    for (const auto& [name, value] : c->operands) out << "; " << name << " = " << value;
    out << '\n';
  } else if (const auto* e = std::get_if<CycleEvidence>(&v.witness)) {
    out << "  witness mod 2^" << e->modulus_exp << ": ";
    if (e->collision) {
      out << e->collision->first << " and " << e->collision->second << " have equal image\n";
    } else {
      out << "cycle of length " << e->cycle_length << ":";
      for (auto x : e->cycle) out << ' ' << x;
      if (e->cycle_truncated) out << " ...";
      out << '\n';
    }
  }
}

void require_precision(const RunConfig& cfg, unsigned needed, const std::string& what) {
  if (needed > cfg.precision) {
    throw UsageError(what + " needs precision " + std::to_string(needed) +
                     " but --precision is " + std::to_string(cfg.precision));
  }
}

// ---------------------------------------------------------------------------

int cmd_check_lipschitz(const MapSource& src, const RunConfig& cfg, unsigned level,
                        std::ostream& out) {
  require_precision(cfg, level + 2, "check-lipschitz");
  const CompatibleMap f = load_map(src);
  Verdict v = guarded(Method::Compatibility, [&]() -> Verdict {
    if (auto bad = check_compatibility(f, level)) {
      const unsigned n = floor_log2(bad->m);
      ConditionViolation c{0, n + 1, "B_m = 0 (mod 2^floor_log2(m))",
                           {{"m", bad->m}, {"B_m", bad->B.residue()}},
                           bad->B.residue() & low_mask(n), pow2(n)};
      return {VerdictKind::NotOneLipschitz, Method::Compatibility, n + 1, std::move(c),
              "B_" + std::to_string(bad->m) + " is not divisible by 2^" + std::to_string(n)};
    }
    return {VerdictKind::VerifiedUpToLevel, Method::Compatibility, level, {},
            "B_m divisible by 2^floor_log2(m) for all m < 2^" + std::to_string(level)};
  });
  const int code = v.kind == VerdictKind::VerifiedUpToLevel ? kErgodic
                   : v.kind == VerdictKind::NotOneLipschitz ? kNotErgodic
                                                            : kInconclusive;
  Report report("check-lipschitz", cfg);
  if (report.json()) {
    report.inputs() = {{"map", f.describe()}};
    report["levels"] = {{"level", level}};
    report["verdict"] = to_json(v);
    report.emit(out);
  } else {
    out << "map: " << f.describe() << '\n';
    print_verdict(out, "compatibility", v);
  }
  return code;
}

int cmd_check_mp(const MapSource& src, const RunConfig& cfg, std::ostream& out) {
  const CompatibleMap f = load_map(src);
  Verdict v = guarded(Method::Oracle, [&] { return check_measure_preserving(f, cfg.depth); });
  Report report("check-mp", cfg);
  if (report.json()) {
    report.inputs() = {{"map", f.describe()}};
    report["levels"] = {{"oracle_depth", cfg.depth}};
    report["verdict"] = to_json(v);
    report.emit(out);
  } else {
    out << "map: " << f.describe() << '\n';
    print_verdict(out, "measure-preservation", v);
  }
  return exit_code_for(v);
}

int cmd_check_ergodic(const MapSource& src, const RunConfig& cfg, std::ostream& out) {
  require_precision(cfg, cfg.level + 3, "check-ergodic");
  const CompatibleMap f = load_map(src);
  std::vector<Verdict> routes;
  if (f.is_polynomial()) routes.push_back(guarded(Method::Larin, [&] { return larin_polynomial(f); }));
  routes.push_back(
      guarded(Method::Criterion, [&] { return vdp_ergodicity_criterion(f, cfg.level); }));
  routes.push_back(guarded(Method::Oracle, [&] { return oracle_ergodic(f, cfg.depth); }));
  const Combined result = combine(routes);

  Report report("check-ergodic", cfg);
  if (report.json()) {
    report.inputs() = {{"map", f.describe()}, {"polynomial", f.is_polynomial()}};
    report["levels"] = {{"criterion_level", cfg.level},
                        {"oracle_depth", cfg.depth},
                        {"precision", cfg.level + 3}};
    report["verdict"] = to_json(result.final);
    Json evidence = Json::array();
    for (const auto& v : routes) evidence.push_back(to_json(v));
    report["evidence"] = std::move(evidence);
    report["consistent"] = result.consistent;
    report.emit(out);
  } else {
    out << "map: " << f.describe() << '\n';
    for (const auto& v : routes) print_verdict(out, to_string(v.method), v);
    print_verdict(out, "verdict", result.final);
    if (!result.consistent) out << "warning: routes disagree\n";
  }
  if (!result.consistent) return kInconclusive;
  return exit_code_for(result.final);
}

unsigned sphere_depth(const RunConfig& cfg, bool depth_given, unsigned r) {
  if (depth_given) return cfg.depth;
  return std::min<unsigned>(cfg.depth, r + 1 < kMaxOracleExponent ? kMaxOracleExponent - 1 - r : 1);
}

int cmd_check_sphere(const MapSource& src, const RunConfig& cfg, unsigned r, long long a,
                     bool depth_given, std::ostream& out) {
  require_precision(cfg, r + cfg.level + 4, "check-sphere");
  const SphereSpec sphere(r, a);
  const unsigned depth = sphere_depth(cfg, depth_given, r);
  const CompatibleMap f = load_map(src);
  std::vector<Verdict> routes;
  if (f.is_polynomial() && check_invariance(f, sphere)) {
    routes.push_back(guarded(Method::Larin, [&] { return larin_polynomial(conjugate(f, sphere)); }));
  }
  routes.push_back(guarded(Method::Criterion,
                           [&] { return sphere_ergodicity_criterion(f, sphere, cfg.level); }));
  routes.push_back(guarded(Method::Oracle, [&] { return oracle_sphere_ergodic(f, sphere, depth); }));
  const Combined result = combine(routes);

  Report report("check-sphere", cfg);
  if (report.json()) {
    report.inputs() = {{"map", f.describe()},
                       {"r", sphere.r()},
                       {"a", sphere.a()},
                       {"base_point", sphere.base_point()}};
    report["levels"] = {{"criterion_level", cfg.level},
                        {"oracle_depth", depth},
                        {"precision", r + cfg.level + 4}};
    report["verdict"] = to_json(result.final);
    Json evidence = Json::array();
    for (const auto& v : routes) evidence.push_back(to_json(v));
    report["evidence"] = std::move(evidence);
    report["consistent"] = result.consistent;
    report.emit(out);
  } else {
    out << "map: " << f.describe() << "\nsphere: r = " << sphere.r() << ", a = " << sphere.a()
        << " (base point " << sphere.base_point() << ")\n";
    for (const auto& v : routes) print_verdict(out, to_string(v.method), v);
    print_verdict(out, "verdict", result.final);
    if (!result.consistent) out << "warning: routes disagree\n";
  }
  if (!result.consistent) return kInconclusive;
  return exit_code_for(result.final);
}

int cmd_monomial(std::uint64_t s, unsigned r, const std::string& u_text, bool cross_check,
                 const RunConfig& cfg, bool depth_given, std::ostream& out) {
  const PerturbedMonomial pm(s, r, map_from_text(u_text));
  const Verdict decided = monomial_decide(pm);
  const std::uint64_t u1 = pm.u.eval(1, 1);
  const bool congruence = invariance_congruence(pm);

  std::optional<Verdict> oracle;
  std::optional<Verdict> larin;
  bool agree = true;
  unsigned depth = 0;
  if (cross_check) {
    depth = sphere_depth(cfg, depth_given, r);
    oracle = oracle_sphere_ergodic(pm.map(), pm.sphere(), depth);
    agree = oracle->accepts() == decided.accepts();
    larin = monomial_larin_cross_check(pm);
    if (larin) agree = agree && larin->accepts() == decided.accepts();
  }

  Report report("thm41", cfg);
  if (report.json()) {
    report.inputs() = {{"s", s}, {"r", r}, {"u", pm.u.describe()}, {"map", pm.map().describe()}};
    report["clauses"] = {{"s_mod_4", s % 4},
                         {"s_clause", s % 4 == 1},
                         {"u(1)_mod_2", u1},
                         {"u_clause", u1 == 1},
                         {"invariance_congruence", congruence}};
    report["verdict"] = to_json(decided);
    if (cross_check) {
      report["levels"] = {{"oracle_depth", depth}};
      report["oracle"] = to_json(*oracle);
      if (larin) report["larin"] = to_json(*larin);
      report["consistent"] = agree;
    }
    report.emit(out);
  } else {
    out << "f(x) = x^" << s << " + 2^" << (r + 1) << " * (" << pm.u.describe() << ") on S(2^-" << r
        << ", 1)\n"
        << "  s mod 4 = " << s % 4 << (s % 4 == 1 ? "  (holds)" : "  (fails)") << '\n'
        << "  u(1) mod 2 = " << u1 << (u1 == 1 ? "  (holds)" : "  (fails)") << '\n'
        << "  s + 2^r C(s,2) + 2u(1) = 3 (mod 4): " << (congruence ? "holds" : "fails") << '\n';
    print_verdict(out, "verdict", decided);
    if (cross_check) {
      print_verdict(out, "sphere oracle", *oracle);
      if (larin) print_verdict(out, "mod-8 conjugate", *larin);
      out << (agree ? "cross-check: agree\n" : "cross-check: DISAGREE\n");
    }
  }
  if (!agree) return kInconclusive;
  return exit_code_for(decided);
}

int cmd_vdp(const MapSource& src, const RunConfig& cfg, unsigned level, std::ostream& out) {
  if (level > 20) throw UsageError("vdp --level must be at most 20");
  if (level >= cfg.precision) throw UsageError("vdp needs --precision above --level");
  const CompatibleMap f = load_map(src);
  const std::uint64_t bound = std::uint64_t{1} << level;
  Json rows = Json::array();
  if (cfg.format != OutputFormat::Json) out << "m,floor_log2,B_m,b_m\n";
  for (std::uint64_t m = 0; m < bound; ++m) {
    const auto entry = try_vdp_entry(f, m, cfg.precision);
    std::string b_text;
    std::uint64_t B = 0;
    if (const auto* e = std::get_if<VdpEntry>(&entry)) {
      B = e->B.residue();
      b_text = e->indeterminate ? "indeterminate" : std::to_string(e->b.residue());
    } else {
      B = std::get<LipschitzViolation>(entry).B.residue();
      b_text = "not-divisible";
    }
    if (cfg.format == OutputFormat::Json) {
      rows.push_back({{"m", m}, {"floor_log2", floor_log2(m)}, {"B_m", B}, {"b_m", b_text}});
    } else {
      out << m << ',' << floor_log2(m) << ',' << B << ',' << b_text << '\n';
    }
  }
  if (cfg.format == OutputFormat::Json) {
    Report report("vdp", cfg);
    report.inputs() = {{"map", f.describe()}};
    report["levels"] = {{"level", level}, {"precision", cfg.precision}};
    report["coefficients"] = std::move(rows);
    report.emit(out);
  }
  return kErgodic;
}

int cmd_orbit(const MapSource& src, const RunConfig& cfg, unsigned r, long long a, unsigned t,
              std::ostream& out) {
  const SphereSpec sphere(r, a);
  const CompatibleMap f = load_map(src);
  const auto orbit = sphere_orbit(f, sphere, t);
  if (cfg.format == OutputFormat::Json) {
    Report report("orbit", cfg);
    report.inputs() = {{"map", f.describe()}, {"r", sphere.r()}, {"a", sphere.a()}, {"t", t}};
    report["modulus_exponent"] = r + 1 + t;
    report["orbit"] = orbit;
    report.emit(out);
  } else {
    out << "step,residue\n";
    for (std::size_t i = 0; i < orbit.size(); ++i) out << i << ',' << orbit[i] << '\n';
  }
  return kErgodic;
}

int cmd_cycles(const MapSource& src, const RunConfig& cfg, unsigned k, std::ostream& out,
               std::ostream& err) {
  const CompatibleMap f = load_map(src);
  const CycleStructure cs = cycle_structure(f, k);
  if (cfg.format == OutputFormat::Json) {
    Report report("cycles", cfg);
    report.inputs() = {{"map", f.describe()}, {"k", k}};
    report["structure"] = to_json(cs);
    report.emit(out);
  } else {
    out << "length,representative\n";
    for (const auto& c : cs.cycles) out << c.length << ',' << c.representative << '\n';
    if (cs.collision) {
      err << "not bijective mod 2^" << k << ": f(" << cs.collision->first << ") = f("
          << cs.collision->second << ")\n";
    }
  }
  return cs.bijective() ? kErgodic : kNotErgodic;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ergodicity and measure-preservation checks for 1-Lipschitz maps of the 2-adic integers", "tadic"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  RunConfig cfg;
  MapSource src;
  bool json = false;
  unsigned level = 0;
  unsigned depth = 0;
  unsigned r = 1;
  long long a = 0;
  unsigned t = 4;
  unsigned k = 3;
  std::uint64_t s = 1;
  std::string u_text = "1";
  bool cross_check = false;

  const auto add_map = [&](CLI::App* sub) {
    sub->add_option("--map", src.text, "map expression in x");
    sub->add_option("--map-file", src.file, "file holding a map expression");
    sub->add_flag("--json", json, "emit a JSON report");
    sub->add_option("--precision", cfg.precision, "upper bound on working precision (bits)")
        ->check(CLI::Range(1U, 64U));
  };

  auto* lip = app.add_subcommand("check-lipschitz", "bounded 1-Lipschitz check via van der Put coefficients");
  add_map(lip);
  lip->add_option("--level", level, "scan indices m < 2^level (default 12)");

  auto* mp = app.add_subcommand("check-mp", "measure preservation via bijectivity mod 2^k");
  add_map(mp);
  mp->add_option("--oracle-depth", depth, "largest k checked (default 12)");

  auto* erg = app.add_subcommand("check-ergodic", "ergodicity on Z_2");
  add_map(erg);
  erg->add_option("--level", level, "criterion level N (default 10)");
  erg->add_option("--oracle-depth", depth, "oracle depth k (default 12)");

  auto* sph = app.add_subcommand("check-sphere", "ergodicity on the sphere S_{2^-r}(a)");
  add_map(sph);
  sph->add_option("--r", r, "radius exponent r >= 1")->required();
  sph->add_option("--a", a, "center (any integer, reduced mod 2^r)")->required();
  sph->add_option("--level", level, "criterion level N (default 10)");
  sph->add_option("--oracle-depth", depth, "oracle depth t (default min(12, 19 - r))");

  auto* mono = app.add_subcommand("thm41", "perturbed monomial x^s + 2^(r+1) u(x) on S_{2^-r}(1)");
  mono->alias("monomial");
  mono->add_option("--s", s, "exponent s >= 1")->required();
  mono->add_option("--r", r, "radius exponent r >= 1")->required();
  mono->add_option("--u", u_text, "perturbation u as a map expression (default 1)");
  mono->add_flag("--cross-check", cross_check, "also run the exhaustive sphere oracle");
  mono->add_option("--oracle-depth", depth, "oracle depth t (default min(12, 19 - r))");
  mono->add_flag("--json", json, "emit a JSON report");

  auto* vdp = app.add_subcommand("vdp", "van der Put coefficient table as CSV");
  add_map(vdp);
  vdp->add_option("--level", level, "indices m < 2^level (default 6)");

  auto* orb = app.add_subcommand("orbit", "orbit of the sphere base point as CSV");
  add_map(orb);
  orb->add_option("--r", r, "radius exponent r >= 1")->required();
  orb->add_option("--a", a, "center")->required();
  orb->add_option("--t", t, "work mod 2^(r+1+t) (default 4)");

  auto* cyc = app.add_subcommand("cycles", "cycle structure of f mod 2^k as CSV");
  add_map(cyc);
  cyc->add_option("--k", k, "modulus exponent k <= 20")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }

  cfg.format = json ? OutputFormat::Json : OutputFormat::Text;
  const bool depth_given = depth != 0;
  try {
    if (lip->parsed()) return cmd_check_lipschitz(src, cfg, level ? level : 12, out);
    if (mp->parsed()) {
      if (depth_given) cfg.depth = depth;
      return cmd_check_mp(src, cfg, out);
    }
    if (erg->parsed()) {
      if (level) cfg.level = level;
      if (depth_given) cfg.depth = depth;
      return cmd_check_ergodic(src, cfg, out);
    }
    if (sph->parsed()) {
      if (level) cfg.level = level;
      if (depth_given) cfg.depth = depth;
      return cmd_check_sphere(src, cfg, r, a, depth_given, out);
    }
    if (mono->parsed()) {
      if (depth_given) cfg.depth = depth;
      return cmd_monomial(s, r, u_text, cross_check, cfg, depth_given, out);
    }
    if (vdp->parsed()) {
      if (cfg.format == OutputFormat::Text) cfg.format = OutputFormat::Csv;
      return cmd_vdp(src, cfg, level ? level : 6, out);
    }
    if (orb->parsed()) return cmd_orbit(src, cfg, r, a, t, out);
    if (cyc->parsed()) return cmd_cycles(src, cfg, k, out, err);
  } catch (const ParseError& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kInputError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace tadic::cli
