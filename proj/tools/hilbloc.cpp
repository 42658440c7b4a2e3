// hilbloc command-line front end. Reports go to stdout as JSON (sorted keys)
// or TSV; diagnostics go to stderr.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hilbloc/acceptance.hpp"
#include "hilbloc/errors.hpp"
#include "hilbloc/flag_models.hpp"
#include "hilbloc/node_deform.hpp"
#include "hilbloc/parse.hpp"
#include "hilbloc/tangent.hpp"
#include "json.hpp"

using json = nlohmann::json;
using namespace hilbloc;

namespace {

enum Exit { kOk = 0, kUsage = 1, kViolation = 2, kCap = 3 };

struct Globals {
  int trunc = 0;
  uint64_t seed = 1;
  std::string seed_source = "default";
  std::string ring = "node";
  size_t max_vars = 16;
  bool tsv = false;
  std::string a;  // value for the symbolic parameter
};

// Flag raised by a command whose checked statement failed.
struct Outcome {
  json result = json::object();
  std::vector<std::string> violations;
};

CurveRingPtr make_curve_ring(const Globals& g) {
  int t = g.trunc > 0 ? g.trunc : 24;
  if (g.ring == "node") return CurveRing::node(CoeffAlgebra::rationals(), t);
  if (g.ring == "cusp") return CurveRing::cusp(CoeffAlgebra::rationals(), t);
  // xy = t over Q[t]/(t^3)
  auto S = CoeffAlgebra::artin({"t"}, 3);
  return CurveRing::node_relative(S, S->param("t"), t);
}

OracleOptions oracle(const Globals& g) {
  OracleOptions o;
  o.start = g.trunc;
  return o;
}

GroebnerOptions groebner(const Globals& g) {
  GroebnerOptions o;
  o.max_vars = g.max_vars;
  return o;
}

IdealGens ideal_arg(const std::string& text, const Globals& g) {
  auto expr = parse_ideal_expr(text);
  std::optional<Rational> a;
  if (!g.a.empty()) a = parse_rational(g.a);
  if (expr.symbolic() && !a) throw Error("the parameter a needs a value here: pass --a VALUE");
  return instantiate(expr, make_curve_ring(g), a);
}

RingElement element_arg(const std::string& text, const Globals& g) {
  auto I = ideal_arg(text, g);
  if (I.gens.size() != 1) throw Error("expected a single element, got " + std::to_string(I.gens.size()));
  return I.gens[0];
}

FlagPattern pattern_arg(int m, const std::string& chain) {
  return FlagPattern::parse(std::to_string(m) + ";" + chain);
}

std::vector<Rational> rationals_arg(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw Error("empty entry in list '" + text + "'");
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  return out;
}

json strings(const std::vector<Poly>& ps) {
  json j = json::array();
  for (auto& p : ps) j.push_back(p.to_string());
  return j;
}

json model_json(const LocalModel& lm) {
  json j;
  j["pattern"] = lm.pattern.to_string();
  j["word"] = lm.pattern.word();
  j["relative"] = lm.relative;
  j["params"] = lm.params;
  j["equations"] = strings(lm.equations);
  j["equation_count"] = lm.equations.size();
  return j;
}

json cusp_json(const CuspCanonicalIdeal& c) {
  static const char* kinds[] = {"pow_y", "x", "x_pow_y", "two_gen", "binom"};
  json j;
  j["ideal"] = c.to_string();
  j["kind"] = kinds[static_cast<int>(c.kind)];
  j["m"] = c.m;
  j["k"] = c.k;
  if (c.kind == CuspCanonicalIdeal::Kind::Binom) j["a"] = c.a.get_str();
  j["colength"] = colength_formula(c);
  return j;
}

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Tables: a "rows" array of objects becomes one line per row; anything else
// is a single row of the top-level keys.
std::string to_tsv(const json& result) {
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& keys, const std::vector<json>& rows) {
    for (size_t i = 0; i < keys.size(); ++i) os << (i ? "\t" : "") << keys[i];
    os << "\n";
    for (auto& r : rows) {
      for (size_t i = 0; i < keys.size(); ++i) os << (i ? "\t" : "") << (r.contains(keys[i]) ? cell(r[keys[i]]) : "");
      os << "\n";
    }
  };
  if (result.contains("rows") && result["rows"].is_array()) {
    std::set<std::string> keys;
    std::vector<json> rows;
    for (auto& r : result["rows"]) {
      for (auto& [k, v] : r.items()) keys.insert(k);
      rows.push_back(r);
    }
    emit({keys.begin(), keys.end()}, rows);
  } else {
    std::vector<std::string> keys;
    for (auto& [k, v] : result.items()) keys.push_back(k);
    emit(keys, {result});
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  if (const char* env = std::getenv("HILBLOC_SEED")) {
    g.seed = std::strtoull(env, nullptr, 10);
    g.seed_source = "env";
  }

  CLI::App app{"Ideals of the node and cusp: colengths, classification, flat relations, flag local models, limits, tangent spaces"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  uint64_t seed_flag = 0;
  app.add_option("--trunc", g.trunc, "starting truncation (0: automatic)")->check(CLI::NonNegativeNumber);
  auto* seed_opt = app.add_option("--seed", seed_flag, "random seed (default 1, or HILBLOC_SEED)");
  app.add_option("--ring", g.ring, "curve ring")->check(CLI::IsMember({"node", "node-rel", "cusp"}));
  app.add_option("--max-vars", g.max_vars, "variable cap for Groebner computations")->check(CLI::PositiveNumber);
  app.add_option("--a", g.a, "value for the symbolic parameter a");
  auto* tsv = app.add_flag("--tsv", g.tsv, "tab-separated output");
  app.add_flag("--json", "JSON output (default)")->excludes(tsv);
  app.fallthrough();

  std::function<Outcome()> run;
  auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

  std::string text, text2, chain, dir = "zero", claim, path = "auto", samples, a_str, b_str, only;
  int m = 0, i = 0, k = 1, depth = 0, trials = 50, col = 2;
  bool relative = false;

  auto* c = sub("colength", "dimension of R/I");
  c->add_option("ideal", text)->required();
  c->callback([&] {
    run = [&] {
      Outcome o;
      auto I = ideal_arg(text, g);
      auto st = stabilize(I, oracle(g));
      o.result["colength"] = st.colength;
      auto qb = quotient_basis(I, st.trunc);
      json basis = json::array();
      for (auto& e : qb.monomials) {
        std::string s = mono_string(e.mono);
        if (!e.smono.empty() && I.ring->coeff()->kind() != CoeffAlgebra::Kind::Rationals) {
          auto ps = monomial_string(*I.ring->coeff()->params(), e.smono);
          if (!ps.empty() && ps != "1") s = s == "1" ? ps : ps + "*" + s;
        }
        basis.push_back(s);
      }
      o.result["basis"] = basis;
      return o;
    };
  });

  auto* mem = sub("member", "is the element in the ideal");
  mem->add_option("element", text)->required();
  mem->add_option("ideal", text2)->required();
  mem->callback([&] {
    run = [&] {
      Outcome o;
      o.result["member"] = member(element_arg(text, g), ideal_arg(text2, g), oracle(g));
      return o;
    };
  });

  auto* cl = sub("classify", "canonical form of a punctual ideal (node or cusp)");
  cl->add_option("ideal", text)->required();
  cl->callback([&] {
    run = [&] {
      Outcome o;
      auto I = ideal_arg(text, g);
      if (g.ring == "cusp") {
        o.result = cusp_json(classify_cusp_ideal(I));
      } else if (g.ring == "node") {
        auto nc = classify_node_ideal(I);
        o.result["class"] = nc.to_string();
        o.result["kind"] = nc.kind == NodeClass::Kind::TypeC ? "C" : nc.kind == NodeClass::Kind::TypeQ ? "Q" : "not punctual";
        o.result["m"] = nc.m;
        o.result["i"] = nc.i;
        if (nc.kind == NodeClass::Kind::TypeC) o.result["a"] = nc.a.get_str();
      } else {
        throw Error("classify works on --ring node or --ring cusp");
      }
      return o;
    };
  });

  auto* rel = sub("relations", "flatness relations of the deformation of (x^{m-i+1}, y^i)");
  rel->add_option("--m", m)->required();
  rel->add_option("--i", i)->required();
  rel->add_flag("--relative", relative, "xy = s instead of xy = 0");
  rel->callback([&] {
    run = [&] {
      Outcome o;
      DeformShape sh{m, i, relative, std::nullopt};
      auto d = derive_flat_relations(sh);
      auto p = closed_form_flat_relations(sh);
      bool eq = same_ideal(d.ring, d.equations, p.equations, groebner(g));
      o.result["derived"] = strings(d.equations);
      o.result["closed_form"] = strings(p.equations);
      o.result["equal"] = eq;
      if (!eq) o.violations.push_back("derived relations differ from the closed form");
      return o;
    };
  });

  auto add_pattern = [&](CLI::App* s) {
    s->add_option("--m", m, "colength of the outermost ideal")->required();
    s->add_option("--chain", chain, "indices level by level, e.g. 2,2,1,1")->required();
  };

  auto* fm = sub("flag-model", "local model derived by elimination");
  add_pattern(fm);
  fm->add_flag("--relative", relative, "relative family (xy = s)");
  fm->callback([&] {
    run = [&] {
      Outcome o;
      o.result = model_json(local_model(pattern_arg(m, chain), relative));
      return o;
    };
  });

  auto* fe = sub("flag-expected", "closed-form local model");
  add_pattern(fe);
  fe->callback([&] {
    run = [&] {
      Outcome o;
      auto p = pattern_arg(m, chain);
      auto e = expected_model(p);
      o.result = model_json(e);
      bool eq = models_equivalent(local_model(p), e, groebner(g));
      o.result["matches_derived"] = eq;
      if (!eq) o.violations.push_back("closed form differs from the derived model");
      return o;
    };
  });

  auto* fv = sub("flag-validate", "check the model on sampled points over Q[u,v]/(deg >= 3)");
  add_pattern(fv);
  fv->add_option("--trials", trials)->check(CLI::PositiveNumber);
  fv->callback([&] {
    run = [&] {
      Outcome o;
      auto p = pattern_arg(m, chain);
      auto d = local_model(p);
      auto model = has_expected_model(p) ? expected_model(p) : d;
      auto v = validate_model_points(p, model, CoeffAlgebra::artin({"u", "v"}, 3), trials, g.seed, &d);
      o.result["pattern"] = p.to_string();
      o.result["model"] = has_expected_model(p) ? "closed form" : "derived";
      o.result["trials"] = v.trials;
      o.result["forward"] = v.forward;
      o.result["forward_pass"] = v.forward_pass;
      o.result["backward"] = v.backward;
      o.result["backward_pass"] = v.backward_pass;
      o.result["perturbed"] = v.perturbed;
      o.result["perturbed_rejected"] = v.perturbed_rejected;
      o.result["counterexamples"] = v.counterexamples;
      for (auto& cx : v.counterexamples) o.violations.push_back(cx);
      if (v.perturbed_rejected != v.perturbed) o.violations.push_back("a perturbed point was accepted");
      return o;
    };
  });

  auto* lc = sub("lci-check", "regular sequence and dimension of the derived model");
  add_pattern(lc);
  lc->add_flag("--relative", relative, "relative family (xy = s)");
  lc->callback([&] {
    run = [&] {
      Outcome o;
      auto d = local_model(pattern_arg(m, chain), relative);
      bool ok = check_lci(d, groebner(g));
      o.result["pattern"] = d.pattern.to_string();
      o.result["lci"] = ok;
      o.result["params"] = d.params.size();
      o.result["equations"] = d.equations.size();
      if (!ok) o.violations.push_back("not a local complete intersection");
      return o;
    };
  });

  auto* st = sub("strata", "chains of monomial ideals (x^{n-i+1}, y^i) down from colength m");
  st->add_option("--m", m)->required();
  st->add_option("--depth", depth, "number of levels (default m)");
  st->callback([&] {
    run = [&] {
      Outcome o;
      int dp = depth > 0 ? depth : m;
      auto a = enumerate_strata(m, dp);
      bool eq = a == strata_by_containment(m, dp);
      json rows = json::array();
      for (auto& p : a) rows.push_back({{"pattern", p.to_string()}, {"word", p.word()}});
      o.result["rows"] = rows;
      o.result["count"] = a.size();
      o.result["matches_containment"] = eq;
      if (!eq) o.violations.push_back("enumeration differs from the containment search");
      return o;
    };
  });

  auto* af = sub("assoc-form", "unit times canonical element (cusp)");
  af->add_option("element", text)->required();
  af->callback([&] {
    run = [&] {
      Outcome o;
      if (g.ring != "cusp") throw Error("assoc-form needs --ring cusp");
      auto f = associate_normal_form(element_arg(text, g));
      o.result = cusp_json(f.canonical);
      o.result.erase("colength");
      o.result["canonical"] = o.result["ideal"];
      o.result.erase("ideal");
      o.result["unit_witness"] = f.unit_witness.to_string();
      o.result["trunc"] = f.trunc;
      return o;
    };
  });

  auto* lim = sub("limit", "flat limit of (x y^m + a y^{m+k}) as a -> 0 or infinity (cusp)");
  lim->add_option("--m", m)->required();
  lim->add_option("--k", k)->required()->check(CLI::IsMember({1, 2}));
  lim->add_option("--dir", dir)->check(CLI::IsMember({"zero", "inf"}));
  lim->add_option("--claim", claim, "claimed limit ideal (default: the predicted one)");
  lim->callback([&] {
    run = [&] {
      Outcome o;
      auto d = dir == "zero" ? LimitDirection::ToZero : LimitDirection::ToInfinity;
      CuspCanonicalIdeal want = expected_limit(m, k, d);
      if (!claim.empty()) {
        Globals cg = g;
        cg.ring = "cusp";
        want = classify_cusp_ideal(ideal_arg(claim, cg));
      }
      auto cert = flat_limit_certify(m, k, d, want, g.seed);
      o.result["claimed"] = want.to_string();
      o.result["colength_match"] = cert.colength_match;
      o.result["generators_in"] = cert.generators_in;
      o.result["unique"] = cert.unique;
      o.result["certified"] = cert.certified();
      o.result["notes"] = cert.notes;
      if (!cert.certified()) o.violations.push_back("limit not certified");
      return o;
    };
  });

  auto* di = sub("distinct", "do two parameters give different ideals (cusp)");
  di->add_option("--m", m)->required();
  di->add_option("--k", k)->required()->check(CLI::IsMember({1, 2}));
  di->add_option("--a", a_str)->required();
  di->add_option("--b", b_str)->required();
  di->callback([&] {
    run = [&] {
      Outcome o;
      o.result["distinct"] = distinctness(m, k, parse_rational(a_str), parse_rational(b_str));
      return o;
    };
  });

  auto* tg = sub("tangent", "dim Hom(I, R/I) (cusp)");
  tg->add_option("ideal", text)->required();
  tg->add_option("--path", path)->check(CLI::IsMember({"auto", "mf", "syzygy"}));
  tg->callback([&] {
    run = [&] {
      Outcome o;
      if (g.ring != "cusp") throw Error("tangent needs --ring cusp");
      auto hp = path == "mf" ? HomPath::MatrixFactorization : path == "syzygy" ? HomPath::Syzygy : HomPath::Auto;
      auto hs = hom_dim(ideal_arg(text, g), hp);
      o.result["dim"] = hs.dimension;
      o.result["path"] = hs.path;
      json basis = json::array();
      for (auto& h : hs.basis) {
        json t = json::array();
        for (auto& e : h) t.push_back(e.to_string());
        basis.push_back(t);
      }
      o.result["basis"] = basis;
      return o;
    };
  });

  auto* sc = sub("scan-p1", "tangent dimensions along the punctual P^1 (cusp, colength 2 or 3)");
  sc->add_option("--colength", col)->check(CLI::IsMember({2, 3}));
  sc->add_option("--samples", samples, "comma-separated nonzero rationals")->required();
  sc->callback([&] {
    run = [&] {
      Outcome o;
      auto pts = p1_scan(col, rationals_arg(samples));
      json rows = json::array();
      size_t base = static_cast<size_t>(col);
      int jumps = 0;
      for (auto& p : pts) {
        rows.push_back({{"point", p.point}, {"ideal", p.ideal}, {"dim", p.dimension}});
        jumps += p.dimension > base;
      }
      o.result["rows"] = rows;
      o.result["singular_points"] = jumps;
      return o;
    };
  });

  auto* ac = sub("acceptance", "run the acceptance criteria");
  ac->add_option("--only", only, "comma-separated criterion ids");
  ac->callback([&] {
    run = [&] {
      Outcome o;
      AcceptanceOptions opt;
      opt.seed = g.seed;
      if (!only.empty())
        for (auto& q : rationals_arg(only)) opt.only.insert(static_cast<int>(q.get_num().get_si()));
      opt.on_result = [](const CriterionResult& r) {
        std::fprintf(stderr, "criterion %d %s: %s (%.1fs)\n", r.id, r.title.c_str(), r.pass ? "pass" : "FAIL", r.seconds);
      };
      auto rep = run_acceptance(opt);
      json rows = json::array();
      bool caps_only = true;
      for (auto& r : rep.results) {
        json facts = json::object();
        for (auto& [kk, v] : r.facts) facts[kk] = v;
        rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"failure", r.failure},
                        {"facts", facts}, {"problems", r.problems}});
        if (!r.pass) {
          o.violations.push_back("criterion " + std::to_string(r.id) + " failed");
          caps_only = caps_only && r.failure == "cap";
        }
      }
      o.result["rows"] = rows;
      o.result["all_pass"] = rep.all_pass();
      if (!o.violations.empty() && caps_only) throw ResourceCap("acceptance stopped at a resource cap");
      return o;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (seed_opt->count() > 0) {
    g.seed = seed_flag;
    g.seed_source = "flag";
  }

  json report;
  json cmd = json::array();
  for (int j = 1; j < argc; ++j) cmd.push_back(argv[j]);
  report["command"] = cmd;
  report["config"] = {{"trunc", g.trunc}, {"seed", g.seed}, {"seed_source", g.seed_source},
                      {"ring", g.ring}, {"max_vars", g.max_vars}};
  int rc = kOk;
  try {
    Outcome o = run();
    report["result"] = o.result;
    report["violations"] = o.violations;
    if (!o.violations.empty()) rc = kViolation;
  } catch (const ResourceCap& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    report["error"] = e.what();
    report["violations"] = json::array();
    rc = kCap;
  } catch (const TheoremViolation& e) {
    std::cerr << "violation: " << e.what() << "\n";
    report["violations"] = {e.what()};
    rc = kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (g.tsv) {
    std::cout << to_tsv(report.contains("result") ? report["result"] : json::object());
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return rc;
}
