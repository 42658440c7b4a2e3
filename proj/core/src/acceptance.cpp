#include "hilbloc/acceptance.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "hilbloc/errors.hpp"
#include "hilbloc/flag_models.hpp"
#include "hilbloc/node_deform.hpp"
#include "hilbloc/tangent.hpp"

namespace hilbloc {

namespace {

constexpr size_t kMaxProblems = 12;

struct Run {
  CriterionResult& res;
  size_t problem_count = 0;

  void problem(const std::string& p) {
    ++problem_count;
    if (res.problems.size() < kMaxProblems) res.problems.push_back(p);
  }
  void check(bool ok, const std::string& what) {
    if (!ok) problem(what);
  }
  template <class T>
  void fact(const std::string& k, const T& v) {
    std::ostringstream os;
    os << v;
    res.facts[k] = os.str();
  }
};

Rational nonzero_rational(std::mt19937_64& rng) {
  int num = static_cast<int>(rng() % 19) - 9;
  if (num == 0) num = 7;
  Rational a(num, static_cast<int>(rng() % 5) + 1);
  a.canonicalize();
  return a;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string pat_key(const FlagPattern& p) { return p.to_string(); }

// Models are shared by criteria 3 to 5.
struct ModelCache {
  std::map<std::string, LocalModel> derived, expected;
  const LocalModel& d(const FlagPattern& p) {
    auto it = derived.find(pat_key(p));
    if (it == derived.end()) it = derived.emplace(pat_key(p), local_model(p)).first;
    return it->second;
  }
  const LocalModel& e(const FlagPattern& p) {
    auto it = expected.find(pat_key(p));
    if (it == expected.end()) it = expected.emplace(pat_key(p), expected_model(p)).first;
    return it->second;
  }
};

void node_classification(Run& run, uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = CurveRing::node(CoeffAlgebra::rationals(), 20);
  std::mt19937_64 rng(seed * 1000003 + 1);
  int q = 0, c = 0;
  for (int m = 2; m <= 8; ++m)
    for (int i = 1; i <= m; ++i) {
      std::string tag = "m=" + std::to_string(m) + " i=" + std::to_string(i);
      auto Q = node_q_ideal(r, m, i);
      run.check(colength(Q) == static_cast<size_t>(m), "colength Q " + tag);
      auto cls = classify_node_ideal(Q);
      run.check(cls.kind == NodeClass::Kind::TypeQ && cls.i == i && cls.m == m,
                "classify Q " + tag + " -> " + cls.to_string());
      ++q;
      if (i == m) continue;
      for (int t = 0; t < 5; ++t) {
        Rational a = nonzero_rational(rng);
        auto C = node_c_ideal(r, m, i, a);
        run.check(colength(C) == static_cast<size_t>(m), "colength C " + tag + " a=" + a.get_str());
        auto got = classify_node_ideal(C);
        run.check(got.kind == NodeClass::Kind::TypeC && got.i == i && got.m == m && got.a == a,
                  "classify C " + tag + " a=" + a.get_str() + " -> " + got.to_string());
        ++c;
      }
    }
  run.fact("q_ideals", q);
  run.fact("c_ideals", c);
  run.check(since(t0) < 30, "runtime above 30 s");
}

void flat_relations(Run& run, uint64_t seed) {
  auto S = CoeffAlgebra::artin({"u", "v"}, 3);
  int shapes = 0, samples = 0, flat = 0, hold = 0, rejected = 0;
  for (int m = 1; m <= 6; ++m)
    for (int i = 1; i <= m; ++i)
      for (bool relative : {false, true}) {
        DeformShape sh{m, i, relative};
        std::string tag = "m=" + std::to_string(m) + " i=" + std::to_string(i) +
                          (relative ? " relative" : " absolute");
        auto d = derive_flat_relations(sh);
        auto p = closed_form_flat_relations(sh);
        run.check(same_ideal(d.ring, d.equations, p.equations), "derived != closed form " + tag);
        auto rep = verify_flat_iff(sh, S, 50, seed + static_cast<uint64_t>(100 * m + 10 * i + relative));
        for (auto& cx : rep.counterexamples) run.problem(tag + ": " + cx);
        run.check(rep.flat >= 50 && rep.relations_hold >= 50, "too few flat samples " + tag);
        ++shapes;
        samples += rep.samples;
        flat += rep.flat;
        hold += rep.relations_hold;
        rejected += rep.rejected;
      }
  run.fact("shapes", shapes);
  run.fact("samples", samples);
  run.fact("flat_samples", flat);
  run.fact("relation_samples", hold);
  run.fact("rejected_samples", rejected);
}

void flag_models(Run& run, ModelCache& cache) {
  int n = 0;
  for (auto& ap : acceptance_patterns()) {
    auto p = FlagPattern::parse(ap.pattern);
    auto& d = cache.d(p);
    auto& e = cache.e(p);
    std::string tag = p.to_string() + " " + p.word();
    run.check(models_equivalent(d, e), "derived != expected " + tag);
    run.check(d.equations.size() == ap.equations,
              "derived has " + std::to_string(d.equations.size()) + " equations " + tag);
    run.check(e.equations.size() == ap.equations,
              "expected has " + std::to_string(e.equations.size()) + " equations " + tag);
    ++n;
  }
  // A-word with h = 3 blocks at m = 6
  auto a = FlagPattern::parse("6;3,3,2,2,1,1");
  auto& d = cache.d(a);
  run.check(d.equations.size() == 4 && d.params.size() == 7 + 4, "A1A2A3 counts");
  run.fact("patterns", n);
  run.fact("a_word_params", d.params.size());
  run.fact("a_word_equations", d.equations.size());
}

void lci(Run& run, ModelCache& cache) {
  int n = 0;
  size_t maxp = 0;
  for (auto& ap : acceptance_patterns()) {
    auto p = FlagPattern::parse(ap.pattern);
    auto& d = cache.d(p);
    run.check(check_lci(d), "not lci " + p.to_string());
    maxp = std::max(maxp, d.params.size());
    ++n;
  }
  for (auto t : {"5;2,2,1,1", "6;3,3,2,2"}) {
    auto p = FlagPattern::parse(t);
    auto& e = cache.e(p);
    auto t0 = std::chrono::steady_clock::now();
    bool reg = e.equations.size() == 2 && is_regular_sequence(e.ring, e.equations);
    double s = since(t0);
    run.check(reg, std::string("not a regular sequence ") + t);
    run.check(s < 60, std::string("regular sequence test above 60 s ") + t);
    run.fact(std::string("regular_sequence ") + t, reg ? "yes" : "no");
  }
  run.fact("models", n);
  run.fact("max_params", maxp);
}

void model_points(Run& run, ModelCache& cache, uint64_t seed) {
  auto S = CoeffAlgebra::artin({"u", "v"}, 3);
  int fwd = 0, bwd = 0, pert = 0, n = 0;
  for (auto& ap : acceptance_patterns()) {
    auto p = FlagPattern::parse(ap.pattern);
    auto v = validate_model_points(p, cache.e(p), S, 50, seed, &cache.d(p));
    std::string tag = p.to_string();
    for (auto& c : v.counterexamples) run.problem(tag + ": " + c);
    run.check(v.forward == 50 && v.forward_pass == v.forward, "forward points " + tag);
    run.check(v.backward_pass == v.backward, "backward points " + tag);
    run.check(v.perturbed > 0 && v.perturbed_rejected == v.perturbed, "perturbed point accepted " + tag);
    fwd += v.forward_pass;
    bwd += v.backward_pass;
    pert += v.perturbed_rejected;
    ++n;
  }
  run.fact("patterns", n);
  run.fact("forward_pass", fwd);
  run.fact("backward_pass", bwd);
  run.fact("perturbed_rejected", pert);
}

void strata(Run& run) {
  for (int m = 1; m <= 7; ++m) {
    auto a = enumerate_strata(m, m);
    auto b = strata_by_containment(m, m);
    run.check(a == b, "strata differ at m=" + std::to_string(m));
    run.fact("count m=" + std::to_string(m), a.size());
  }
}

void cusp_table(Run& run, uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 7);
  auto r = cusp_ring(20);
  int ideals = 0, pairs = 0;
  for (int m = 0; m <= 6; ++m) {
    for (auto& c : colength_table(m, nonzero_rational(rng))) {
      size_t got = colength(c.ideal(r));
      run.check(got == static_cast<size_t>(colength_formula(c)),
                c.to_string() + " colength " + std::to_string(got));
      ++ideals;
    }
    for (int k : {1, 2}) {
      for (int t = 0; t < 20; ++t) {
        Rational a = nonzero_rational(rng), b = nonzero_rational(rng);
        while (b == a) b = nonzero_rational(rng);
        run.check(distinctness(m, k, a, b), "not distinct m=" + std::to_string(m) + " k=" +
                                                std::to_string(k) + " " + a.get_str() + ", " + b.get_str());
        ++pairs;
      }
      run.check(!distinctness(m, k, 2, 2), "equal parameters reported distinct");
    }
  }
  run.fact("ideals", ideals);
  run.fact("distinct_pairs", pairs);
}

void cusp_classification(Run& run, uint64_t seed) {
  std::mt19937_64 rng(seed * 104729 + 3);
  auto r = cusp_ring(20);
  std::map<std::string, int> kinds;
  for (int t = 0; t < 200; ++t) {
    auto I = random_generator_ideal(r, rng, 4);
    try {
      auto c = classify_cusp_ideal(I);
      run.check(ideal_equal(I, c.ideal(r)), "not faithful " + I.to_string() + " -> " + c.to_string());
      std::string k = c.to_string();
      k = k.find(',') != std::string::npos ? "two_gen" : k.find('+') != std::string::npos ? "binom" : "monomial";
      ++kinds[k];
    } catch (const TheoremViolation& e) {
      run.problem(I.to_string() + ": " + e.what());
    }
  }
  for (auto& [k, v] : kinds) run.fact(k, v);
}

void flat_limits(Run& run) {
  int n = 0;
  for (int m = 0; m <= 5; ++m)
    for (int k : {1, 2})
      for (auto dir : {LimitDirection::ToZero, LimitDirection::ToInfinity}) {
        auto want = expected_limit(m, k, dir);
        auto cert = flat_limit_certify(m, k, dir, want);
        std::string tag = "m=" + std::to_string(m) + " k=" + std::to_string(k) +
                          (dir == LimitDirection::ToZero ? " a->0 " : " a->inf ") + want.to_string();
        run.check(cert.certified(), "not certified " + tag);
        ++n;
      }
  run.fact("limits", n);
}

void tangents(Run& run) {
  auto r = cusp_ring(24);
  for (int m = 0; m <= 5; ++m) {
    for (bool shifted : {false, true}) {
      IdealGens I(r, {RingElement::monomial(r, 1, shifted ? m + 1 : m), RingElement::monomial(r, 0, m + 2)});
      size_t want = 2 * m + 3 + (shifted ? 1 : 0);
      auto mf = hom_dim(I, HomPath::MatrixFactorization);
      auto sy = hom_dim(I, HomPath::Syzygy);
      run.check(mf.dimension == want && sy.dimension == want,
                I.to_string() + " dims " + std::to_string(mf.dimension) + "/" + std::to_string(sy.dimension));
      run.fact("hom " + I.to_string(), mf.dimension);
      if (shifted || m > 4) continue;
      auto listed = explicit_kernel_basis(r, m);
      for (auto& h : listed) run.check(mf.in_kernel(h), "explicit tuple outside the kernel, m=" + std::to_string(m));
      auto st = stabilize(I);
      auto R = r->with_trunc(st.trunc);
      QuotientSpace Q(IdealGens(R, {I.gens[0].rehost(R), I.gens[1].rehost(R)}), st.trunc);
      std::vector<std::vector<Rational>> vecs;
      for (auto& h : listed) {
        auto a = Q.coordinates(h[0].rehost(R)), b = Q.coordinates(h[1].rehost(R));
        a.insert(a.end(), b.begin(), b.end());
        vecs.push_back(a);
      }
      run.check(rank_of(vecs) == static_cast<int>(want) && listed.size() == want,
                "explicit basis not independent, m=" + std::to_string(m));
    }
  }
  std::vector<Rational> samples = {Rational(-2), Rational(1, 2), Rational(3)};
  auto two = p1_scan(2, samples), three = p1_scan(3, samples);
  auto expect = [&](const std::vector<ScanPoint>& s, size_t generic, size_t at0, size_t atinf, int c) {
    int jumps = 0;
    for (auto& p : s) {
      size_t want = p.point == "a=0" ? at0 : p.point == "a=inf" ? atinf : generic;
      run.check(p.dimension == want, "scan " + std::to_string(c) + " " + p.point + " " + p.ideal);
      jumps += p.dimension > generic;
      run.fact("scan" + std::to_string(c) + " " + p.point + " " + p.ideal, p.dimension);
    }
    run.check(jumps == 1, "scan " + std::to_string(c) + " has " + std::to_string(jumps) + " jumps");
  };
  expect(two, 2, 3, 2, 2);
  expect(three, 3, 3, 4, 3);
}

}  // namespace

std::vector<AcceptancePattern> acceptance_patterns() {
  std::vector<AcceptancePattern> out;
  auto add = [&](int m, std::vector<int> idx, size_t eq) {
    std::string s = std::to_string(m) + ";";
    for (size_t j = 0; j < idx.size(); ++j) s += (j ? "," : "") + std::to_string(idx[j]);
    for (auto& o : out)
      if (o.pattern == s) return;
    out.push_back({s, eq});
  };
  for (int m = 2; m <= 6; ++m)
    for (int i = 1; i <= m - 1; ++i) {
      add(m, {i, i}, 0);
      if (i >= 2) add(m, {i, i - 1}, 0);
    }
  for (int m = 3; m <= 6; ++m)
    for (int i = 2; i <= m - 1; ++i) add(m, {i, i, i - 1}, 1);
  for (int m : {5, 6, 7}) {
    int i = m / 2;
    add(m, {i, i, i, i}, 0);
    add(m, {i, i, i, i - 1}, 1);
    add(m, {i, i, i - 1, i - 1}, 2);
    add(m, {i, i - 1, i - 1, i - 1}, 1);
  }
  add(4, {2, 2, 2}, 0);
  add(4, {2, 2, 1, 1}, 2);
  add(3, {2, 2, 1}, 1);
  add(3, {2, 1, 1}, 1);
  add(6, {3, 3, 2, 2, 1, 1}, 4);
  return out;
}

std::vector<std::pair<int, std::string>> acceptance_titles() {
  return {{1, "node classification and colength"},
          {2, "flat relations of the node"},
          {3, "flag local models"},
          {4, "lci certification"},
          {5, "model-point validation"},
          {6, "strata of full flags"},
          {7, "cusp colength table and distinctness"},
          {8, "cusp classification of random ideals"},
          {9, "cusp flat limits"},
          {10, "tangent dimensions"},
          {11, "determinism"}};
}

bool AcceptanceReport::all_pass() const {
  for (auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::string AcceptanceReport::canonical_text() const {
  std::ostringstream os;
  os << "seed " << seed << "\n";
  for (auto& r : results) {
    os << r.id << " " << r.title << ": " << (r.pass ? "PASS" : "FAIL");
    if (!r.failure.empty()) os << " (" << r.failure << ")";
    os << "\n";
    for (auto& [k, v] : r.facts) os << "  " << k << " = " << v << "\n";
    for (auto& p : r.problems) os << "  ! " << p << "\n";
  }
  return os.str();
}

AcceptanceReport run_acceptance(const AcceptanceOptions& opt) {
  AcceptanceReport rep;
  rep.seed = opt.seed;
  ModelCache cache;
  auto wanted = [&](int id) { return opt.only.empty() || opt.only.count(id); };
  for (auto& [id, title] : acceptance_titles()) {
    if (!wanted(id)) continue;
    CriterionResult res;
    res.id = id;
    res.title = title;
    Run run{res};
    auto t0 = std::chrono::steady_clock::now();
    try {
      switch (id) {
        case 1: node_classification(run, opt.seed); break;
        case 2: flat_relations(run, opt.seed); break;
        case 3: flag_models(run, cache); break;
        case 4: lci(run, cache); break;
        case 5: model_points(run, cache, opt.seed); break;
        case 6: strata(run); break;
        case 7: cusp_table(run, opt.seed); break;
        case 8: cusp_classification(run, opt.seed); break;
        case 9: flat_limits(run); break;
        case 10: tangents(run); break;
        case 11: {
          if (!opt.rerun_for_determinism) {
            run.fact("rerun", "skipped");
            break;
          }
          AcceptanceOptions again;
          again.seed = opt.seed;
          again.rerun_for_determinism = false;
          for (auto& r : rep.results) again.only.insert(r.id);
          AcceptanceReport first;
          first.seed = opt.seed;
          first.results = rep.results;
          if (again.only.empty()) {
            for (int k = 1; k <= 10; ++k) again.only.insert(k);
            first = run_acceptance(again);
          }
          auto second = run_acceptance(again);
          run.check(first.canonical_text() == second.canonical_text(), "reports differ between runs");
          run.fact("criteria_compared", again.only.size());
          break;
        }
      }
      res.pass = run.problem_count == 0;
      if (!res.pass) res.failure = "violation";
    } catch (const ResourceCap& e) {
      res.failure = "cap";
      run.problem(e.what());
    } catch (const TheoremViolation& e) {
      res.failure = "violation";
      run.problem(e.what());
    } catch (const std::exception& e) {
      res.failure = "error";
      run.problem(e.what());
    }
    if (run.problem_count > res.problems.size())
      run.fact("problems_total", run.problem_count);
    res.seconds = since(t0);
    if (opt.on_result) opt.on_result(res);
    rep.results.push_back(std::move(res));
  }
  return rep;
}

}  // namespace hilbloc
