// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "charpoly/error.hpp"
#include "charpoly/forms.hpp"
#include "charpoly/graded.hpp"
#include "charpoly/groebner.hpp"
#include "charpoly/linalg.hpp"
#include "charpoly/prep.hpp"
#include "charpoly/problem.hpp"
#include "corpus.hpp"
#include "oracle.hpp"

using namespace charpoly;
using namespace charpoly::linalg;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::set<std::string> vert_set(const FSubset& d) {
  std::set<std::string> s;
  for (const auto& v : d.vertices()) s.insert(point_to_string(v));
  return s;
}

std::string show(const std::set<std::string>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? "; (" : "(") + x + ")";
  return out + "}";
}

QPoint P(std::initializer_list<std::pair<long, long>> xs) {
  QPoint p;
  for (auto [n, d] : xs) p.push_back(make_rational(n, d));
  return p;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

Outcome dependent_generators() {
  Outcome o;
  auto fr = Frame::make({"u1", "u2"}, {"y1", "y2"}, Field::rationals());
  Poly f1 = parse_poly("y1^2 + u1^3", fr), f2 = parse_poly("y2^3 + u2^7", fr);
  struct Case {
    std::string name;
    std::vector<Poly> gens;
    std::set<std::string> expected;
  };
  std::vector<Case> cases = {
      {"f", {f1, f2}, {"3/2,0", "0,7/3"}},
      {"g", {f1, f2 + f1}, {"3/2,0", "0,7/2"}},
      {"h", {f1, f2 + parse_poly("u2^2", fr) * f1}, {"3/2,0", "0,2", "1,2/3"}},
  };
  std::optional<FSubset> common;
  for (const auto& c : cases) {
    FSubset d = poly_of_system(c.gens);
    auto got = vert_set(d);
    o.require(got == c.expected, c.name + ": vertices " + show(got) + ", expected " + show(c.expected));
    if (got != c.expected && c.name == "h") {
      // Explain the discrepancy with exact arithmetic.
      LinearForm l({make_rational(2, 3), make_rational(1, 2)});
      o.note("h: L = (2/3,1/2) gives L(3/2,0) = " + rational_to_string(l(P({{3, 2}, {0, 1}}))) +
             ", L(0,2) = " + rational_to_string(l(P({{0, 1}, {2, 1}}))) + ", L(1,2/3) = " +
             rational_to_string(l(P({{1, 1}, {2, 3}}))) +
             ", so (1,2/3) lies on the edge between the other two and is not extremal; " +
             "is_vertex(1,2/3) = " + (is_vertex(d, P({{1, 1}, {2, 3}})).is_vertex ? "true" : "false") +
             "; the point set itself is contained in the computed polyhedron: " +
             (d.contains(P({{1, 1}, {2, 3}})) ? "yes" : "no"));
    }
    PrepState st = prepare(c.gens);
    o.require(st.status == "prepared", c.name + ": prepare status " + st.status);
    if (!common) common = st.polyhedron;
    o.require(st.polyhedron == *common, c.name + ": prepared polyhedron " + st.polyhedron.to_string() +
                                            " differs from " + common->to_string());
  }
  o.note("all three prepare to " + common->to_string());
  return o;
}

Outcome preparation_example() {
  Outcome o;
  auto fr = Frame::make({"u1", "u2"}, {"y1", "y2"}, Field::prime(2));
  std::vector<Poly> f = {parse_poly("y1^2", fr), parse_poly("y2^4 + u1^2*u2^2*y1^2 + u1^8*u2^8", fr)};
  QPoint v = P({{1, 1}, {1, 1}});  // A' / (p^2 - p)
  FSubset d0 = poly_of_system(f);
  o.require(vert_set(d0).count("1,1") == 1, "(1,1) is a vertex of the initial polyhedron " + d0.to_string());
  auto nr = normalize_at_vertex(f, v);
  FSubset d1 = poly_of_system(nr.gens);
  o.require(vert_set(d1).count("1,1") == 0, "(1,1) eliminated, got " + d1.to_string());
  o.require(nr.gens[1] == parse_poly("y2^4 + u1^8*u2^8", fr), "g2 = y2^4 + u1^8*u2^8, got " + nr.gens[1].to_string());
  auto w = vertex_solvable(nr.gens, P({{2, 1}, {2, 1}}));
  o.require(w.has_value(), "vertex (2,2) solvable");
  if (w) o.require(w->lambdas[1].is_one() && w->lambdas[0].is_zero(), "lambda = (0, 1)");
  PrepState st = prepare(f);
  o.require(st.status == "prepared" && st.polyhedron.empty(), "final polyhedron empty, got " + st.polyhedron.to_string());
  for (const auto& s : st.substitution_strings()) o.note(s);
  return o;
}

Outcome translation_cycle() {
  Outcome o;
  auto fr = Frame::make({"u1", "u2"}, {"y"}, Field::prime(2));
  std::vector<Poly> f = {parse_poly("y^2 + y^4 + u1^4 + u2^7", fr)};
  PrepareOptions plain;
  plain.generalized = false;
  PrepState a = prepare(f, plain);
  std::vector<std::string> cyc;
  for (const auto& v : a.cycle) cyc.push_back(point_to_string(v));
  o.require(a.status == "budget-exhausted", "plain status budget-exhausted, got " + a.status);
  o.require(cyc == std::vector<std::string>{"2,0", "4,0", "8,0"}, "cycle (2,0) -> (4,0) -> (8,0)");
  PrepState b = prepare(f);
  o.require(b.status == "prepared", "generalized status prepared, got " + b.status);
  o.require(vert_set(b.polyhedron) == std::set<std::string>{"0,7/2"}, "final vertices {(0,7/2)}, got " + b.polyhedron.to_string());
  Poly h = parse_poly("y^2 + u1^2", fr);
  o.require(b.subs.size() == 1 && b.subs[0] == h, "substitution z = y + y^2 + u1^2");
  o.require(b.gens[0] == parse_poly("y^2 + u2^7", fr), "transformed generator z^2 + u2^7, got " + b.gens[0].to_string());
  o.note("substitution " + b.substitution_strings().front());
  return o;
}

Outcome loop_example() {
  Outcome o;
  auto fr = Frame::make({"u"}, {"y", "z"}, Field::prime(2));
  std::vector<Poly> f = {parse_poly("y^3 + y^4*u + y^2*u^2 + u^5", fr), parse_poly("z^5 + y^3*u", fr)};
  auto nr = normalize_at_vertex(f, P({{1, 2}}));
  o.require(nr.gens[1] == parse_poly("z^5 + y^4*u^2 + y^2*u^3 + u^6", fr), "g2 exact, got " + nr.gens[1].to_string());
  o.require(!vertex_solvable(nr.gens, P({{1, 1}})).has_value(), "vertex 1 not solvable");
  auto sn = strong_normalize(nr.gens);
  o.require(sn.status == "loop", "strong normalization loops, got " + sn.status);
  o.require(sn.polyhedron_stationary, "polyhedron stationary during the loop");
  o.note("stationary polyhedron " + sn.polyhedron.to_string() + " after " + std::to_string(sn.steps) + " steps");
  return o;
}

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Outcome lambda_bookkeeping() {
  Outcome o;
  auto fr = Frame::make({"u1", "u2"}, {"y"}, Field::prime(2));
  std::vector<Poly> hiro = {parse_poly("y^2 + y^4 + u1^4 + u2^7", fr)};
  PrepState st = prepare(hiro);
  Rational lam = lambda_measure(st.polyhedron, poly_of_system(hiro));
  o.require(lam == 1, "lambda(final, initial) = 1, got " + rational_to_string(lam));

  auto q2 = Frame::make({"u1", "u2"}, {"y1", "y2"}, Field::rationals());
  auto p2 = Frame::make({"u1", "u2"}, {"y1", "y2"}, Field::prime(2));
  auto lp = Frame::make({"u"}, {"y", "z"}, Field::prime(2));
  Poly f1 = parse_poly("y1^2 + u1^3", q2), f2 = parse_poly("y2^3 + u2^7", q2);
  std::vector<std::pair<std::string, std::vector<Poly>>> runs = {
      {"PolyGenDependent f", {f1, f2}},
      {"PolyGenDependent g", {f1, f2 + f1}},
      {"PolyGenDependent h", {f1, f2 + parse_poly("u2^2", q2) * f1}},
      {"Preparation", {parse_poly("y1^2", p2), parse_poly("y2^4 + u1^2*u2^2*y1^2 + u1^8*u2^8", p2)}},
      {"HiroInfinite", hiro},
      {"loop", {parse_poly("y^3 + y^4*u + y^2*u^2 + u^5", lp), parse_poly("z^5 + y^3*u", lp)}},
  };
  int checked = 0;
  for (bool generalized : {true, false}) {
    for (const auto& [name, gens] : runs) {
      PrepareOptions opt;
      opt.generalized = generalized;
      PrepState s = prepare(gens, opt);
      const auto& tr = s.lambda_trace;
      std::string label = name + (generalized ? "" : " (plain)");
      for (std::size_t i = 1; i < tr.size(); ++i)
        o.require(tr[i] < tr[i - 1], label + ": trace not strictly decreasing at step " + std::to_string(i));
      if (s.polyhedron.empty()) {
        o.require(tr.empty(), label + ": no trace expected for an empty target");
        continue;
      }
      int gamma = 0;
      for (const auto& g : s.gens) gamma = std::max(gamma, order_mod_u(g));
      std::uint64_t alpha = 1;
      for (const auto& l : s.polyhedron.facets()) alpha = std::max(alpha, l.max_denominator());
      mpz_class scale = factorial(gamma) * factorial(alpha);
      for (const auto& x : tr) {
        Rational y = x * Rational(scale);
        o.require(x >= 0 && y.get_den() == 1, label + ": " + rational_to_string(x) + " outside (1/(gamma! alpha!))Z");
        ++checked;
      }
      std::string t;
      for (const auto& x : tr) t += (t.empty() ? "" : ", ") + rational_to_string(x);
      o.note(label + ": [" + t + "]");
    }
  }
  o.note(std::to_string(checked) + " trace entries checked");
  return o;
}

bool hv_roundtrip(const FSubset& d, std::string& why) {
  if (d.empty()) return true;
  int e = d.dim();
  const auto& fs = d.facets();
  for (const auto& l : fs) {
    Rational mn = -1;
    for (const auto& v : d.vertices()) {
      Rational x = l(v);
      if (x < 1) {
        why = "vertex below facet";
        return false;
      }
      if (mn < 0 || x < mn) mn = x;
    }
    if (mn != 1) {
      why = "facet minimum is not 1";
      return false;
    }
  }
  for (const auto& v : d.vertices())
    if (!is_vertex(d, v).is_vertex) {
      why = "listed vertex is not extremal";
      return false;
    }
  if (!(FSubset::from_points(e, d.vertices()) == d)) {
    why = "V round trip";
    return false;
  }
  // H to V: basic feasible points of {x >= 0, L_j(x) >= 1}.
  std::vector<std::pair<std::vector<Rational>, Rational>> planes;
  for (const auto& l : fs) planes.push_back({l.coeffs, Rational(1)});
  for (int i = 0; i < e; ++i) {
    std::vector<Rational> a(e, Rational(0));
    a[i] = 1;
    planes.push_back({a, Rational(0)});
  }
  std::vector<QPoint> pts;
  std::vector<int> idx(e);
  std::function<void(int, int)> rec = [&](int depth, int start) {
    if (depth == e) {
      Matrix<Rational> a;
      std::vector<Rational> b;
      for (int k : idx) {
        a.push_back(planes[k].first);
        b.push_back(planes[k].second);
      }
      Matrix<Rational> sq = a;
      if (row_reduce(sq, e).size() != static_cast<std::size_t>(e)) return;
      auto x = solve(a, b, Rational(0));
      if (!x) return;
      for (const auto& q : *x)
        if (q < 0) return;
      for (const auto& l : fs)
        if (l(*x) < 1) return;
      pts.push_back(*x);
      return;
    }
    for (int i = start; i < static_cast<int>(planes.size()); ++i) {
      idx[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  if (pts.empty() && fs.empty()) pts.push_back(QPoint(e, Rational(0)));
  if (!(FSubset::from_points(e, pts) == d)) {
    why = "H round trip gives " + FSubset::from_points(e, pts).to_string();
    return false;
  }
  return true;
}

Outcome property_suites(const std::vector<corpus::System>& corpus) {
  Outcome o;
  int nlz = 0, solv = 0, violations = 0, hv = 0;
  for (const auto& s : corpus) {
    FSubset d = poly_of_system(s.gens);
    for (const auto& v : d.vertices()) {
      std::vector<Poly> g = s.gens;
      try {
        if (!is_normalized_at(g, v).normalized) {
          ++nlz;
          auto nr = normalize_at_vertex(g, v);
          // g_i = f_i - sum x_ij f_j
          for (std::size_t i = 0; i < g.size(); ++i) {
            Poly back = nr.gens[i];
            for (std::size_t j = 0; j < nr.multipliers[i].size(); ++j) back += nr.multipliers[i][j] * s.gens[j];
            if (!(back == s.gens[i])) ++violations, o.require(false, s.label + ": multipliers do not reconstruct");
            if (exponent_of(nr.gens[i]) != exponent_of(s.gens[i]))
              ++violations, o.require(false, s.label + ": exponent changed");
          }
          FSubset dg = poly_of_system(nr.gens);
          if (!is_normalized_at(nr.gens, v).normalized) ++violations, o.require(false, s.label + ": not normalized at v");
          if (!d.contains(dg)) ++violations, o.require(false, s.label + ": polyhedron grew");
          for (const auto& w : d.vertices())
            if (w != v && std::find(dg.vertices().begin(), dg.vertices().end(), w) == dg.vertices().end())
              ++violations, o.require(false, s.label + ": vertex " + point_to_string(w) + " lost");
          g = nr.gens;
        }
        if (auto w = vertex_solvable(g, v)) {
          ++solv;
          FSubset dg = poly_of_system(g);
          PrepState st = apply_solution(PrepState::from(g), *w);
          if (!dg.contains(st.polyhedron)) ++violations, o.require(false, s.label + ": solving grew the polyhedron");
          if (std::find(st.polyhedron.vertices().begin(), st.polyhedron.vertices().end(), v) !=
              st.polyhedron.vertices().end())
            ++violations, o.require(false, s.label + ": solved vertex survived");
          for (const auto& x : dg.vertices())
            if (x != v && std::find(st.polyhedron.vertices().begin(), st.polyhedron.vertices().end(), x) ==
                              st.polyhedron.vertices().end())
              ++violations, o.require(false, s.label + ": other vertex lost by solving");
        }
      } catch (const std::exception& ex) {
        ++violations;
        o.require(false, s.label + ": " + ex.what());
      }
    }
    std::string why;
    if (!hv_roundtrip(d, why)) o.require(false, s.label + ": " + why);
    ++hv;
    int ord = 1000;
    for (const auto& f : s.gens)
      for (const auto& [m, c] : f.terms()) ord = std::min(ord, m.degree());
    if (ord > 0) {
      if (!hv_roundtrip(poly_of_pair(s.gens, Rational(ord)), why)) o.require(false, s.label + " pair: " + why);
      ++hv;
    }
  }
  o.note("(a) " + std::to_string(corpus.size()) + " systems, " + std::to_string(nlz) + " normalizations, " +
         std::to_string(solv) + " solvable vertices, " + std::to_string(violations) + " violations");
  o.note("(b) " + std::to_string(hv) + " polyhedra round-tripped");

  int agree = 0;
  auto forms_list = corpus::random_homogeneous(100);
  for (const auto& forms : forms_list) {
    auto d = directrix(forms);
    auto r = ridge(forms);
    if (gb::groebner_basis(r.additive_gens) == gb::groebner_basis(d.linear_forms))
      ++agree;
    else
      o.require(false, "char 0 ridge differs from directrix");
  }
  auto f2 = Frame::make({"u"}, {"y1", "y2"}, Field::prime(2));
  auto c = check_rid_eq_dir({parse_poly("y1^2 + y2^2", f2)});
  o.require(c.outcome == RidEqDir::Holds, "F2 {Y1^2+Y2^2} holds");
  auto rg = ridge({parse_poly("y1^2 + y2^2", f2)});
  o.require(rg.additive_gens.size() == 1 && rg.additive_gens[0] == parse_poly("y1 + y2", f2), "ridge generator Y1+Y2");
  for (std::uint64_t p : {2u, 3u}) {
    auto fp = Frame::make({"u"}, {"y1", "y2"}, Field::prime(p));
    int ip = static_cast<int>(p);
    auto rep = check_rid_eq_dir({Poly::y(fp, 0, ip) + Poly::y(fp, 1, ip * ip)});
    o.require(rep.outcome == RidEqDir::Fails, "p=" + std::to_string(p) + ": {Y1^p+Y2^p^2} fails");
    o.require(rep.witness && *rep.witness == Poly::y(fp, 0) + Poly::y(fp, 1, ip),
              "p=" + std::to_string(p) + ": witness Y1+Y2^p");
    if (rep.witness) o.note("p=" + std::to_string(p) + " witness " + rep.witness->to_string());
  }
  o.note("(c) char 0 ridge = directrix on " + std::to_string(agree) + "/" + std::to_string(forms_list.size()));
  return o;
}

bool agree(const FSubset& lib, const oracle::BruteFSubset& brute) {
  if (lib.empty() != brute.points.empty()) return false;
  for (const auto& v : lib.vertices()) {
    if (!brute.contains(v)) return false;
    if (std::find(brute.points.begin(), brute.points.end(), v) == brute.points.end()) return false;
  }
  for (const auto& p : brute.points)
    if (!lib.contains(p)) return false;
  return true;
}

Outcome oracle_equivalence(const std::vector<corpus::System>& corpus) {
  Outcome o;
  int elems = 0, pairs = 0;
  for (const auto& s : corpus) {
    int e = s.frame->e();
    for (const auto& g : s.gens) {
      ++elems;
      if (!agree(poly_of_element(g), oracle::brute_fsubset(e, oracle::element_points(g))))
        o.require(false, s.label + ": element " + g.to_string());
    }
    int ord = 1000;
    for (const auto& g : s.gens)
      for (const auto& [m, c] : g.terms()) ord = std::min(ord, m.degree());
    if (ord == 0) continue;
    for (Rational b : {Rational(ord), make_rational(ord, 2), make_rational(2 * ord, 3)}) {
      ++pairs;
      if (!agree(poly_of_pair(s.gens, b), oracle::brute_fsubset(e, oracle::pair_points(s.gens, b))))
        o.require(false, s.label + ": pair b=" + rational_to_string(b));
    }
  }
  o.note(std::to_string(elems) + " elements and " + std::to_string(pairs) + " pairs compared by double containment");
  return o;
}

}  // namespace

int main() {
  auto suite_start = std::chrono::steady_clock::now();
  const auto corpus = corpus::random_systems(200);
  struct Criterion {
    int id;
    std::string title;
    double limit_ms;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "dependent generators", 1000, dependent_generators},
      {2, "preparation example", 1000, preparation_example},
      {3, "translation cycle", 1000, translation_cycle},
      {4, "normalization loop", 60000, loop_example},
      {5, "lambda bookkeeping", 60000, lambda_bookkeeping},
      {6, "property suites", 60000, [&] { return property_suites(corpus); }},
      {7, "oracle equivalence", 60000, [&] { return oracle_equivalence(corpus); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double ms = ms_since(t0);
    if (ms > c.limit_ms) o.require(false, "runtime " + std::to_string(ms) + " ms over the limit");
    if (!o.pass) ++failed;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << " " << c.title << " (" << ms << " ms)";
    std::cout << line.str() << "\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
  }
  double total = ms_since(suite_start);
  std::cout << "total " << static_cast<long>(total) << " ms, " << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria passed\n";
  if (total > 60000) {
    std::cout << "suite runtime over 60 s\n";
    ++failed;
  }
  return failed == 0 ? 0 : 1;
}
