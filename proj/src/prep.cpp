#include "charpoly/prep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "charpoly/error.hpp"
#include "charpoly/graded.hpp"
#include "charpoly/linalg.hpp"

namespace charpoly {

namespace {

std::vector<std::vector<int>> exponents(const std::vector<Poly>& f) {
  std::vector<std::vector<int>> e;
  for (const auto& g : f) e.push_back(exponent_of(g));
  return e;
}

std::vector<int> orders(const std::vector<Poly>& f) {
  std::vector<int> n;
  for (const auto& g : f) n.push_back(order_mod_u(g));
  return n;
}

void require_increasing(const std::vector<std::vector<int>>& exps) {
  for (std::size_t i = 1; i < exps.size(); ++i)
    if (grlex_compare(exps[i - 1], exps[i]) >= 0)
      throw InvalidInput("exponents of the generators must be strictly grlex-increasing (generator " +
                         std::to_string(i + 1) + ")");
}

// Smallest j < i whose exponent divides B, or -1.
int staircase_index(const std::vector<std::vector<int>>& exps, std::size_t i, const std::vector<int>& b) {
  for (std::size_t j = 0; j < i; ++j)
    if (divides(exps[j], b)) return static_cast<int>(j);
  return -1;
}

std::optional<QPoint> projected(const Monomial& m, int n) {
  int db = m.deg_b();
  if (db >= n) return std::nullopt;
  QPoint p(m.a.size());
  for (std::size_t k = 0; k < m.a.size(); ++k) p[k] = make_rational(m.a[k], n - db);
  return p;
}

bool in_v_support(const Monomial& m, int n, const QPoint& v) {
  if (m.u_free() && m.deg_b() == n) return true;
  auto p = projected(m, n);
  return p && *p == v;
}

struct Pick {
  Monomial m;
  Scalar c;
  int j = -1;
};

bool better(const Monomial& x, const Monomial& y) {
  auto o = grlex_compare(x.b, y.b);
  if (o != 0) return o < 0;
  return x.a < y.a;
}

// Replaces c u^A y^B by the expansion through g_j (y^B = y^C y^E).
Poly reduction_multiplier(const Poly& gj, const std::vector<int>& ej, const Pick& pick) {
  Monomial lead{std::vector<int>(pick.m.a.size(), 0), ej};
  Scalar d = gj.coeff(lead);
  Monomial q = pick.m;
  for (std::size_t k = 0; k < q.b.size(); ++k) q.b[k] -= ej[k];
  return Poly::monomial(gj.frame(), q, pick.c / d);
}

int default_normalize_budget(const std::vector<Poly>& f) {
  int nm = 1;
  for (const auto& g : f) nm = std::max(nm, order_mod_u(g));
  return 10 * static_cast<int>(f.size()) * nm;
}

std::string exps_string(const std::vector<int>& b) {
  std::string s = "(";
  for (std::size_t k = 0; k < b.size(); ++k) s += (k ? "," : "") + std::to_string(b[k]);
  return s + ")";
}

// Terms of g_i eligible for strong normalization.
std::optional<Pick> strong_pick(const std::vector<Poly>& g, const std::vector<std::vector<int>>& exps,
                                const std::vector<int>& ns, std::size_t i) {
  std::optional<Pick> best;
  for (const auto& [m, c] : g[i].terms()) {
    if (m.deg_b() > ns[i]) continue;
    int j = staircase_index(exps, i, m.b);
    if (j < 0) continue;
    if (!best || better(m, best->m)) best = Pick{m, c, j};
  }
  return best;
}

}  // namespace

NormalizationCheck is_normalized_at(const std::vector<Poly>& f, const QPoint& v) {
  if (f.empty()) throw InvalidInput("empty generator system");
  auto exps = exponents(f);
  require_increasing(exps);
  auto ns = orders(f);
  if (static_cast<int>(v.size()) != f.front().frame()->e()) throw InvalidInput("vertex dimension mismatch");
  NormalizationCheck out;
  for (std::size_t i = 1; i < f.size(); ++i)
    for (const auto& [m, c] : f[i].terms()) {
      if (m.deg_b() > ns[i] || !in_v_support(m, ns[i], v)) continue;
      if (staircase_index(exps, i, m.b) < 0) continue;
      out.offending.push_back({static_cast<int>(i + 1), m.a, m.b});
    }
  out.normalized = out.offending.empty();
  return out;
}

NormalizeResult normalize_at_vertex(const std::vector<Poly>& f, const QPoint& v, int budget) {
  is_normalized_at(f, v);  // validates the preconditions
  const std::size_t m = f.size();
  if (budget <= 0) budget = default_normalize_budget(f);
  auto ns = orders(f);
  NormalizeResult res;
  res.gens = f;
  std::vector<std::vector<Poly>> x(m, std::vector<Poly>(m, Poly(f.front().frame())));
  for (std::size_t i = 1; i < m; ++i) {
    while (true) {
      auto exps = exponents(res.gens);
      std::optional<Pick> best;
      for (const auto& [mono, c] : res.gens[i].terms()) {
        if (mono.deg_b() > ns[i] || !in_v_support(mono, ns[i], v)) continue;
        int j = staircase_index(exps, i, mono.b);
        if (j < 0) continue;
        if (!best || better(mono, best->m)) best = Pick{mono, c, j};
      }
      if (!best) break;
      if (++res.steps > budget)
        throw BudgetExhausted("normalization at vertex " + point_to_string(v) + " exceeded " +
                              std::to_string(budget) + " steps");
      Poly q = reduction_multiplier(res.gens[best->j], exps[best->j], *best);
      res.gens[i] -= q * res.gens[best->j];
      x[i][best->j] += q;
      if (order_mod_u(res.gens[i]) != ns[i])
        throw InvalidInput("normalization changed n_(u) of generator " + std::to_string(i + 1) +
                           "; the system is not a (u)-standard basis");
    }
  }
  // Express the multipliers against f: g_i = f_i - sum_k X_ik f_k.
  res.multipliers.assign(m, std::vector<Poly>(m, Poly(f.front().frame())));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < i; ++k) {
      Poly val = x[i][k];
      for (std::size_t j = k + 1; j < i; ++j) val -= x[i][j] * res.multipliers[j][k];
      res.multipliers[i][k] = val;
    }
  FSubset before = poly_of_system(f);
  FSubset after = poly_of_system(res.gens);
  if (!before.contains(after)) throw InternalError("normalization enlarged the polyhedron");
  for (const auto& w : before.vertices())
    if (w != v && !is_vertex(after, w).is_vertex)
      throw InternalError("normalization at " + point_to_string(v) + " removed vertex " + point_to_string(w));
  return res;
}

PrepState PrepState::from(std::vector<Poly> gens) {
  if (gens.empty()) throw InvalidInput("empty generator system");
  PrepState s;
  const auto& frame = gens.front().frame();
  s.subs.assign(frame->r(), Poly(frame));
  s.polyhedron = poly_of_system(gens);
  s.gens = std::move(gens);
  return s;
}

std::vector<std::string> PrepState::substitution_strings() const {
  std::vector<std::string> out;
  if (gens.empty()) return out;
  const Frame& fr = *gens.front().frame();
  auto taken = [&](const std::string& n) {
    return std::find(fr.u_names.begin(), fr.u_names.end(), n) != fr.u_names.end() ||
           std::find(fr.y_names.begin(), fr.y_names.end(), n) != fr.y_names.end();
  };
  for (int j = 0; j < fr.r(); ++j) {
    if (subs[j].is_zero()) continue;
    std::string name = fr.r() == 1 ? "z" : "z" + std::to_string(j + 1);
    if (taken(name)) name = fr.y_names[j] + "'";
    std::string h = subs[j].to_string();
    std::string tail = h[0] == '-' ? " - " + h.substr(1) : " + " + h;
    out.push_back(name + " = " + fr.y_names[j] + tail);
  }
  return out;
}

namespace {

PrepEvent make_event(std::string kind, std::optional<QPoint> v, std::string detail, const std::vector<Poly>& gens) {
  return PrepEvent{std::move(kind), std::move(v), std::move(detail), poly_of_system(gens)};
}

// Vertex-normalizes in place; returns false on budget exhaustion.
bool vertex_normalize_in(PrepState& s, const Budget& budget) {
  int passes = 0;
  while (true) {
    FSubset delta = poly_of_system(s.gens);
    bool changed = false;
    for (const auto& v : delta.vertices()) {
      if (is_normalized_at(s.gens, v).normalized) continue;
      if (++passes > budget.events) {
        s.status = "budget-exhausted";
        s.stop_reason = "vertex normalization budget";
        return false;
      }
      auto res = normalize_at_vertex(s.gens, v, budget.normalize_steps);
      std::string detail;
      for (std::size_t i = 0; i < res.multipliers.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
          if (!res.multipliers[i][j].is_zero())
            detail += (detail.empty() ? "" : "; ") + std::string("g") + std::to_string(i + 1) + " -= (" +
                      res.multipliers[i][j].to_string() + ")*f" + std::to_string(j + 1);
      s.gens = std::move(res.gens);
      s.log.push_back(make_event("normalize", v, detail, s.gens));
      changed = true;
      break;
    }
    if (!changed) break;
  }
  s.polyhedron = poly_of_system(s.gens);
  return true;
}

LinearForm effective_form(const std::vector<Poly>& f) {
  int nm = 1;
  for (const auto& g : f) nm = std::max(nm, order_mod_u(g));
  return LinearForm(std::vector<Rational>(f.front().frame()->e(), Rational(nm + 1)));
}

void require_standard_basis(const std::vector<Poly>& f) {
  auto rep = check_standard_basis(f, effective_form(f));
  if (!rep.violations.empty()) {
    const auto& v = rep.violations.front();
    throw InvalidInput("not a (u)-standard basis: condition " + v.condition + ": " + v.witness);
  }
}

}  // namespace

PrepState vertex_normalize(const std::vector<Poly>& f, const Budget& budget) {
  PrepState s = PrepState::from(f);
  require_standard_basis(s.gens);
  if (vertex_normalize_in(s, budget)) s.status = "normalized";
  return s;
}

StrongNormalization strong_normalize(const std::vector<Poly>& f, int max_steps) {
  if (f.empty()) throw InvalidInput("empty generator system");
  require_increasing(exponents(f));
  auto ns = orders(f);
  StrongNormalization out;
  out.gens = f;
  std::vector<std::size_t> gen_of_step;
  std::vector<FSubset> after;
  while (true) {
    auto exps = exponents(out.gens);
    std::optional<Pick> pick;
    std::size_t target = 0;
    for (std::size_t i = 1; i < out.gens.size() && !pick; ++i)
      if ((pick = strong_pick(out.gens, exps, ns, i))) target = i;
    out.polyhedron = poly_of_system(out.gens);
    if (!pick) {
      out.status = "normalized";
      return out;
    }
    // Loop test: the same exponent was reduced before and the polyhedron has
    // not moved since that reduction.
    for (std::size_t k = 0; k < out.reduced_exponents.size(); ++k) {
      if (gen_of_step[k] != target || out.reduced_exponents[k] != pick->m.b) continue;
      bool stationary = true;
      for (std::size_t t = k; t < after.size() && stationary; ++t) stationary = after[t] == out.polyhedron;
      if (stationary) {
        out.status = "loop";
        out.repeated = pick->m.b;
        out.polyhedron_stationary = true;
        return out;
      }
    }
    if (out.steps >= max_steps) {
      out.status = "budget";
      return out;
    }
    Poly q = reduction_multiplier(out.gens[pick->j], exps[pick->j], *pick);
    out.gens[target] -= q * out.gens[pick->j];
    if (order_mod_u(out.gens[target]) != ns[target])
      throw InvalidInput("normalization changed n_(u) of generator " + std::to_string(target + 1));
    ++out.steps;
    out.reduced_exponents.push_back(pick->m.b);
    gen_of_step.push_back(target);
    after.push_back(poly_of_system(out.gens));
  }
}

PrepState normalize_empty_case(const std::vector<Poly>& f, int max_steps) {
  auto sn = strong_normalize(f, max_steps);
  PrepState s = PrepState::from(sn.gens);
  s.log.push_back(make_event("normalize", std::nullopt,
                             "strong normalization: " + sn.status + " after " + std::to_string(sn.steps) + " steps",
                             s.gens));
  if (sn.status == "normalized") {
    if (s.polyhedron.empty()) {
      s.status = "normalized";
      return s;
    }
    s.status = "nonempty";
    s.witness = s.polyhedron.vertices().front();
    return s;
  }
  // The loop keeps producing terms; the least point outside the staircase survives.
  auto exps = exponents(s.gens);
  auto ns = orders(s.gens);
  std::optional<QPoint> best;
  for (std::size_t i = 0; i < s.gens.size(); ++i)
    for (const auto& [m, c] : s.gens[i].terms()) {
      auto p = projected(m, ns[i]);
      if (!p || staircase_index(exps, i, m.b) >= 0) continue;
      if (!best || point_less(*p, *best)) best = p;
    }
  s.status = "nonempty";
  s.stop_reason = sn.status == "loop" ? "normalization loops (exponent " + exps_string(*sn.repeated) +
                                            " reappears, polyhedron stationary)"
                                      : "normalization budget";
  s.witness = best;
  return s;
}

namespace {

std::optional<std::vector<int>> integral_point(const QPoint& v) {
  std::vector<int> a;
  for (const auto& x : v) {
    if (x.get_den() != 1 || sgn(x) < 0 || !x.get_num().fits_sint_p()) return std::nullopt;
    a.push_back(static_cast<int>(x.get_num().get_si()));
  }
  return a;
}

std::vector<Poly> translated_images(const FramePtr& frame, const std::vector<int>& a, const std::vector<Scalar>& mu) {
  std::vector<Poly> images;
  for (int j = 0; j < frame->r(); ++j) {
    Poly img = Poly::y(frame, j);
    img += Poly::monomial(frame, Monomial{a, std::vector<int>(frame->r(), 0)}, mu[j]);
    images.push_back(std::move(img));
  }
  return images;
}

bool all_zero(const std::vector<Scalar>& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

// Enumerates base + sum c_k dirs[k] over F_p, calling accept until it returns true.
template <class Accept>
std::optional<std::vector<Scalar>> search_affine(const Field& k, const std::vector<Scalar>& base,
                                                 const std::vector<std::vector<Scalar>>& dirs, int search_log2,
                                                 Accept accept) {
  if (accept(base)) return base;
  if (dirs.empty() || k.is_rational()) return std::nullopt;
  std::uint64_t p = k.characteristic();
  if (static_cast<double>(dirs.size()) * std::log2(static_cast<double>(p)) > search_log2)
    throw BudgetExhausted("exhaustive F_p search exceeds 2^" + std::to_string(search_log2) + " candidates");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dirs.size(); ++i) total *= p;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::vector<Scalar> x = base;
    std::uint64_t c = code;
    for (const auto& d : dirs) {
      Scalar coef(k, static_cast<long>(c % p));
      c /= p;
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += coef * d[j];
    }
    if (accept(x)) return x;
  }
  return std::nullopt;
}

// Particular solution and kernel of a linear system given as rows over `ncols` unknowns.
std::pair<std::optional<std::vector<Scalar>>, std::vector<std::vector<Scalar>>> solve_system(
    const Field& k, const linalg::Matrix<Scalar>& rows, const std::vector<Scalar>& rhs, std::size_t ncols) {
  if (rows.empty()) {
    linalg::Matrix<Scalar> id(ncols, std::vector<Scalar>(ncols, Scalar::zero(k)));
    for (std::size_t i = 0; i < ncols; ++i) id[i][i] = Scalar::one(k);
    return {std::vector<Scalar>(ncols, Scalar::zero(k)), id};
  }
  auto sol = linalg::solve(rows, rhs, Scalar::zero(k));
  auto ker = linalg::nullspace(rows, ncols, Scalar::zero(k), Scalar::one(k));
  return {sol, ker};
}

}  // namespace

std::optional<SolveWitness> vertex_solvable(const std::vector<Poly>& f, const QPoint& v, int search_log2) {
  if (!is_normalized_at(f, v).normalized)
    throw InvalidInput("vertex_solvable needs a system normalized at " + point_to_string(v));
  auto a = integral_point(v);
  if (!a) return std::nullopt;
  const FramePtr& frame = f.front().frame();
  const Field& k = frame->field;
  const int r = frame->r();
  std::vector<Poly> in0, inv;
  for (const auto& g : f) {
    in0.push_back(in_zero(g).poly());
    inv.push_back(in_vertex(g, v).poly());
  }
  // Layer |B| = n_i - 1: coefficient of U^v Y^B in F_i(Y + mu U^v) is linear in mu.
  linalg::Matrix<Scalar> rows;
  std::vector<Scalar> rhs;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::map<std::vector<int>, std::vector<Scalar>> eq;
    for (const auto& [m, c] : in0[i].terms())
      for (int j = 0; j < r; ++j) {
        if (m.b[j] == 0) continue;
        std::vector<int> b = m.b;
        --b[j];
        auto [it, fresh] = eq.try_emplace(b, std::vector<Scalar>(r, Scalar::zero(k)));
        it->second[j] += c * Scalar(k, static_cast<long>(m.b[j]));
      }
    int n = order_mod_u(f[i]);
    for (const auto& [m, c] : inv[i].terms())
      if (m.a == *a && m.deg_b() == n - 1) eq.try_emplace(m.b, std::vector<Scalar>(r, Scalar::zero(k)));
    for (auto& [b, row] : eq) {
      rows.push_back(row);
      rhs.push_back(inv[i].coeff(Monomial{*a, b}));
    }
  }
  auto [sol, ker] = solve_system(k, rows, rhs, r);
  if (!sol) return std::nullopt;
  auto works = [&](const std::vector<Scalar>& mu) {
    if (all_zero(mu)) return false;
    auto images = translated_images(frame, *a, mu);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (!(substitute_all_y(in0[i], images) == inv[i])) return false;
    return true;
  };
  auto mu = search_affine(k, *sol, ker, search_log2, works);
  if (!mu) return std::nullopt;
  return SolveWitness{v, *mu};
}

PrepState apply_solution(const PrepState& state, const SolveWitness& w) {
  if (all_zero(w.lambdas)) throw InvalidInput("identity translation (all lambda zero)");
  auto a = integral_point(w.vertex);
  if (!a) throw InvalidInput("translation vertex must be integral");
  const FramePtr& frame = state.gens.front().frame();
  std::vector<Scalar> neg;
  for (const auto& l : w.lambdas) neg.push_back(-l);
  auto images = translated_images(frame, *a, neg);
  PrepState s = state;
  for (auto& g : s.gens) g = substitute_all_y(g, images);
  std::string detail;
  for (int j = 0; j < frame->r(); ++j) {
    if (w.lambdas[j].is_zero()) continue;
    Poly step = Poly::monomial(frame, Monomial{*a, std::vector<int>(frame->r(), 0)}, w.lambdas[j]);
    s.subs[j] += step;
    detail += (detail.empty() ? "" : "; ") + frame->y_names[j] + " -> " + frame->y_names[j] + " + " + step.to_string();
  }
  FSubset before = poly_of_system(state.gens);
  FSubset after = poly_of_system(s.gens);
  if (!before.contains(after)) throw InternalError("translation enlarged the polyhedron");
  if (after.contains(w.vertex)) throw InternalError("translation did not remove vertex " + point_to_string(w.vertex));
  for (const auto& u : before.vertices())
    if (u != w.vertex && !is_vertex(after, u).is_vertex)
      throw InternalError("translation removed vertex " + point_to_string(u));
  s.polyhedron = after;
  s.log.push_back(PrepEvent{"solve", w.vertex, detail, after});
  return s;
}

std::vector<GradedForm> face_initial_system(const PrepState& state, const LinearForm& l, const Rational& ell) {
  if (poly_of_system(state.gens).empty()) throw DomainError("face initial system of an empty polyhedron");
  MonomialValuation nu{l, ell};
  std::vector<GradedForm> out;
  for (const auto& g : state.gens) out.push_back(in_nu(g, nu));
  return out;
}

namespace {

void exponent_vectors(int nvars, int maxdeg, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == nvars) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (int x : cur) used += x;
  for (int d = 0; used + d <= maxdeg; ++d) {
    cur.push_back(d);
    exponent_vectors(nvars, maxdeg, cur, out);
    cur.pop_back();
  }
}

// Single additive layer: sum_j c_j Y_j^q with one q = p^k >= 1.
std::optional<int> additive_layer(const Poly& f) {
  if (f.field().is_rational() || !is_additive(f)) return std::nullopt;
  int q = -1;
  for (const auto& [m, c] : f.terms()) {
    int d = m.deg_b();
    if (q >= 0 && d != q) return std::nullopt;
    q = d;
  }
  return q;
}

std::vector<Poly> compose_subs(const std::vector<Poly>& subs, const std::vector<Poly>& h) {
  const FramePtr& frame = subs.front().frame();
  std::vector<Poly> images;
  for (int j = 0; j < frame->r(); ++j) images.push_back(Poly::y(frame, j) + subs[j]);
  std::vector<Poly> out;
  for (int j = 0; j < frame->r(); ++j) out.push_back(subs[j] + substitute_all_y(h[j], images));
  return out;
}

}  // namespace

DissolveResult dissolve_generalized(const PrepState& state, const QPoint& v, const LinearForm& l,
                                    const Rational& ell, const Budget& budget) {
  DissolveResult out;
  out.state = state;
  const auto& f = state.gens;
  const FramePtr& frame = f.front().frame();
  const Field& k = frame->field;
  const int e = frame->e(), r = frame->r();
  FSubset delta = poly_of_system(f);
  if (delta.empty()) throw DomainError("dissolve_generalized on an empty polyhedron");
  MonomialValuation nu{l, ell};
  std::vector<Poly> in0, face;
  int nmax = 1;
  for (const auto& g : f) {
    in0.push_back(in_zero(g).poly());
    face.push_back(in_nu(g, nu).poly());
    nmax = std::max(nmax, order_mod_u(g));
  }
  int maxdeg = budget.dissolve_degree > 0 ? budget.dissolve_degree : 2 * nmax;
  // Monomials of nu-weight ell, without constants or u-free linear terms.
  std::vector<Monomial> cands;
  {
    std::vector<std::vector<int>> vecs;
    std::vector<int> cur;
    exponent_vectors(e + r, maxdeg, cur, vecs);
    for (const auto& ab : vecs) {
      Monomial m{std::vector<int>(ab.begin(), ab.begin() + e), std::vector<int>(ab.begin() + e, ab.end())};
      if (m.u_free() && m.deg_b() <= 1) continue;
      if (nu(m) != ell) continue;
      cands.push_back(std::move(m));
    }
  }
  for (const auto& m : cands) out.support.push_back(Poly::monomial(frame, m, Scalar::one(k)).to_string());
  const std::size_t nunk = static_cast<std::size_t>(r) * cands.size();
  if (cands.empty()) {
    out.reason = "no monomial of the face weight within degree " + std::to_string(maxdeg);
    return out;
  }
  auto build_h = [&](const std::vector<Scalar>& x) {
    std::vector<Poly> h(r, Poly(frame));
    for (int j = 0; j < r; ++j)
      for (std::size_t t = 0; t < cands.size(); ++t) h[j].add_term(cands[t], x[j * cands.size() + t]);
    return h;
  };
  auto face_matches = [&](const std::vector<Poly>& h) {
    std::vector<Poly> images;
    for (int j = 0; j < r; ++j) images.push_back(Poly::y(frame, j) + h[j]);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (!(substitute_all_y(in0[i], images) == face[i])) return false;
    return true;
  };
  std::optional<std::vector<Poly>> found;
  bool all_additive = true;
  std::vector<int> layers;
  for (const auto& p : in0) {
    auto q = additive_layer(p);
    all_additive = all_additive && q.has_value();
    layers.push_back(q.value_or(0));
  }
  try {
    if (all_additive) {
      // F_i(Y + h) - F_i(Y) = sum_j c_ij h_j^q and (c m)^q = c m^q over F_p.
      std::map<std::pair<std::size_t, Monomial>, std::size_t> row_of;
      linalg::Matrix<Scalar> rows;
      std::vector<Scalar> rhs;
      auto row = [&](std::size_t i, const Monomial& m) -> std::size_t {
        auto [it, fresh] = row_of.try_emplace({i, m}, rows.size());
        if (fresh) {
          rows.emplace_back(nunk, Scalar::zero(k));
          rhs.push_back(Scalar::zero(k));
        }
        return it->second;
      };
      for (std::size_t i = 0; i < f.size(); ++i) {
        Poly target = face[i] - in0[i];
        for (const auto& [m, c] : target.terms()) rhs[row(i, m)] = c;
        for (const auto& [m, c] : in0[i].terms()) {
          int j = static_cast<int>(std::find_if(m.b.begin(), m.b.end(), [](int x) { return x != 0; }) - m.b.begin());
          for (std::size_t t = 0; t < cands.size(); ++t) {
            Monomial pw = cands[t];
            for (auto& x : pw.a) x *= layers[i];
            for (auto& x : pw.b) x *= layers[i];
            std::size_t rr = row(i, pw);
            rows[rr][j * cands.size() + t] += c;
          }
        }
      }
      auto [sol, ker] = solve_system(k, rows, rhs, nunk);
      if (!sol) {
        out.reason = "face equations have no solution in the candidate support";
        return out;
      }
      auto h = build_h(*sol);
      if (face_matches(h)) found = h;
    } else if (!k.is_rational()) {
      int cap = std::min(budget.search_log2, 14);
      std::vector<std::vector<Scalar>> dirs;
      for (std::size_t t = 0; t < nunk; ++t) {
        std::vector<Scalar> d(nunk, Scalar::zero(k));
        d[t] = Scalar::one(k);
        dirs.push_back(std::move(d));
      }
      auto x = search_affine(k, std::vector<Scalar>(nunk, Scalar::zero(k)), dirs, cap, [&](const std::vector<Scalar>& x) {
        return !all_zero(x) && face_matches(build_h(x));
      });
      if (x) found = build_h(*x);
    }
  } catch (const BudgetExhausted& ex) {
    out.reason = ex.what();
    return out;
  }
  if (!found) {
    // A plain translation is the degenerate case of the search.
    if (integral_point(v) && is_normalized_at(f, v).normalized) {
      if (auto w = vertex_solvable(f, v, budget.search_log2)) {
        std::vector<Poly> h(r, Poly(frame));
        for (int j = 0; j < r; ++j)
          h[j] = Poly::monomial(frame, Monomial{*integral_point(v), std::vector<int>(r, 0)}, w->lambdas[j]);
        found = h;
      }
    }
  }
  if (!found) {
    if (out.reason.empty()) out.reason = "no substitution of the face weight clears the face";
    return out;
  }
  out.h = *found;
  std::vector<Poly> next;
  for (const auto& g : f) {
    auto c = change_coordinates(g, out.h, default_series_degree(g, out.h));
    if (!c) {
      out.reason = "substitution has no polynomial inverse image within the series bound";
      return out;
    }
    next.push_back(std::move(*c));
  }
  FSubset after;
  try {
    after = poly_of_system(next);
  } catch (const DomainError& ex) {
    out.reason = ex.what();
    return out;
  }
  if (!after.empty() && (!delta.contains(after) || !(delta_L(l, after) > delta_L(l, delta)))) {
    out.reason = "face weight did not increase";
    return out;
  }
  PrepState s = state;
  s.subs = compose_subs(state.subs, out.h);
  s.gens = std::move(next);
  s.polyhedron = after;
  std::string detail;
  for (int j = 0; j < r; ++j)
    if (!out.h[j].is_zero())
      detail += (detail.empty() ? "" : "; ") + frame->y_names[j] + " -> " + frame->y_names[j] + " + " + out.h[j].to_string();
  s.log.push_back(PrepEvent{"face-solve", v, detail + " on face L=" + l.to_string() + ", l=" + rational_to_string(ell), after});
  out.state = std::move(s);
  out.dissolved = true;
  return out;
}

namespace {

void sort_generators(std::vector<Poly>& g) {
  std::stable_sort(g.begin(), g.end(), [](const Poly& x, const Poly& y) {
    int nx = order_mod_u(x), ny = order_mod_u(y);
    if (nx != ny) return nx < ny;
    return grlex_compare(exponent_of(x), exponent_of(y)) < 0;
  });
}

// 0-normalization: removes staircase monomials from the 0-initial forms, so
// that the system satisfies conditions (2) and (3) of a (u)-standard basis.
bool repair(PrepState& s, int budget) {
  auto before = s.gens;
  int steps = 0;
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i < s.gens.size(); ++i)
      if (order_mod_u(s.gens[i]) == kInfiniteOrder)
        throw DomainError("generator " + std::to_string(i + 1) + " lies in <u>: " + s.gens[i].to_string());
    sort_generators(s.gens);
    auto exps = exponents(s.gens);
    auto ns = orders(s.gens);
    for (std::size_t i = 1; i < s.gens.size() && !again; ++i) {
      std::optional<Pick> best;
      for (const auto& [m, c] : s.gens[i].terms()) {
        if (!m.u_free() || m.deg_b() != ns[i]) continue;
        int j = staircase_index(exps, i, m.b);
        if (j >= 0 && (!best || better(m, best->m))) best = Pick{m, c, j};
      }
      if (!best) continue;
      if (++steps > budget) throw BudgetExhausted("0-normalization budget exhausted");
      Poly q = reduction_multiplier(s.gens[best->j], exps[best->j], *best);
      s.gens[i] -= q * s.gens[best->j];
      if (s.gens[i].is_zero()) {
        s.gens.erase(s.gens.begin() + static_cast<long>(i));
        s.log.push_back(make_event("repair", std::nullopt, "generator " + std::to_string(i + 1) + " reduced to zero and was dropped", s.gens));
      }
      again = true;
    }
  }
  if (s.gens == before) return false;
  s.log.push_back(make_event("repair", std::nullopt, "0-initial forms reduced against earlier exponents", s.gens));
  return true;
}

std::string signature(const std::vector<Poly>& g) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (const auto& [m, c] : g[i].terms()) {
      std::string s = std::to_string(i) + "|" + exps_string(m.b) + "|" + c.to_string() + "|";
      for (int x : m.a) s += x ? '1' : '0';
      parts.push_back(std::move(s));
    }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + ";";
  return out;
}

struct Snapshot {
  PrepState state;
  QPoint vertex;
  std::size_t history_len;
};

// Face through the stalled vertex: zero weight on the coordinates the vertex
// moves along, a facet of the remaining vertices on the others.
std::optional<std::pair<LinearForm, Rational>> stalled_face(const FSubset& delta, const std::vector<QPoint>& moving) {
  const QPoint& v = moving.front();
  const std::size_t e = v.size();
  std::vector<bool> moves(e, false);
  for (const auto& w : moving)
    for (std::size_t c = 0; c < e; ++c)
      if (w[c] != v[c]) moves[c] = true;
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < e; ++c)
    if (!moves[c]) keep.push_back(c);
  if (keep.empty()) return std::nullopt;
  std::vector<QPoint> pts;
  for (const auto& w : delta.vertices()) {
    if (w == v) continue;
    QPoint p;
    for (auto c : keep) p.push_back(w[c]);
    pts.push_back(std::move(p));
  }
  std::vector<Rational> coeffs(e, 0);
  FSubset proj = FSubset::from_points(static_cast<int>(keep.size()), pts);
  if (proj.empty()) {
    for (auto c : keep) coeffs[c] = 1;
  } else {
    QPoint vp;
    for (auto c : keep) vp.push_back(v[c]);
    std::optional<LinearForm> best;
    for (const auto& lf : proj.facets())
      if (!best || lf(vp) < (*best)(vp)) best = lf;
    for (std::size_t t = 0; t < keep.size(); ++t) coeffs[keep[t]] = best->coeffs[t];
  }
  LinearForm l(coeffs);
  return std::make_pair(l, l(v));
}

void finish_lambda(PrepState& s, const std::vector<FSubset>& history) {
  s.polyhedron = poly_of_system(s.gens);
  s.lambda_trace.clear();
  s.lambda.reset();
  if (s.polyhedron.empty()) return;
  for (const auto& h : history) {
    if (!h.contains(s.polyhedron)) throw InternalError("final polyhedron not contained in an earlier one");
    Rational lam = lambda_measure(s.polyhedron, h);
    if (!s.lambda_trace.empty() && lam > s.lambda_trace.back()) throw InternalError("measure increased during preparation");
    s.lambda_trace.push_back(lam);
  }
  s.lambda = s.lambda_trace.empty() ? Rational(0) : s.lambda_trace.back();
}

void push_history(std::vector<FSubset>& history, const FSubset& d) {
  if (history.empty() || !(history.back() == d)) history.push_back(d);
}

}  // namespace

PrepState prepare(const std::vector<Poly>& f, const PrepareOptions& options) {
  const Budget& budget = options.budget;
  if (budget.events <= 0 || budget.normalize_steps < 0 || budget.dissolve_degree < 0 || budget.search_log2 <= 0)
    throw InvalidInput("budgets must be positive");
  if (f.empty()) throw InvalidInput("no generators");
  PrepState s;
  s.gens = f;
  s.subs.assign(f.front().frame()->r(), Poly(f.front().frame()));
  repair(s, budget.normalize_steps > 0 ? budget.normalize_steps : default_normalize_budget(f) * 4);
  if (s.gens.empty()) throw InvalidInput("no generators left after reduction");
  require_standard_basis(s.gens);
  s.polyhedron = poly_of_system(s.gens);

  std::vector<FSubset> history;
  push_history(history, s.polyhedron);
  std::map<std::string, std::vector<Snapshot>> seen;
  int events = 0;
  while (true) {
    std::size_t logged = s.log.size();
    if (!vertex_normalize_in(s, budget)) break;
    for (std::size_t t = logged; t < s.log.size(); ++t) push_history(history, s.log[t].polyhedron);
    if (s.polyhedron.empty()) {
      s.status = "prepared";
      break;
    }
    std::optional<SolveWitness> w;
    for (const auto& v : s.polyhedron.vertices())
      if ((w = vertex_solvable(s.gens, v, budget.search_log2))) break;
    if (!w) {
      s.status = "prepared";
      break;
    }
    auto& occ = seen[signature(s.gens)];
    occ.push_back(Snapshot{s, w->vertex, history.size()});
    if (occ.size() >= 3) {
      for (const auto& o : occ) s.cycle.push_back(o.vertex);
      std::string path;
      for (const auto& v : s.cycle) path += (path.empty() ? "" : " -> ") + point_to_string(v);
      s.log.push_back(PrepEvent{"cycle", w->vertex, "translation cycle " + path, s.polyhedron});
      if (!options.generalized) {
        s.status = "budget-exhausted";
        s.stop_reason = "cycle";
        break;
      }
      std::vector<QPoint> moving = s.cycle;
      Snapshot first = occ.front();
      PrepState rolled = first.state;
      rolled.log = s.log;
      rolled.log.push_back(PrepEvent{"rollback", first.vertex, "back to the first occurrence of the cycle", first.state.polyhedron});
      history.resize(first.history_len);
      auto face = stalled_face(first.state.polyhedron, moving);
      if (!face) {
        s = rolled;
        s.cycle = moving;
        s.status = "budget-exhausted";
        s.stop_reason = "not-dissolvable: the stalled vertex moves in every coordinate";
        break;
      }
      auto res = dissolve_generalized(rolled, first.vertex, face->first, face->second, budget);
      if (!res.dissolved) {
        s = rolled;
        s.cycle = moving;
        s.status = "budget-exhausted";
        s.stop_reason = "not-dissolvable: " + res.reason;
        break;
      }
      s = std::move(res.state);
      push_history(history, s.polyhedron);
      seen.clear();
      if (++events >= budget.events) {
        s.status = "budget-exhausted";
        s.stop_reason = "event budget";
        break;
      }
      continue;
    }
    s = apply_solution(s, *w);
    push_history(history, s.polyhedron);
    if (++events >= budget.events) {
      s.status = "budget-exhausted";
      s.stop_reason = "event budget";
      break;
    }
  }
  finish_lambda(s, history);
  return s;
}

}  // namespace charpoly
