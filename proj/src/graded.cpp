#include "charpoly/graded.hpp"

#include <cmath>
#include <set>

#include "charpoly/error.hpp"
#include "charpoly/groebner.hpp"
#include "charpoly/linalg.hpp"

namespace charpoly {

namespace {

using linalg::Matrix;

void require_forms(const std::vector<Poly>& forms, bool homogeneous) {
  if (forms.empty()) throw InvalidInput("no forms given");
  for (const auto& f : forms) {
    if (f.is_zero()) throw InvalidInput("zero form");
    if (!f.u_free()) throw InvalidInput("form involves u-variables: " + f.to_string());
    if (f.frame()->r() != forms.front().frame()->r() || !(f.field() == forms.front().field()))
      throw InvalidInput("forms live in different rings");
    if (!homogeneous) continue;
    int d = f.terms().begin()->first.deg_b();
    for (const auto& [m, c] : f.terms())
      if (m.deg_b() != d) throw InvalidInput("form is not homogeneous: " + f.to_string());
  }
}

// Frame with extra u-variables (names never clash with user identifiers,
// which cannot start with an underscore).
FramePtr extended_frame(const Frame& base, int extra) {
  std::vector<std::string> u;
  for (int i = 0; i < extra; ++i) u.push_back("_t" + std::to_string(i + 1));
  return Frame::make(std::move(u), base.y_names, base.field);
}

Poly lift_into(const Poly& f, const FramePtr& frame) {
  Poly g(frame);
  for (const auto& [m, c] : f.terms()) g.add_term(Monomial{std::vector<int>(frame->e(), 0), m.b}, c);
  return g;
}

// Rows are the coefficient vectors (over the variables) of dF/dY_i, one row per monomial.
Matrix<Scalar> derivative_rows(const Poly& f) {
  const Field& k = f.field();
  int r = f.frame()->r();
  std::map<std::vector<int>, std::vector<Scalar>> rows;
  for (const auto& [m, c] : f.terms())
    for (int i = 0; i < r; ++i) {
      if (m.b[i] == 0) continue;
      Scalar v = c * Scalar(k, static_cast<long>(m.b[i]));
      if (v.is_zero()) continue;
      std::vector<int> b = m.b;
      --b[i];
      auto [it, fresh] = rows.try_emplace(b, std::vector<Scalar>(r, Scalar::zero(k)));
      it->second[i] += v;
    }
  Matrix<Scalar> out;
  for (auto& [b, row] : rows) out.push_back(std::move(row));
  return out;
}

Matrix<Scalar> identity(const Field& k, int r) {
  Matrix<Scalar> m(r, std::vector<Scalar>(r, Scalar::zero(k)));
  for (int i = 0; i < r; ++i) m[i][i] = Scalar::one(k);
  return m;
}

Poly descend(Poly f) {
  while (f.total_degree() > 0) {
    auto root = pth_root(f);
    if (!root) break;
    f = std::move(*root);
  }
  return f;
}

Poly linear_poly(const FramePtr& frame, const std::vector<Scalar>& coeffs) {
  Poly p(frame);
  for (int j = 0; j < frame->r(); ++j) {
    Monomial m{std::vector<int>(frame->e(), 0), std::vector<int>(frame->r(), 0)};
    m.b[j] = 1;
    p.add_term(m, coeffs[j]);
  }
  return p;
}

std::vector<Scalar> linear_coeffs(const Poly& p) {
  std::vector<Scalar> v(p.frame()->r(), Scalar::zero(p.field()));
  for (const auto& [m, c] : p.terms())
    for (std::size_t j = 0; j < m.b.size(); ++j)
      if (m.b[j] == 1) v[j] = c;
  return v;
}

// Space of linear forms V(F) with F in K[V], as rows.
Matrix<Scalar> directrix_rows(const Poly& f) {
  const Field& k = f.field();
  int r = f.frame()->r();
  if (k.is_rational()) return derivative_rows(f);
  Poly g = descend(f);
  auto t1 = linalg::nullspace(derivative_rows(g), r, Scalar::zero(k), Scalar::one(k));
  if (t1.empty()) return identity(k, r);
  // F_p-points of T1 that leave g invariant span the translation space.
  double log_count = static_cast<double>(t1.size()) * std::log2(static_cast<double>(k.characteristic()));
  if (log_count > 20) throw BudgetExhausted("directrix: translation search space too large");
  std::uint64_t p = k.characteristic();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < t1.size(); ++i) total *= p;
  Matrix<Scalar> valid;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::vector<Scalar> t(r, Scalar::zero(k));
    std::uint64_t c = code;
    for (const auto& basis : t1) {
      Scalar coef(k, static_cast<long>(c % p));
      c /= p;
      for (int j = 0; j < r; ++j) t[j] += coef * basis[j];
    }
    if (invariant_along(g, t)) valid.push_back(std::move(t));
  }
  if (valid.empty()) return identity(k, r);
  linalg::row_reduce(valid, r);
  return linalg::nullspace(valid, r, Scalar::zero(k), Scalar::one(k));
}

DirectrixResult finish_directrix(const FramePtr& frame, Matrix<Scalar> rows) {
  int r = frame->r();
  auto pivots = linalg::row_reduce(rows, r);
  DirectrixResult out;
  for (std::size_t i = 0; i < pivots.size(); ++i) out.linear_forms.push_back(linear_poly(frame, rows[i]));
  out.r_min = static_cast<int>(pivots.size());
  return out;
}

// Equations in t of F(Y + t) = F(Y), returned as polynomials in the y-slots.
std::vector<Poly> translation_equations(const Poly& f) {
  const FramePtr& frame = f.frame();
  int r = frame->r();
  auto ext = extended_frame(*frame, r);
  Poly fe = lift_into(f, ext);
  std::vector<Poly> images;
  for (int j = 0; j < r; ++j) images.push_back(Poly::y(ext, j) + Poly::u(ext, j));
  Poly diff = substitute_all_y(fe, images) - fe;
  std::map<std::vector<int>, Poly> groups;
  for (const auto& [m, c] : diff.terms()) {
    auto [it, fresh] = groups.try_emplace(m.b, Poly(frame));
    it->second.add_term(Monomial{std::vector<int>(frame->e(), 0), m.a}, c);
  }
  std::vector<Poly> eqs;
  for (auto& [b, p] : groups) eqs.push_back(std::move(p));
  return eqs;
}

bool in_span(const std::vector<Scalar>& v, const Matrix<Scalar>& rows, int r) {
  Matrix<Scalar> both = rows;
  both.push_back(v);
  return linalg::rank(both, r) == linalg::rank(rows, r);
}

}  // namespace

std::optional<Poly> pth_root(const Poly& f) {
  std::uint64_t p = f.field().characteristic();
  if (p == 0 || f.is_zero()) return std::nullopt;
  Poly g(f.frame());
  for (const auto& [m, c] : f.terms()) {
    Monomial q = m;
    for (auto* v : {&q.a, &q.b})
      for (auto& x : *v) {
        if (x % static_cast<long long>(p) != 0) return std::nullopt;
        x /= static_cast<int>(p);
      }
    g.add_term(q, c);  // c^(1/p) = c in F_p
  }
  return g;
}

bool is_additive(const Poly& f) {
  if (f.is_zero()) return false;
  std::uint64_t p = f.field().characteristic();
  for (const auto& [m, c] : f.terms()) {
    if (!m.u_free()) return false;
    int nonzero = 0;
    long long e = 0;
    for (int x : m.b)
      if (x != 0) {
        ++nonzero;
        e = x;
      }
    if (nonzero != 1) return false;
    if (p == 0) {
      if (e != 1) return false;
    } else {
      while (e % static_cast<long long>(p) == 0) e /= static_cast<long long>(p);
      if (e != 1) return false;
    }
  }
  return true;
}

bool invariant_along(const Poly& f, const std::vector<Scalar>& t) {
  auto ext = extended_frame(*f.frame(), 1);
  Poly fe = lift_into(f, ext);
  std::vector<Poly> images;
  for (int j = 0; j < f.frame()->r(); ++j)
    images.push_back(Poly::y(ext, j) + Poly::u(ext, 0).scaled(t[j]));
  return substitute_all_y(fe, images) == fe;
}

DirectrixResult translation_directrix(const std::vector<Poly>& forms) {
  require_forms(forms, false);
  Matrix<Scalar> rows;
  for (const auto& f : forms)
    for (auto& row : directrix_rows(f)) rows.push_back(std::move(row));
  return finish_directrix(forms.front().frame(), std::move(rows));
}

DirectrixResult directrix(const std::vector<Poly>& forms) {
  require_forms(forms, true);
  return translation_directrix(forms);
}

DirectrixResult directrix(const std::vector<GradedForm>& forms) {
  std::vector<Poly> polys;
  for (const auto& g : forms) polys.push_back(g.poly());
  return directrix(polys);
}

RidgeResult ridge(const std::vector<Poly>& forms) {
  require_forms(forms, false);
  RidgeResult out;
  if (forms.front().field().is_rational()) {
    out.additive_gens = translation_directrix(forms).linear_forms;
  } else {
    std::vector<Poly> eqs;
    for (const auto& f : forms)
      for (auto& e : translation_equations(descend(f))) eqs.push_back(std::move(e));
    out.additive_gens = gb::groebner_basis(eqs);
    for (const auto& g : out.additive_gens) out.all_additive = out.all_additive && is_additive(g);
  }
  out.d = static_cast<int>(out.additive_gens.size());
  return out;
}

RidEqDirReport check_rid_eq_dir(const std::vector<Poly>& forms) {
  RidEqDirReport rep;
  auto dir = translation_directrix(forms);
  rep.directrix = dir.linear_forms;
  if (forms.front().field().is_rational()) {
    rep.reduced_gens = dir.linear_forms;
    rep.outcome = RidEqDir::Holds;
    return rep;
  }
  auto rid = ridge(forms);
  if (!rid.all_additive) {
    rep.outcome = RidEqDir::Unknown;
    rep.reduced_gens = rid.additive_gens;
    rep.note = "ridge search produced a non-additive generator";
    return rep;
  }
  for (auto g : rid.additive_gens) {
    g = descend(g);
    rep.reduced_gens.push_back(g);
  }
  for (const auto& g : rep.reduced_gens)
    if (g.total_degree() > 1) {
      rep.outcome = RidEqDir::Fails;
      rep.witness = g;
      rep.note = "reduced ridge generator is not linear";
      return rep;
    }
  int r = forms.front().frame()->r();
  Matrix<Scalar> rid_rows, dir_rows;
  for (const auto& g : rep.reduced_gens) rid_rows.push_back(linear_coeffs(g));
  for (const auto& g : rep.directrix) dir_rows.push_back(linear_coeffs(g));
  for (std::size_t i = 0; i < rid_rows.size(); ++i)
    if (!in_span(rid_rows[i], dir_rows, r)) {
      rep.outcome = RidEqDir::Fails;
      rep.witness = rep.reduced_gens[i];
      rep.note = "ridge generator outside the directrix span";
      return rep;
    }
  for (std::size_t i = 0; i < dir_rows.size(); ++i)
    if (!in_span(dir_rows[i], rid_rows, r)) {
      rep.outcome = RidEqDir::Fails;
      rep.witness = rep.directrix[i];
      rep.note = "directrix form outside the reduced ridge span";
      return rep;
    }
  rep.outcome = RidEqDir::Holds;
  return rep;
}

namespace {

// Decides condition (1) through the S-pair syzygies of the 0-initial forms,
// lifting each one and reducing it by v_L-initial forms.
ConditionStatus check_condition_one(const std::vector<Poly>& f, const std::vector<Poly>& in0, const LinearForm& l,
                                    int budget, std::string& witness) {
  std::size_t m = f.size();
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const Monomial& li = gb::leading_monomial(in0[i]);
      const Monomial& lj = gb::leading_monomial(in0[j]);
      Monomial lcm = li;
      for (std::size_t k = 0; k < lcm.b.size(); ++k) lcm.b[k] = std::max(li.b[k], lj.b[k]);
      Monomial qi = lcm, qj = lcm;
      for (std::size_t k = 0; k < lcm.b.size(); ++k) {
        qi.b[k] -= li.b[k];
        qj.b[k] -= lj.b[k];
      }
      Scalar ci = gb::leading_coeff(in0[i]).inverse(), cj = gb::leading_coeff(in0[j]).inverse();
      Poly s = in0[i].times_monomial(qi, ci) - in0[j].times_monomial(qj, cj);
      auto div = gb::divide(s, in0);
      if (!div.remainder.is_zero()) {
        witness = "0-initial forms are not a Groebner basis; syzygies not covered";
        return ConditionStatus::NotEstablished;
      }
      Poly h = f[i].times_monomial(qi, ci) - f[j].times_monomial(qj, cj);
      for (std::size_t k = 0; k < m; ++k) h -= div.quotients[k] * f[k];
      int steps = 0;
      while (!h.is_zero()) {
        if (++steps > budget) {
          witness = "lifting budget exhausted on pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
          return ConditionStatus::NotEstablished;
        }
        Poly init = in_L(h, l).poly();
        std::map<std::vector<int>, Poly> groups;
        for (const auto& [mono, c] : init.terms()) {
          auto [it, fresh] = groups.try_emplace(mono.a, Poly(h.frame()));
          it->second.add_term(Monomial{std::vector<int>(mono.a.size(), 0), mono.b}, c);
        }
        for (const auto& [a, part] : groups) {
          auto d = gb::divide(part, in0);
          if (!d.remainder.is_zero()) {
            witness = "in_L of a lifted syzygy lies outside <in_0(f)>: " + init.to_string();
            return ConditionStatus::Violated;
          }
          Monomial shift{a, std::vector<int>(h.frame()->r(), 0)};
          for (std::size_t k = 0; k < m; ++k)
            if (!d.quotients[k].is_zero())
              h -= d.quotients[k].times_monomial(shift, Scalar::one(h.field())) * f[k];
        }
      }
    }
  return ConditionStatus::Checked;
}

}  // namespace

StdBasisReport check_standard_basis(const std::vector<Poly>& f, const LinearForm& l, int lift_budget) {
  if (f.empty()) throw InvalidInput("empty generator system");
  if (!l.positive()) throw InvalidInput("reference form must be positive");
  if (l.dim() != f.front().frame()->e()) throw InvalidInput("linear form dimension mismatch");
  StdBasisReport rep;
  rep.reference_form = l;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (order_mod_u(f[i]) == kInfiniteOrder) {
      rep.violations.push_back({"order", static_cast<int>(i + 1), "generator lies in <u>: " + f[i].to_string()});
      return rep;
    }
  std::vector<Poly> in0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    in0.push_back(in_zero(f[i]).poly());
    rep.orders.push_back(order_mod_u(f[i]));
    Poly inl = in_L(f[i], l).poly();
    if (!(inl == in0.back()))
      rep.violations.push_back({"a", static_cast<int>(i + 1), "in_L = " + inl.to_string() + ", in_0 = " + in0.back().to_string()});
  }
  for (std::size_t i = 1; i < f.size(); ++i)
    if (rep.orders[i] < rep.orders[i - 1])
      rep.violations.push_back({"b", static_cast<int>(i + 1),
                                "n_" + std::to_string(i + 1) + " = " + std::to_string(rep.orders[i]) + " < n_" +
                                    std::to_string(i) + " = " + std::to_string(rep.orders[i - 1])});
  for (std::size_t i = 1; i < f.size(); ++i) {
    std::vector<Poly> prev(in0.begin(), in0.begin() + static_cast<long>(i));
    if (gb::ideal_member(in0[i], prev))
      rep.violations.push_back({"c", static_cast<int>(i + 1), in0[i].to_string() + " lies in the ideal of the previous 0-initial forms"});
  }
  if (rep.violations.empty()) {
    std::string witness;
    rep.condition1 = check_condition_one(f, in0, l, lift_budget, witness);
    if (rep.condition1 == ConditionStatus::Violated) rep.violations.push_back({"1", 0, witness});
  }
  rep.ok = rep.violations.empty();
  return rep;
}

BasisSignature normalized_basis_signature(const std::vector<Poly>& f) {
  BasisSignature s;
  s.m = static_cast<int>(f.size());
  for (const auto& g : f) {
    s.exponents.push_back(exponent_of(g));
    s.orders.push_back(order_mod_u(g));
  }
  return s;
}

std::string to_string(RidEqDir r) {
  switch (r) {
    case RidEqDir::Holds: return "holds";
    case RidEqDir::Fails: return "fails";
    case RidEqDir::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::Checked: return "checked";
    case ConditionStatus::Violated: return "violated";
    case ConditionStatus::NotEstablished: return "not-established";
  }
  return "not-established";
}

}  // namespace charpoly
