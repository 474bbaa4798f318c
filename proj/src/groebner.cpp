#include "charpoly/groebner.hpp"

#include <algorithm>

#include "charpoly/error.hpp"

namespace charpoly::gb {

namespace {

bool grlex_less(const Monomial& x, const Monomial& y) { return grlex_compare(x.b, y.b) < 0; }

Monomial quotient_monomial(const Monomial& num, const Monomial& den) {
  Monomial q = num;
  for (std::size_t j = 0; j < q.b.size(); ++j) q.b[j] -= den.b[j];
  return q;
}

Monomial lcm(const Monomial& x, const Monomial& y) {
  Monomial m = x;
  for (std::size_t j = 0; j < m.b.size(); ++j) m.b[j] = std::max(x.b[j], y.b[j]);
  return m;
}

Poly monic(const Poly& f) { return f.scaled(leading_coeff(f).inverse()); }

Poly s_polynomial(const Poly& f, const Poly& g) {
  const Monomial& lf = leading_monomial(f);
  const Monomial& lg = leading_monomial(g);
  Monomial l = lcm(lf, lg);
  return f.times_monomial(quotient_monomial(l, lf), leading_coeff(f).inverse()) -
         g.times_monomial(quotient_monomial(l, lg), leading_coeff(g).inverse());
}

}  // namespace

const Monomial& leading_monomial(const Poly& f) {
  if (f.is_zero()) throw DomainError("leading monomial of zero");
  if (!f.u_free()) throw InvalidInput("Groebner routines expect polynomials in K[Y]");
  auto it = std::max_element(f.terms().begin(), f.terms().end(),
                             [](const auto& x, const auto& y) { return grlex_less(x.first, y.first); });
  return it->first;
}

Scalar leading_coeff(const Poly& f) { return f.coeff(leading_monomial(f)); }

Division divide(const Poly& f, const std::vector<Poly>& divisors) {
  Division d{std::vector<Poly>(divisors.size(), Poly(f.frame())), Poly(f.frame())};
  std::vector<Monomial> lead;
  std::vector<Scalar> lc;
  for (const auto& g : divisors) {
    lead.push_back(leading_monomial(g));
    lc.push_back(leading_coeff(g));
  }
  Poly p = f;
  while (!p.is_zero()) {
    Monomial m = leading_monomial(p);
    Scalar c = p.coeff(m);
    bool reduced = false;
    for (std::size_t k = 0; k < divisors.size() && !reduced; ++k) {
      if (!divides(lead[k].b, m.b)) continue;
      Monomial q = quotient_monomial(m, lead[k]);
      Scalar factor = c / lc[k];
      d.quotients[k].add_term(q, factor);
      p -= divisors[k].times_monomial(q, factor);
      reduced = true;
    }
    if (!reduced) {
      d.remainder.add_term(m, c);
      p.add_term(m, -c);
    }
  }
  return d;
}

std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, int max_pairs) {
  std::vector<Poly> basis;
  for (const auto& g : gens)
    if (!g.is_zero()) basis.push_back(monic(g));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  int processed = 0;
  while (!pairs.empty()) {
    if (++processed > max_pairs) throw BudgetExhausted("Groebner basis: pair budget exhausted");
    auto [i, j] = pairs.back();
    pairs.pop_back();
    const Monomial& li = leading_monomial(basis[i]);
    const Monomial& lj = leading_monomial(basis[j]);
    // Buchberger's first criterion: coprime leading monomials reduce to zero.
    bool coprime = true;
    for (std::size_t k = 0; k < li.b.size() && coprime; ++k) coprime = li.b[k] == 0 || lj.b[k] == 0;
    if (coprime) continue;
    Poly r = divide(s_polynomial(basis[i], basis[j]), basis).remainder;
    if (r.is_zero()) continue;
    basis.push_back(monic(r));
    for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
  }
  // Minimalize, then inter-reduce.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < basis.size() && !redundant; ++k) {
      if (k == i) continue;
      const auto& lk = leading_monomial(basis[k]).b;
      const auto& li = leading_monomial(basis[i]).b;
      if (divides(lk, li) && (lk != li || k < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    Poly lead = Poly::monomial(minimal[i].frame(), leading_monomial(minimal[i]), Scalar::one(minimal[i].field()));
    minimal[i] = lead + divide(minimal[i] - lead, others).remainder;
  }
  std::sort(minimal.begin(), minimal.end(),
            [](const Poly& x, const Poly& y) { return grlex_less(leading_monomial(x), leading_monomial(y)); });
  return minimal;
}

bool reduces_to_zero(const Poly& f, const std::vector<Poly>& basis) {
  if (f.is_zero()) return true;
  if (basis.empty()) return false;
  return divide(f, basis).remainder.is_zero();
}

bool ideal_member(const Poly& f, const std::vector<Poly>& gens) { return reduces_to_zero(f, groebner_basis(gens)); }

}  // namespace charpoly::gb
