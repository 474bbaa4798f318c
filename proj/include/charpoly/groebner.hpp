#ifndef CHARPOLY_GROEBNER_HPP
#define CHARPOLY_GROEBNER_HPP

#include <vector>

#include "charpoly/poly.hpp"

// Buchberger over K[Y]. Inputs are u-free Polys; the term order is grlex on
// the y-exponent.
namespace charpoly::gb {

/// grlex-greatest exponent. The polynomial must be nonzero and u-free.
const Monomial& leading_monomial(const Poly& f);
Scalar leading_coeff(const Poly& f);

struct Division {
  std::vector<Poly> quotients;
  Poly remainder;
};

/// Multivariate division: f = sum q_k d_k + remainder, with no remainder term
/// divisible by a leading monomial.
Division divide(const Poly& f, const std::vector<Poly>& divisors);

/// Reduced monic Groebner basis. Throws BudgetExhausted after `max_pairs`
/// S-pair reductions.
std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, int max_pairs = 20000);

/// Membership test against a Groebner basis.
bool reduces_to_zero(const Poly& f, const std::vector<Poly>& basis);

/// Membership of f in the ideal generated by gens.
bool ideal_member(const Poly& f, const std::vector<Poly>& gens);

}  // namespace charpoly::gb

#endif
