#ifndef CHARPOLY_FORMS_HPP
#define CHARPOLY_FORMS_HPP

#include <vector>

#include "charpoly/poly.hpp"
#include "charpoly/polyhedron.hpp"

namespace charpoly {

/// Weight a_i on u_i and a common weight on every y_j.
struct Weighting {
  std::vector<Rational> u_weights;
  Rational y_weight;

  Rational weight(const Monomial& m) const;
};

/// Polynomial in (U, Y) homogeneous for the weighting that produced it.
class GradedForm {
 public:
  /// Throws InvalidInput if some term has weight different from `degree`.
  GradedForm(Poly poly, Weighting weighting, Rational degree);

  const Poly& poly() const { return poly_; }
  const Weighting& weighting() const { return weighting_; }
  const Rational& degree() const { return degree_; }
  bool in_y_only() const { return poly_.u_free(); }

  friend bool operator==(const GradedForm& a, const GradedForm& b) { return a.poly_ == b.poly_; }

 private:
  Poly poly_;
  Weighting weighting_;
  Rational degree_;
};

/// nu(u^A y^B) = L(A) + l |B|, with L semi-positive.
struct MonomialValuation {
  LinearForm l;
  Rational y_weight;

  Rational operator()(const Monomial& m) const;
};

/// Sum of the terms C_{0,B} Y^B with |B| = n_(u)(g). DomainError if g lies in <u>.
GradedForm in_zero(const Poly& g);

/// min over terms of L(A) + |B|. L must be positive, g nonzero.
Rational v_L(const Poly& g, const LinearForm& l);
GradedForm in_L(const Poly& g, const LinearForm& l);

/// in_L(f_i) lies in K[Y] for every generator.
bool is_effective(const LinearForm& l, const std::vector<Poly>& f);

/// in_0(g) plus the terms whose projected point A/(n - |B|) equals v.
GradedForm in_vertex(const Poly& g, const QPoint& v);

/// Projected points A/(n - |B|) for the terms with |B| < n = n_(u)(g).
std::vector<QPoint> projected_points(const Poly& g);

FSubset poly_of_element(const Poly& g);
/// Throws DomainError naming the first generator lying in <u>.
FSubset poly_of_system(const std::vector<Poly>& f);

/// F-subset of A/(b - |B|) over every generator's terms with |B| < b.
/// Requires 0 < b <= the order of the ideal at the origin.
FSubset poly_of_pair(const std::vector<Poly>& f, const Rational& b);

/// Terms minimizing nu.
GradedForm in_nu(const Poly& g, const MonomialValuation& nu);

}  // namespace charpoly

#endif
