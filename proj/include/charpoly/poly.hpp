#ifndef CHARPOLY_POLY_HPP
#define CHARPOLY_POLY_HPP

#include <compare>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "charpoly/scalar.hpp"

namespace charpoly {

/// The marked parameter system (u_1..u_e; y_1..y_r) together with the coefficient field.
struct Frame {
  std::vector<std::string> u_names;
  std::vector<std::string> y_names;
  Field field;

  int e() const { return static_cast<int>(u_names.size()); }
  int r() const { return static_cast<int>(y_names.size()); }

  /// Validates e >= 1, r >= 1 and distinct identifiers.
  static std::shared_ptr<const Frame> make(std::vector<std::string> u, std::vector<std::string> y, Field k);
};

using FramePtr = std::shared_ptr<const Frame>;

/// Exponent pair (A, B): A indexes u, B indexes y.
struct Monomial {
  std::vector<int> a;
  std::vector<int> b;

  int deg_a() const;
  int deg_b() const;
  int degree() const { return deg_a() + deg_b(); }
  bool u_free() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator+(const Monomial& x, const Monomial& y);

/// Total order on y-exponents by (|B|, B_1, ..., B_r) lexicographically.
/// Throws InvalidInput on length mismatch.
std::strong_ordering grlex_compare(std::span<const int> b1, std::span<const int> b2);

/// True when b lies in base + Z^r_{>=0}.
bool divides(std::span<const int> base, std::span<const int> b);

/// Finite sum of C_{A,B} u^A y^B with nonzero coefficients, one entry per exponent.
class Poly {
 public:
  using TermMap = std::map<Monomial, Scalar>;

  explicit Poly(FramePtr frame) : frame_(std::move(frame)) {}

  static Poly constant(FramePtr frame, const Scalar& c);
  static Poly u(FramePtr frame, int i, int power = 1);
  static Poly y(FramePtr frame, int j, int power = 1);
  static Poly monomial(FramePtr frame, Monomial m, const Scalar& c);

  const FramePtr& frame() const { return frame_; }
  const Field& field() const { return frame_->field; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coeff(const Monomial& m) const;
  Monomial zero_exponent() const;

  /// Adds c * m, dropping the entry if it cancels.
  void add_term(const Monomial& m, const Scalar& c);

  int total_degree() const;
  int max_deg_b() const;
  /// True when no term involves u.
  bool u_free() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Scalar& c) const;
  Poly times_monomial(const Monomial& m, const Scalar& c) const;
  Poly pow(int k) const;

  /// Drops all terms of total degree > max_degree.
  Poly truncated(int max_degree) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void check_frame(const Poly& o) const;

  FramePtr frame_;
  TermMap terms_;
};

/// Product with all terms of total degree > max_degree discarded.
Poly multiply_truncated(const Poly& a, const Poly& b, int max_degree);

constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

/// n_(u)(g): least |B| over terms with A = 0; kInfiniteOrder when g lies in <u>.
int order_mod_u(const Poly& g);

/// grlex-least B among the terms with A = 0. Throws DomainError when g lies in <u>.
std::vector<int> exponent_of(const Poly& g);

/// g with y_j replaced by y_j + h. Throws InvalidInput for a bad index or a frame mismatch.
Poly substitute_y(const Poly& g, int j, const Poly& h);

/// g with every y_j replaced by images[j] simultaneously; optional truncation of all
/// intermediate products at max_degree.
Poly substitute_all_y(const Poly& g, const std::vector<Poly>& images,
                      std::optional<int> max_degree = std::nullopt);

/// Rewrites g in the coordinates z_j = y_j + h_j (z_j reusing the y_j slot).
///
/// The inverse y = z - h(u, y) is expanded as a truncated series up to
/// `max_degree`; the result is accepted only if substituting y_j + h_j back
/// reproduces g exactly, so the returned polynomial is exact. Returns nullopt
/// when g has no polynomial expression within the bound. Each h_j must have no
/// constant term and no y-linear term.
std::optional<Poly> change_coordinates(const Poly& g, const std::vector<Poly>& h, int max_degree);

/// Default truncation degree for change_coordinates: deg(g) * (deg(h) + 1).
int default_series_degree(const Poly& g, const std::vector<Poly>& h);

}  // namespace charpoly

#endif
