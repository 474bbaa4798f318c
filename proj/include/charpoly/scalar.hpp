#ifndef CHARPOLY_SCALAR_HPP
#define CHARPOLY_SCALAR_HPP

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace charpoly {

using Rational = mpq_class;

/// Coefficient field: Q when characteristic is 0, otherwise the prime field F_p.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  /// Throws InvalidInput unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);

  std::uint64_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }
  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

/// Exact element of Q or F_p. Arithmetic between different fields throws.
class Scalar {
 public:
  Scalar() = default;  // 0 in Q
  Scalar(const Field& k, long v);
  Scalar(const Field& k, const Rational& v);

  static Scalar zero(const Field& k) { return Scalar(k, 0L); }
  static Scalar one(const Field& k) { return Scalar(k, 1L); }

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Value as a rational; for F_p the canonical residue in [0, p).
  Rational to_rational() const;
  std::uint64_t residue() const { return r_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  Scalar pow(std::uint64_t k) const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  std::string to_string() const;

 private:
  void check_same(const Scalar& o) const;

  Field field_;
  Rational q_;         // used when field_ is Q
  std::uint64_t r_ = 0;  // used when field_ is F_p
};

/// Greatest denominator appearing in a rational, as an integer.
std::uint64_t denominator_of(const Rational& q);
std::string rational_to_string(const Rational& q);

/// num/den in lowest terms (mpq_class(num, den) alone is not canonical).
inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}
/// Parses "a", "-a", "a/b". Throws InvalidInput.
Rational parse_rational(const std::string& s);

}  // namespace charpoly

#endif
