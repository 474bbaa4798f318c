#include "charpoly/scalar.hpp"

#include "charpoly/error.hpp"

namespace charpoly {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t k, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (k) {
    if (k & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    k >>= 1;
  }
  return r;
}

std::uint64_t reduce(const mpz_class& z, std::uint64_t p) {
  mpz_class m = z % static_cast<unsigned long>(p);
  if (m < 0) m += static_cast<unsigned long>(p);
  return m.get_ui();
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p < 2 || p >= (1ULL << 31)) throw InvalidInput("field characteristic out of range: " + std::to_string(p));
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw InvalidInput("field characteristic is not prime: " + std::to_string(p));
  return Field(p);
}

std::string Field::to_string() const { return p_ == 0 ? "Q" : "Fp " + std::to_string(p_); }

Scalar::Scalar(const Field& k, long v) : field_(k) {
  if (k.is_rational()) {
    q_ = v;
  } else {
    long p = static_cast<long>(k.characteristic());
    long m = v % p;
    r_ = static_cast<std::uint64_t>(m < 0 ? m + p : m);
  }
}

Scalar::Scalar(const Field& k, const Rational& v) : field_(k) {
  if (k.is_rational()) {
    q_ = v;
    q_.canonicalize();
    return;
  }
  std::uint64_t p = k.characteristic();
  std::uint64_t den = reduce(v.get_den(), p);
  if (den == 0) throw DomainError("denominator divisible by the characteristic: " + v.get_str());
  r_ = mulmod(reduce(v.get_num(), p), powmod(den, p - 2, p), p);
}

bool Scalar::is_zero() const { return field_.is_rational() ? sgn(q_) == 0 : r_ == 0; }
bool Scalar::is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

Rational Scalar::to_rational() const {
  if (field_.is_rational()) return q_;
  return Rational(static_cast<unsigned long>(r_));
}

void Scalar::check_same(const Scalar& o) const {
  if (!(field_ == o.field_)) throw InvalidInput("arithmetic between different coefficient fields");
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (field_.is_rational())
    s.q_ = -q_;
  else
    s.r_ = r_ == 0 ? 0 : field_.characteristic() - r_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (field_.is_rational())
    q_ += o.q_;
  else
    r_ = (r_ + o.r_) % field_.characteristic();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (field_.is_rational())
    q_ *= o.q_;
  else
    r_ = mulmod(r_, o.r_, field_.characteristic());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  Scalar s = *this;
  if (field_.is_rational())
    s.q_ = 1 / q_;
  else
    s.r_ = powmod(r_, field_.characteristic() - 2, field_.characteristic());
  return s;
}

Scalar Scalar::pow(std::uint64_t k) const {
  Scalar s = *this;
  if (field_.is_rational()) {
    Rational acc = 1, b = q_;
    while (k) {
      if (k & 1) acc *= b;
      b *= b;
      k >>= 1;
    }
    s.q_ = acc;
  } else {
    s.r_ = powmod(r_, k, field_.characteristic());
  }
  return s;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::string Scalar::to_string() const {
  return field_.is_rational() ? rational_to_string(q_) : std::to_string(r_);
}

std::uint64_t denominator_of(const Rational& q) {
  if (!q.get_den().fits_ulong_p()) throw DomainError("denominator exceeds machine word");
  return q.get_den().get_ui();
}

std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw InvalidInput("empty rational literal");
  Rational q;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false, digit = false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] == '/' && !seen_slash && digit) {
      seen_slash = true;
      digit = false;
    } else if (s[k] >= '0' && s[k] <= '9') {
      digit = true;
    } else {
      throw InvalidInput("malformed rational literal: " + s);
    }
  }
  if (!digit) throw InvalidInput("malformed rational literal: " + s);
  std::string body = s[0] == '+' ? s.substr(1) : s;
  if (q.set_str(body, 10) != 0) throw InvalidInput("malformed rational literal: " + s);
  if (q.get_den() == 0) throw InvalidInput("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace charpoly
