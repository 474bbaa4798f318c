#include "charpoly/poly.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "charpoly/error.hpp"

namespace charpoly {

FramePtr Frame::make(std::vector<std::string> u, std::vector<std::string> y, Field k) {
  if (u.empty()) throw InvalidInput("frame needs at least one u-variable");
  if (y.empty()) throw InvalidInput("frame needs at least one y-variable");
  std::set<std::string> seen;
  for (const auto* names : {&u, &y})
    for (const auto& n : *names) {
      if (n.empty()) throw InvalidInput("empty variable name");
      if (!seen.insert(n).second) throw InvalidInput("duplicate variable name: " + n);
    }
  auto f = std::make_shared<Frame>();
  f->u_names = std::move(u);
  f->y_names = std::move(y);
  f->field = k;
  return f;
}

int Monomial::deg_a() const { return std::accumulate(a.begin(), a.end(), 0); }
int Monomial::deg_b() const { return std::accumulate(b.begin(), b.end(), 0); }
bool Monomial::u_free() const {
  return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

Monomial operator+(const Monomial& x, const Monomial& y) {
  Monomial m = x;
  for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] += y.a[i];
  for (std::size_t j = 0; j < m.b.size(); ++j) m.b[j] += y.b[j];
  return m;
}

std::strong_ordering grlex_compare(std::span<const int> b1, std::span<const int> b2) {
  if (b1.size() != b2.size()) throw InvalidInput("grlex_compare: exponent length mismatch");
  int d1 = std::accumulate(b1.begin(), b1.end(), 0);
  int d2 = std::accumulate(b2.begin(), b2.end(), 0);
  if (d1 != d2) return d1 <=> d2;
  for (std::size_t i = 0; i < b1.size(); ++i)
    if (b1[i] != b2[i]) return b1[i] <=> b2[i];
  return std::strong_ordering::equal;
}

bool divides(std::span<const int> base, std::span<const int> b) {
  for (std::size_t i = 0; i < base.size(); ++i)
    if (base[i] > b[i]) return false;
  return true;
}

Poly Poly::constant(FramePtr frame, const Scalar& c) {
  Poly p(frame);
  p.add_term(p.zero_exponent(), c);
  return p;
}

Poly Poly::u(FramePtr frame, int i, int power) {
  if (i < 0 || i >= frame->e()) throw InvalidInput("u index out of range");
  Poly p(frame);
  Monomial m = p.zero_exponent();
  m.a[i] = power;
  p.add_term(m, Scalar::one(frame->field));
  return p;
}

Poly Poly::y(FramePtr frame, int j, int power) {
  if (j < 0 || j >= frame->r()) throw InvalidInput("y index out of range");
  Poly p(frame);
  Monomial m = p.zero_exponent();
  m.b[j] = power;
  p.add_term(m, Scalar::one(frame->field));
  return p;
}

Poly Poly::monomial(FramePtr frame, Monomial m, const Scalar& c) {
  Poly p(frame);
  p.add_term(m, c);
  return p;
}

Monomial Poly::zero_exponent() const {
  return Monomial{std::vector<int>(frame_->e(), 0), std::vector<int>(frame_->r(), 0)};
}

Scalar Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(field()) : it->second;
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int Poly::max_deg_b() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.deg_b());
  return d;
}

bool Poly::u_free() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.u_free(); });
}

void Poly::check_frame(const Poly& o) const {
  if (frame_ != o.frame_ && !(frame_->e() == o.frame_->e() && frame_->r() == o.frame_->r() &&
                              frame_->field == o.frame_->field))
    throw InvalidInput("polynomials live in different frames");
}

Poly Poly::operator-() const {
  Poly p(frame_);
  for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
  return p;
}

Poly& Poly::operator+=(const Poly& o) {
  check_frame(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_frame(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_frame(b);
  Poly p(a.frame_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) p.add_term(ma + mb, ca * cb);
  return p;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly multiply_truncated(const Poly& a, const Poly& b, int max_degree) {
  Poly p(a.frame());
  for (const auto& [ma, ca] : a.terms()) {
    int da = ma.degree();
    if (da > max_degree) continue;
    for (const auto& [mb, cb] : b.terms())
      if (da + mb.degree() <= max_degree) p.add_term(ma + mb, ca * cb);
  }
  return p;
}

Poly Poly::scaled(const Scalar& c) const {
  Poly p(frame_);
  if (c.is_zero()) return p;
  for (const auto& [m, x] : terms_) p.terms_.emplace(m, x * c);
  return p;
}

Poly Poly::times_monomial(const Monomial& mono, const Scalar& c) const {
  Poly p(frame_);
  if (c.is_zero()) return p;
  for (const auto& [m, x] : terms_) p.terms_.emplace(m + mono, x * c);
  return p;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw InvalidInput("negative polynomial power");
  Poly acc = constant(frame_, Scalar::one(field()));
  Poly base = *this;
  while (k) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

Poly Poly::truncated(int max_degree) const {
  Poly p(frame_);
  for (const auto& [m, c] : terms_)
    if (m.degree() <= max_degree) p.terms_.emplace(m, c);
  return p;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Scalar>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& x, const auto& y) {
                     const Monomial& m = x.first;
                     const Monomial& n = y.first;
                     // Ascending degree; within a degree y-heavy terms first, then y1 before y2, u1 before u2.
                     if (m.degree() != n.degree()) return m.degree() < n.degree();
                     if (m.deg_b() != n.deg_b()) return m.deg_b() > n.deg_b();
                     if (m.b != n.b) return m.b > n.b;
                     return m.a > n.a;
                   });
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    std::string coeff = c.to_string();
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff = coeff.substr(1);
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    std::vector<std::string> factors;
    for (int i = 0; i < frame_->e(); ++i)
      if (m.a[i]) factors.push_back(frame_->u_names[i] + (m.a[i] > 1 ? "^" + std::to_string(m.a[i]) : ""));
    for (int j = 0; j < frame_->r(); ++j)
      if (m.b[j]) factors.push_back(frame_->y_names[j] + (m.b[j] > 1 ? "^" + std::to_string(m.b[j]) : ""));
    if (factors.empty()) {
      out << coeff;
      continue;
    }
    if (coeff != "1") out << coeff << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) out << (k ? "*" : "") << factors[k];
  }
  return out.str();
}

int order_mod_u(const Poly& g) {
  int n = kInfiniteOrder;
  for (const auto& [m, c] : g.terms())
    if (m.u_free()) n = std::min(n, m.deg_b());
  return n;
}

std::vector<int> exponent_of(const Poly& g) {
  const std::vector<int>* best = nullptr;
  for (const auto& [m, c] : g.terms())
    if (m.u_free() && (!best || grlex_compare(m.b, *best) < 0)) best = &m.b;
  if (!best) throw DomainError("exponent undefined: element lies in <u>: " + g.to_string());
  return *best;
}

Poly substitute_y(const Poly& g, int j, const Poly& h) {
  if (j < 0 || j >= g.frame()->r()) throw InvalidInput("substitute_y: index out of range");
  std::vector<Poly> images;
  for (int k = 0; k < g.frame()->r(); ++k) images.push_back(Poly::y(g.frame(), k));
  images[j] += h;
  return substitute_all_y(g, images);
}

Poly substitute_all_y(const Poly& g, const std::vector<Poly>& images, std::optional<int> max_degree) {
  const auto& frame = g.frame();
  if (static_cast<int>(images.size()) != frame->r()) throw InvalidInput("substitution needs one image per y");
  auto mul = [&](const Poly& a, const Poly& b) {
    return max_degree ? multiply_truncated(a, b, *max_degree) : a * b;
  };
  // powers[j][k] = images[j]^k, filled lazily
  std::vector<std::vector<Poly>> powers(frame->r());
  auto power = [&](int j, int k) -> const Poly& {
    auto& pw = powers[j];
    if (pw.empty()) pw.push_back(Poly::constant(frame, Scalar::one(frame->field)));
    while (static_cast<int>(pw.size()) <= k) pw.push_back(mul(pw.back(), images[j]));
    return pw[k];
  };
  Poly result(frame);
  for (const auto& [m, c] : g.terms()) {
    if (max_degree && m.deg_a() > *max_degree) continue;
    Monomial ua = m;
    std::fill(ua.b.begin(), ua.b.end(), 0);
    Poly term = Poly::monomial(frame, ua, c);
    for (int j = 0; j < frame->r() && !term.is_zero(); ++j)
      if (m.b[j]) term = mul(term, power(j, m.b[j]));
    result += term;
  }
  return result;
}

int default_series_degree(const Poly& g, const std::vector<Poly>& h) {
  int dh = 0;
  for (const auto& p : h) dh = std::max(dh, p.total_degree());
  return std::max(1, g.total_degree()) * (dh + 1);
}

std::optional<Poly> change_coordinates(const Poly& g, const std::vector<Poly>& h, int max_degree) {
  const auto& frame = g.frame();
  if (static_cast<int>(h.size()) != frame->r()) throw InvalidInput("change_coordinates: one h per y required");
  for (const auto& hj : h)
    for (const auto& [m, c] : hj.terms())
      if (m.u_free() && m.deg_b() <= 1)
        throw InvalidInput("coordinate change must not have constant or y-linear part: " + hj.to_string());

  std::vector<Poly> ys, inverse;
  for (int j = 0; j < frame->r(); ++j) ys.push_back(Poly::y(frame, j));
  inverse = ys;
  for (int it = 0; it <= max_degree + 1; ++it) {
    std::vector<Poly> next;
    for (int j = 0; j < frame->r(); ++j)
      next.push_back(ys[j] - substitute_all_y(h[j], inverse, max_degree).truncated(max_degree));
    if (next == inverse) break;
    inverse = std::move(next);
  }
  Poly candidate = substitute_all_y(g, inverse, max_degree).truncated(max_degree);

  std::vector<Poly> forward;
  for (int j = 0; j < frame->r(); ++j) forward.push_back(ys[j] + h[j]);
  if (!(substitute_all_y(candidate, forward) == g)) return std::nullopt;
  return candidate;
}

}  // namespace charpoly
