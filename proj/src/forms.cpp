#include "charpoly/forms.hpp"

#include "charpoly/error.hpp"

namespace charpoly {

namespace {

Weighting standard_weighting(int e, Rational y_weight) {
  return Weighting{std::vector<Rational>(e, 1), std::move(y_weight)};
}

void require_nonzero(const Poly& g, const char* what) {
  if (g.is_zero()) throw DomainError(std::string(what) + " of the zero element");
}

}  // namespace

Rational Weighting::weight(const Monomial& m) const {
  Rational w = y_weight * m.deg_b();
  for (std::size_t i = 0; i < m.a.size(); ++i) w += u_weights[i] * m.a[i];
  return w;
}

GradedForm::GradedForm(Poly poly, Weighting weighting, Rational degree)
    : poly_(std::move(poly)), weighting_(std::move(weighting)), degree_(std::move(degree)) {
  for (const auto& [m, c] : poly_.terms())
    if (weighting_.weight(m) != degree_) throw InvalidInput("graded form is not homogeneous: " + poly_.to_string());
}

Rational MonomialValuation::operator()(const Monomial& m) const {
  Rational w = y_weight * m.deg_b();
  for (std::size_t i = 0; i < m.a.size(); ++i) w += l.coeffs[i] * m.a[i];
  return w;
}

GradedForm in_zero(const Poly& g) {
  int n = order_mod_u(g);
  if (n == kInfiniteOrder) throw DomainError("0-initial form undefined: element lies in <u>: " + g.to_string());
  Poly p(g.frame());
  for (const auto& [m, c] : g.terms())
    if (m.u_free() && m.deg_b() == n) p.add_term(m, c);
  return GradedForm(std::move(p), standard_weighting(g.frame()->e(), 1), n);
}

Rational v_L(const Poly& g, const LinearForm& l) {
  require_nonzero(g, "v_L");
  if (!l.positive()) throw InvalidInput("v_L needs a positive linear form");
  if (l.dim() != g.frame()->e()) throw InvalidInput("linear form dimension mismatch");
  MonomialValuation nu{l, 1};
  bool first = true;
  Rational best;
  for (const auto& [m, c] : g.terms()) {
    Rational w = nu(m);
    if (first || w < best) best = w;
    first = false;
  }
  return best;
}

GradedForm in_L(const Poly& g, const LinearForm& l) {
  Rational v = v_L(g, l);
  MonomialValuation nu{l, 1};
  Poly p(g.frame());
  for (const auto& [m, c] : g.terms())
    if (nu(m) == v) p.add_term(m, c);
  return GradedForm(std::move(p), Weighting{l.coeffs, 1}, v);
}

bool is_effective(const LinearForm& l, const std::vector<Poly>& f) {
  for (const auto& g : f)
    if (!in_L(g, l).in_y_only()) return false;
  return true;
}

std::vector<QPoint> projected_points(const Poly& g) {
  int n = order_mod_u(g);
  if (n == kInfiniteOrder) throw DomainError("polyhedron undefined: element lies in <u>: " + g.to_string());
  std::vector<QPoint> pts;
  for (const auto& [m, c] : g.terms()) {
    int db = m.deg_b();
    if (db >= n) continue;
    QPoint p(m.a.size());
    for (std::size_t i = 0; i < m.a.size(); ++i) p[i] = make_rational(m.a[i], n - db);
    pts.push_back(std::move(p));
  }
  return pts;
}

GradedForm in_vertex(const Poly& g, const QPoint& v) {
  GradedForm base = in_zero(g);
  int n = order_mod_u(g);
  if (static_cast<int>(v.size()) != g.frame()->e()) throw InvalidInput("vertex dimension mismatch");
  Poly p = base.poly();
  for (const auto& [m, c] : g.terms()) {
    int db = m.deg_b();
    if (db >= n) continue;
    bool hit = true;
    for (std::size_t i = 0; i < m.a.size() && hit; ++i) hit = make_rational(m.a[i], n - db) == v[i];
    if (hit) p.add_term(m, c);
  }
  Rational sum = 0;
  for (const auto& x : v) sum += x;
  // Homogeneous for weights 1 on u and sum(v) on y: A + |B| v = n v componentwise.
  return GradedForm(std::move(p), standard_weighting(g.frame()->e(), sum), sum * n);
}

FSubset poly_of_element(const Poly& g) { return FSubset::from_points(g.frame()->e(), projected_points(g)); }

FSubset poly_of_system(const std::vector<Poly>& f) {
  if (f.empty()) throw InvalidInput("empty generator system");
  std::vector<QPoint> pts;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (order_mod_u(f[i]) == kInfiniteOrder)
      throw DomainError("generator " + std::to_string(i + 1) + " lies in <u>: " + f[i].to_string());
    auto p = projected_points(f[i]);
    pts.insert(pts.end(), p.begin(), p.end());
  }
  return FSubset::from_points(f.front().frame()->e(), std::move(pts));
}

FSubset poly_of_pair(const std::vector<Poly>& f, const Rational& b) {
  if (sgn(b) <= 0) throw InvalidInput("pair weight b must be positive");
  if (f.empty()) throw InvalidInput("empty generator system");
  int order = kInfiniteOrder;
  for (const auto& g : f)
    for (const auto& [m, c] : g.terms()) order = std::min(order, m.degree());
  if (b > order) throw InvalidInput("pair weight b exceeds the order of the ideal");
  std::vector<QPoint> pts;
  for (const auto& g : f)
    for (const auto& [m, c] : g.terms()) {
      Rational gap = b - m.deg_b();
      if (sgn(gap) <= 0) continue;
      QPoint p(m.a.size());
      for (std::size_t i = 0; i < m.a.size(); ++i) p[i] = m.a[i] / gap;
      pts.push_back(std::move(p));
    }
  return FSubset::from_points(f.front().frame()->e(), std::move(pts));
}

GradedForm in_nu(const Poly& g, const MonomialValuation& nu) {
  require_nonzero(g, "in_nu");
  if (nu.l.dim() != g.frame()->e()) throw InvalidInput("valuation dimension mismatch");
  bool first = true;
  Rational best;
  for (const auto& [m, c] : g.terms()) {
    Rational w = nu(m);
    if (first || w < best) best = w;
    first = false;
  }
  Poly p(g.frame());
  for (const auto& [m, c] : g.terms())
    if (nu(m) == best) p.add_term(m, c);
  return GradedForm(std::move(p), Weighting{nu.l.coeffs, nu.y_weight}, best);
}

}  // namespace charpoly
