#include "charpoly/polyhedron.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "charpoly/error.hpp"
#include "charpoly/linalg.hpp"
#include "charpoly/lp.hpp"

namespace charpoly {

namespace {

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool dominates(const QPoint& p, const QPoint& q) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < q[i]) return false;
  return true;
}

// p in conv(gens) + orthant, decided by an exact LP over the convex weights.
bool in_hull_plus_orthant(const QPoint& p, const std::vector<QPoint>& gens) {
  if (gens.empty()) return false;
  for (const auto& x : p)
    if (sgn(x) < 0) return false;
  for (const auto& g : gens)
    if (dominates(p, g)) return true;
  const std::size_t n = gens.size(), e = p.size();
  std::vector<lp::Constraint> cons;
  cons.push_back({std::vector<Rational>(n, 1), lp::Sense::Equal, 1});
  for (std::size_t i = 0; i < e; ++i) {
    lp::Constraint c{std::vector<Rational>(n), lp::Sense::LessEq, p[i]};
    for (std::size_t k = 0; k < n; ++k) c.a[k] = gens[k][i];
    cons.push_back(std::move(c));
  }
  return lp::feasible(n, cons);
}

std::vector<LinearForm> compute_facets(int e, const std::vector<QPoint>& verts) {
  std::vector<LinearForm> out;
  const std::size_t ue = static_cast<std::size_t>(e);
  for (std::size_t s = 0; s < ue; ++s) {
    std::size_t k = ue - s;
    for_each_combination(ue, s, [&](const std::vector<std::size_t>& zeros) {
      for_each_combination(verts.size(), k, [&](const std::vector<std::size_t>& chosen) {
        linalg::Matrix<Rational> a;
        std::vector<Rational> b;
        for (auto vi : chosen) {
          a.push_back(verts[vi]);
          b.push_back(1);
        }
        for (auto zi : zeros) {
          std::vector<Rational> row(ue, 0);
          row[zi] = 1;
          a.push_back(row);
          b.push_back(0);
        }
        if (linalg::rank(a, ue) != ue) return;
        auto sol = linalg::solve(a, b, Rational(0));
        if (!sol) return;
        for (const auto& x : *sol)
          if (sgn(x) < 0) return;
        LinearForm l(*sol);
        for (const auto& w : verts)
          if (l(w) < 1) return;
        if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
      });
    });
  }
  std::sort(out.begin(), out.end(), [](const LinearForm& x, const LinearForm& y) { return x.coeffs < y.coeffs; });
  return out;
}

}  // namespace

bool point_less(const QPoint& p, const QPoint& q) {
  Rational sp = 0, sq = 0;
  for (const auto& x : p) sp += x;
  for (const auto& x : q) sq += x;
  if (sp != sq) return sp < sq;
  return p < q;
}

std::string point_to_string(const QPoint& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + rational_to_string(p[i]);
  return s;
}

LinearForm::LinearForm(std::vector<Rational> a) : coeffs(std::move(a)) {
  bool nonzero = false;
  for (auto& x : coeffs) {
    x.canonicalize();
    if (sgn(x) < 0) throw InvalidInput("linear form coefficients must be nonnegative");
    if (sgn(x) > 0) nonzero = true;
  }
  if (!nonzero) throw InvalidInput("linear form must not vanish identically");
}

bool LinearForm::positive() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& x) { return sgn(x) > 0; });
}

Rational LinearForm::operator()(const QPoint& v) const {
  if (v.size() != coeffs.size()) throw InvalidInput("linear form evaluated at point of wrong dimension");
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += coeffs[i] * v[i];
  return s;
}

std::uint64_t LinearForm::max_denominator() const {
  std::uint64_t d = 1;
  for (const auto& x : coeffs) d = std::max(d, denominator_of(x));
  return d;
}

std::string LinearForm::to_string() const { return "(" + point_to_string(coeffs) + ")"; }

FSubset::FSubset(int e) : e_(e), facets_(std::make_shared<FacetCache>()) {
  if (e < 1) throw InvalidInput("F-subset dimension must be positive");
}

FSubset FSubset::from_points(int e, std::vector<QPoint> points) {
  FSubset d(e);
  for (auto& p : points) {
    if (static_cast<int>(p.size()) != e) throw InvalidInput("point dimension mismatch");
    for (auto& x : p) {
      x.canonicalize();
      if (sgn(x) < 0) throw InvalidInput("negative coordinate in point " + point_to_string(p));
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Drop points dominating another point; the rest need a hull test.
  std::vector<QPoint> minimal;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j)
      dominated = i != j && dominates(points[i], points[j]);
    if (!dominated) minimal.push_back(points[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<QPoint> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    if (!in_hull_plus_orthant(minimal[i], others)) d.vertices_.push_back(minimal[i]);
  }
  std::sort(d.vertices_.begin(), d.vertices_.end(), point_less);
  return d;
}

const std::vector<LinearForm>& FSubset::facets() const {
  if (empty()) throw DomainError("facets of the empty F-subset");
  std::call_once(facets_->once, [this] { facets_->forms = compute_facets(e_, vertices_); });
  return facets_->forms;
}

bool FSubset::contains(const QPoint& v) const {
  if (static_cast<int>(v.size()) != e_) throw InvalidInput("point dimension mismatch");
  return in_hull_plus_orthant(v, vertices_);
}

bool FSubset::contains(const FSubset& other) const {
  return std::all_of(other.vertices_.begin(), other.vertices_.end(),
                     [this](const QPoint& v) { return contains(v); });
}

std::uint64_t FSubset::max_denominator() const {
  std::uint64_t d = 1;
  for (const auto& v : vertices_)
    for (const auto& x : v) d = std::max(d, denominator_of(x));
  return d;
}

std::string FSubset::to_string() const {
  if (empty()) return "{}";
  std::string s = "{";
  for (std::size_t i = 0; i < vertices_.size(); ++i) s += (i ? "; (" : "(") + point_to_string(vertices_[i]) + ")";
  return s + "}";
}

FSubset fsubset_from_points(int e, std::vector<QPoint> points) { return FSubset::from_points(e, std::move(points)); }

VertexTest is_vertex(const FSubset& delta, const QPoint& v) {
  VertexTest res;
  const auto& verts = delta.vertices();
  if (std::find(verts.begin(), verts.end(), v) == verts.end()) return res;
  res.is_vertex = true;
  if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; })) return res;

  const std::size_t e = v.size();
  std::vector<lp::Constraint> cons;
  for (std::size_t i = 0; i < e; ++i) {
    std::vector<Rational> row(e, 0);
    row[i] = 1;
    cons.push_back({row, lp::Sense::GreaterEq, 1});
  }
  for (const auto& w : verts) {
    if (w == v) continue;
    std::vector<Rational> row(e);
    for (std::size_t i = 0; i < e; ++i) row[i] = w[i] - v[i];
    cons.push_back({row, lp::Sense::GreaterEq, 1});
  }
  auto sol = lp::minimize(std::vector<Rational>(e, 1), cons);
  if (sol.status != lp::Status::Optimal) throw InternalError("vertex without separating positive form");
  LinearForm a(sol.x);
  Rational at_v = a(v);
  for (auto& x : a.coeffs) x /= at_v;
  res.witness = a;
  return res;
}

const std::vector<LinearForm>& facets(const FSubset& delta) { return delta.facets(); }

Rational delta_L(const LinearForm& l, const FSubset& delta) {
  if (delta.empty()) throw DomainError("delta_L of the empty F-subset");
  if (l.dim() != delta.dim()) throw InvalidInput("linear form dimension mismatch");
  Rational best = l(delta.vertices().front());
  for (const auto& v : delta.vertices()) best = std::min(best, l(v));
  return best;
}

Rational lambda_measure(const FSubset& inner, const FSubset& outer) {
  if (inner.empty()) throw DomainError("lambda measure needs a non-empty target polyhedron");
  if (outer.empty() || !outer.contains(inner))
    throw InvalidInput("lambda measure needs the target contained in the measured polyhedron");
  Rational total = 0;
  for (const auto& l : inner.facets()) total += 1 - delta_L(l, outer);
  return total;
}

bool contains(const FSubset& delta, const QPoint& v) { return delta.contains(v); }

}  // namespace charpoly
