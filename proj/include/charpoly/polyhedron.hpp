#ifndef CHARPOLY_POLYHEDRON_HPP
#define CHARPOLY_POLYHEDRON_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "charpoly/scalar.hpp"

namespace charpoly {

/// Point of Q^e_{>=0}.
using QPoint = std::vector<Rational>;

/// Total order used to pick "the minimal vertex": (sum of coordinates, v_1, ..., v_e)
/// lexicographically.
bool point_less(const QPoint& p, const QPoint& q);
std::string point_to_string(const QPoint& p);

/// L(v) = sum a_i v_i with a_i >= 0, not all zero.
struct LinearForm {
  std::vector<Rational> coeffs;

  LinearForm() = default;
  explicit LinearForm(std::vector<Rational> a);

  int dim() const { return static_cast<int>(coeffs.size()); }
  bool positive() const;
  Rational operator()(const QPoint& v) const;
  /// Greatest denominator among the coefficients.
  std::uint64_t max_denominator() const;
  std::string to_string() const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// conv(vertices) + R^e_{>=0}, possibly empty.
///
/// The vertex list is kept minimal (every entry extremal) and sorted by
/// point_less. The facet list is derived on first use and shared between
/// copies.
class FSubset {
 public:
  /// Empty F-subset of Q^e.
  explicit FSubset(int e = 1);

  /// Smallest F-subset containing the points. Throws InvalidInput on a
  /// negative coordinate or a dimension mismatch.
  static FSubset from_points(int e, std::vector<QPoint> points);

  int dim() const { return e_; }
  bool empty() const { return vertices_.empty(); }
  const std::vector<QPoint>& vertices() const { return vertices_; }

  /// Semi-positive forms L_j with min over vertices equal to 1 and
  /// Delta = intersection of {L_j >= 1} with the orthant. Coordinate facets are
  /// implicit. Throws DomainError when empty.
  const std::vector<LinearForm>& facets() const;

  bool contains(const QPoint& v) const;
  bool contains(const FSubset& other) const;

  friend bool operator==(const FSubset& a, const FSubset& b) {
    return a.e_ == b.e_ && a.vertices_ == b.vertices_;
  }

  /// Greatest denominator among vertex coordinates (1 when empty).
  std::uint64_t max_denominator() const;
  std::string to_string() const;

 private:
  struct FacetCache {
    std::once_flag once;
    std::vector<LinearForm> forms;
  };

  int e_;
  std::vector<QPoint> vertices_;
  std::shared_ptr<FacetCache> facets_;
};

FSubset fsubset_from_points(int e, std::vector<QPoint> points);

struct VertexTest {
  bool is_vertex = false;
  /// Positive form with L(v) = 1 and L(w) > 1 for every other vertex w.
  /// Absent when v is the origin (Delta is the whole orthant).
  std::optional<LinearForm> witness;
};

VertexTest is_vertex(const FSubset& delta, const QPoint& v);

const std::vector<LinearForm>& facets(const FSubset& delta);

/// min{L(v) : v in Delta}. Throws DomainError when empty.
Rational delta_L(const LinearForm& l, const FSubset& delta);

/// Sum over the facet forms L_j of `inner` of (1 - delta_{L_j}(outer)).
/// Throws DomainError for empty `inner`, InvalidInput unless inner is contained in outer.
Rational lambda_measure(const FSubset& inner, const FSubset& outer);

bool contains(const FSubset& delta, const QPoint& v);

}  // namespace charpoly

#endif
