#ifndef CHARPOLY_TESTS_CORPUS_HPP
#define CHARPOLY_TESTS_CORPUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "charpoly/poly.hpp"

namespace corpus {

struct System {
  std::string label;
  charpoly::FramePtr frame;
  std::vector<charpoly::Poly> gens;
  bool translated = false;  // built as a prepared-looking system pushed through y -> y + c u^a
};

/// Deterministic random (u)-standard bases: e, r <= 3, at most 4 generators,
/// total degree <= 8, fields Q, F2 and F3 in rotation. In_0 forms are
/// powers of distinct y-variables; some generators carry a mixed higher y-term.
std::vector<System> random_systems(int count, std::uint64_t seed = 20240611);

/// Random homogeneous forms in K[Y] over Q for the directrix/ridge comparison.
std::vector<std::vector<charpoly::Poly>> random_homogeneous(int count, std::uint64_t seed = 7);

}  // namespace corpus

#endif
