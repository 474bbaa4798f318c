#include "corpus.hpp"

#include <algorithm>
#include <random>

namespace corpus {

using namespace charpoly;

namespace {

struct Gen {
  std::mt19937_64 rng;
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Scalar coeff(const Field& k) {
    if (k.is_rational()) {
      int c = 0;
      while (c == 0) c = uniform(-3, 3);
      return Scalar(k, static_cast<long>(c));
    }
    return Scalar(k, static_cast<long>(uniform(1, static_cast<int>(k.characteristic()) - 1)));
  }

  // Random exponent vector of length n summing to total.
  std::vector<int> split(int n, int total) {
    std::vector<int> v(n, 0);
    for (int i = 0; i < total; ++i) ++v[uniform(0, n - 1)];
    return v;
  }
};

}  // namespace

std::vector<System> random_systems(int count, std::uint64_t seed) {
  Gen g{std::mt19937_64(seed)};
  const Field fields[] = {Field::rationals(), Field::prime(2), Field::prime(3)};
  std::vector<System> out;
  int attempt = 0;
  while (static_cast<int>(out.size()) < count) {
    ++attempt;
    const Field& k = fields[out.size() % 3];
    int e = g.uniform(1, 3), r = g.uniform(1, 3);
    std::vector<std::string> un, yn;
    for (int i = 0; i < e; ++i) un.push_back("u" + std::to_string(i + 1));
    for (int j = 0; j < r; ++j) yn.push_back("y" + std::to_string(j + 1));
    auto frame = Frame::make(un, yn, k);
    int m = g.uniform(1, r);
    bool translate = g.uniform(0, 1) == 1;
    int max_d = translate ? 3 : 4;

    std::vector<Poly> gens;
    for (int i = 0; i < m; ++i) {
      int d = g.uniform(1, max_d);
      Poly f = Poly::y(frame, i, d);
      if (i + 1 < r && g.uniform(0, 3) == 0) f += Poly::y(frame, i, d) * Poly::y(frame, i + 1);
      int extra = g.uniform(1, 4);
      for (int t = 0; t < extra; ++t) {
        int bdeg = g.uniform(0, d - 1);
        int adeg = g.uniform(1, std::max(1, 8 - bdeg - (translate ? 4 : 0)));
        Monomial mono{g.split(e, adeg), g.split(r, bdeg)};
        f.add_term(mono, g.coeff(k));
      }
      gens.push_back(f);
    }
    if (translate) {
      int j = g.uniform(0, m - 1);
      Poly shift = Poly::monomial(frame, Monomial{g.split(e, g.uniform(1, 2)), std::vector<int>(r, 0)}, g.coeff(k));
      for (auto& f : gens) f = substitute_y(f, j, shift);
    }
    bool ok = true;
    for (const auto& f : gens)
      if (f.is_zero() || f.total_degree() > 8 || order_mod_u(f) == kInfiniteOrder) ok = false;
    if (!ok) continue;
    std::sort(gens.begin(), gens.end(), [](const Poly& a, const Poly& b) {
      return grlex_compare(exponent_of(a), exponent_of(b)) < 0;
    });
    out.push_back({"sys" + std::to_string(out.size()) + "/" + k.to_string(), frame, gens, translate});
  }
  return out;
}

std::vector<std::vector<Poly>> random_homogeneous(int count, std::uint64_t seed) {
  Gen g{std::mt19937_64(seed)};
  std::vector<std::vector<Poly>> out;
  while (static_cast<int>(out.size()) < count) {
    int r = g.uniform(1, 3);
    std::vector<std::string> yn;
    for (int j = 0; j < r; ++j) yn.push_back("y" + std::to_string(j + 1));
    auto frame = Frame::make({"u"}, yn, Field::rationals());
    int nforms = g.uniform(1, 2);
    std::vector<Poly> forms;
    for (int i = 0; i < nforms; ++i) {
      int d = g.uniform(1, 3);
      Poly f(frame);
      int terms = g.uniform(1, 4);
      for (int t = 0; t < terms; ++t) f.add_term(Monomial{{0}, g.split(r, d)}, g.coeff(frame->field));
      if (!f.is_zero()) forms.push_back(f);
    }
    if (!forms.empty()) out.push_back(forms);
  }
  return out;
}

}  // namespace corpus
