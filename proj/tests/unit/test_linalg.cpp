#include <doctest.h>

#include <algorithm>
#include <random>

#include "ces/constructions.hpp"
#include "ces/linalg.hpp"
#include "oracles.hpp"

using namespace ces;

namespace {

const Field Q = Field::rational();

StateVector<Rational> vec(const Dims& d, std::vector<Rational> c) {
  return StateVector<Rational>(d, Q, std::move(c));
}

bool is_rref(const Subspace<Rational>& s) {
  const auto& piv = s.pivots();
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (i && piv[i] <= piv[i - 1]) return false;
    for (std::size_t j = 0; j < s.rows().size(); ++j) {
      const Rational& c = s.rows()[j][piv[i]];
      if (i == j ? c != 1 : c != 0) return false;
    }
    if (s.rows()[i].is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("span basics") {
  const Dims d({2, 2});
  auto v = vec(d, {1, 2, 0, Rational(1, 3)});
  const std::vector<StateVector<Rational>> pair{v, Rational(2) * v};
  CHECK(Subspace<Rational>::span(pair).dim() == 1);
  CHECK(Subspace<Rational>::span(d, Q, {}).dim() == 0);
  CHECK_THROWS_AS(Subspace<Rational>::span(std::span<const StateVector<Rational>>{}),
                  std::invalid_argument);

  const auto s = Subspace<Rational>::span(d, Q, entangled_generators(d));
  CHECK(s.dim() == 1);
  CHECK(s.contains(vec(d, {0, 1, -1, 0})));
}

TEST_CASE("mismatched dims or fields are rejected") {
  const Dims a({2, 2}), b({2, 3});
  const std::vector<StateVector<Rational>> mixed{StateVector<Rational>::unit(a, Q, 0),
                                                 StateVector<Rational>::unit(b, Q, 0)};
  CHECK_THROWS_AS(Subspace<Rational>::span(mixed), std::invalid_argument);
  const auto s = Subspace<Rational>::full(a, Q);
  CHECK_THROWS_AS(s.contains(StateVector<Rational>::unit(b, Q, 0)), std::invalid_argument);
  CHECK_THROWS_AS(sum(s, Subspace<Rational>::full(b, Q)), std::invalid_argument);
  CHECK_THROWS_AS(StateVector<Fp>(a, Field::fp(5), std::vector<Fp>(4, Fp(1, 7))),
                  std::invalid_argument);
  CHECK_THROWS_AS(StateVector<Rational>(a, Field::fp(5), std::vector<Rational>(4)),
                  std::invalid_argument);
}

TEST_CASE("membership") {
  for (const auto& local : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}}) {
    const Dims d(local);
    const auto perp = s_perp(d);
    const auto s = entangled_subspace(d);
    for (int n = 0; n <= d.N(); ++n) CHECK(perp.contains(u_vector(d, n)));
    CHECK(s.contains(StateVector<Rational>::zero(d, Q)));
    CHECK_FALSE(s.contains(StateVector<Rational>::unit(d, Q, 0)));
  }
}

TEST_CASE("orthocomplement") {
  const Dims d({3, 3});
  CHECK(Subspace<Rational>::full(d, Q).orthocomplement().dim() == 0);
  CHECK(Subspace<Rational>(d, Q).orthocomplement().dim() == 9);
  const auto s = entangled_subspace(d);
  const auto perp = s.orthocomplement();
  CHECK(perp.dim() == 5);
  CHECK(perp == s_perp(d));
  CHECK(perp.orthocomplement() == s);
  for (const auto& a : s.rows()) {
    for (const auto& b : perp.rows()) CHECK(inner(a, b) == 0);
  }
}

TEST_CASE("gaussian orthocomplement conjugates the first argument") {
  const Dims d({2, 2});
  const Field G = Field::gaussian();
  GaussianRational i{0, 1};
  std::vector<GaussianRational> c{1, i, 0, 0};
  const std::vector<StateVector<GaussianRational>> gens{StateVector<GaussianRational>(d, G, c)};
  const auto s = Subspace<GaussianRational>::span(gens);
  const auto perp = s.orthocomplement();
  CHECK(perp.dim() == 3);
  for (const auto& r : perp.rows()) CHECK(inner(s.rows()[0], r).is_zero());
  // x ⊥ (1, i) iff x_0 = i x_1
  CHECK(perp.contains(StateVector<GaussianRational>(d, G, {i, 1, 0, 0})));
  CHECK_FALSE(perp.contains(StateVector<GaussianRational>(d, G, {i, -1, 0, 0})));
  CHECK(perp.orthocomplement() == s);
}

TEST_CASE("lattice operations") {
  const Dims d({2, 3});
  const auto s = entangled_subspace(d);
  const auto perp = s_perp(d);
  CHECK(intersect(s, perp).dim() == 0);
  CHECK(sum(s, perp) == Subspace<Rational>::full(d, Q));
  CHECK(equal(s, s));
  for (int n = 0; n <= d.N(); ++n) CHECK(sum(s_level(d, n), t_level(d, n)) == h_level(d, n));

  const auto a = sum(s_level(d, 1), t_level(d, 2));
  const auto b = sum(h_level(d, 1), s_level(d, 2));
  const auto meet = intersect(a, b);
  CHECK(meet == s_level(d, 1));
  CHECK(sum(a, b).dim() == a.dim() + b.dim() - meet.dim());
}

TEST_CASE("echelon canonicity under permutation") {
  std::mt19937 rng(7);
  for (const auto& local : std::vector<std::vector<int>>{{2, 3}, {3, 3}, {2, 2, 2}}) {
    const Dims d(local);
    auto gens = entangled_generators(d);
    auto extra = sperp_generators(d);
    gens.insert(gens.end(), extra.begin(), extra.begin() + 2);
    gens.push_back(gens[0] + Rational(3) * gens[1]);
    const auto reference = Subspace<Rational>::span(d, Q, gens);
    CHECK(is_rref(reference));
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(gens.begin(), gens.end(), rng);
      CHECK(Subspace<Rational>::span(d, Q, gens) == reference);
    }
  }
}

TEST_CASE("rank-nullity over F_p on random instances") {
  std::mt19937 rng(11);
  const std::uint64_t p = 7;
  const Field F = Field::fp(p);
  for (int trial = 0; trial < 40; ++trial) {
    const Dims d({2, 3});
    std::uniform_int_distribution<int> count_dist(1, 9), coeff(0, 2);
    const int count = count_dist(rng);
    std::vector<StateVector<Fp>> vs;
    std::vector<std::vector<Fp>> transposed(6, std::vector<Fp>(static_cast<std::size_t>(count), Fp(0, p)));
    for (int c = 0; c < count; ++c) {
      std::vector<Fp> coeffs;
      for (int i = 0; i < 6; ++i) {
        // sparse-ish entries in {0, 1, 2} so dependencies actually occur
        coeffs.emplace_back(coeff(rng) == 0 ? 0 : coeff(rng), p);
        transposed[i][c] = coeffs.back();
      }
      vs.emplace_back(d, F, coeffs);
    }
    const int rank = Subspace<Fp>::span(d, F, vs).dim();
    const auto kernel = nullspace(row_reduce(transposed, static_cast<std::size_t>(count), F),
                                  static_cast<std::size_t>(count), F);
    CHECK(rank + static_cast<int>(kernel.size()) == count);
    for (const auto& c : kernel) {
      auto combo = StateVector<Fp>::zero(d, F);
      for (int j = 0; j < count; ++j) combo += c[j] * vs[j];
      CHECK(combo.is_zero());
    }
  }
}

TEST_CASE("reduce_mod_p") {
  const Dims d23({2, 3});
  CHECK(reduce_mod_p(d23, entangled_generators(d23), 5).dim() == 2);
  CHECK(reduce_mod_p(d23, {}, 5).dim() == 0);
  const Dims d33({3, 3});
  CHECK(reduce_mod_p(d33, sperp_generators(d33), 7).dim() == 5);
  const std::vector<StateVector<Rational>> frac{vec(d23, {Rational(1, 2), 0, 0, 0, 0, 0})};
  CHECK_THROWS_AS(reduce_mod_p(d23, frac, 5), std::invalid_argument);
}

TEST_CASE("integer generators span the same rational space") {
  const Dims d({2, 2, 2});
  const std::vector<StateVector<Rational>> gens{
      vec(d, {Rational(1, 2), Rational(1, 3), 0, 0, 0, 0, 0, 1}),
      vec(d, {0, Rational(2, 5), 4, 0, 0, 0, 0, 0})};
  const auto s = Subspace<Rational>::span(gens);
  const auto ints = integer_generators(s);
  for (const auto& g : ints) CHECK(is_integral(g));
  CHECK(Subspace<Rational>::span(ints) == s);
}

TEST_CASE("<u_n, z^lambda> = a_n lambda^n") {
  for (const auto& local : oracle::small_dims(4, 8, 64)) {
    const Dims d(local);
    const auto counts = level_counts(d);
    for (const Rational lambda : {Rational(0), Rational(1), Rational(-2), Rational(3, 7)}) {
      const auto z = z_vector(d, Point::finite(lambda)).expand();
      Rational power = 1;
      for (int n = 0; n <= d.N(); ++n) {
        CHECK(inner(u_vector(d, n), z) == counts[n] * power);
        power *= lambda;
      }
    }
  }
}
