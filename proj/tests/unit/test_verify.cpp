#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "ces/verify.hpp"
#include "oracles.hpp"

using namespace ces;

namespace {

const Field Q = Field::rational();

std::vector<std::vector<int>> family() { return {{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}}; }

AlsOptions quick_als(int restarts = 16, std::uint64_t seed = 1) {
  AlsOptions o;
  o.restarts = restarts;
  o.seed = seed;
  o.tol = 1e-14;
  o.max_sweeps = 2000;
  return o;
}

std::vector<StateVector<Rational>> expand_all(std::span<const ProductVector<Rational>> vs) {
  std::vector<StateVector<Rational>> out;
  for (const auto& v : vs) out.push_back(v.expand());
  return out;
}

/// λ with factors ∝ (1, λ, λ², ...), or nullopt if the factors are not of that shape.
std::optional<Complex> vandermonde_parameter(const std::vector<std::vector<Complex>>& factors,
                                             double tol) {
  std::optional<Complex> lambda;
  for (const auto& f : factors) {
    if (std::abs(f[0]) < tol) return std::nullopt;
    const Complex l = f[1] / f[0];
    if (!lambda) lambda = l;
    if (std::abs(l - *lambda) > tol) return std::nullopt;
    Complex power = 1.0;
    for (const auto& c : f) {
      if (std::abs(c / f[0] - power) > tol * std::max(1.0, std::abs(power))) return std::nullopt;
      power *= *lambda;
    }
  }
  return lambda;
}

}  // namespace

TEST_CASE("projective product counts") {
  CHECK(projective_product_count(Dims({2, 3}), 5) == 186);
  CHECK(projective_product_count(Dims({2, 2, 2}), 5) == 216);
  CHECK(projective_product_count(Dims({64, 64}), 1000003) == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("finite-field search: examples") {
  const Dims d23({2, 3});
  const auto s = ff_product_vectors(d23, entangled_generators(d23), 5);
  CHECK(s.witnesses.empty());
  CHECK(s.enumerated == 186);
  CHECK(s.dim_fp == 2);

  const auto perp = ff_product_vectors(d23, sperp_generators(d23), 5);
  CHECK(perp.witnesses.size() == 6);

  const Dims d22({2, 2});
  std::vector<StateVector<Rational>> units;
  for (int i = 0; i < 4; ++i) units.push_back(StateVector<Rational>::unit(d22, Q, i));
  const auto full = ff_product_vectors(d22, units, 5);
  CHECK(full.witnesses.size() == 36);
  const ProductVector<Fp> e00(d22, Field::fp(5), {{Fp(1, 5), Fp(0, 5)}, {Fp(1, 5), Fp(0, 5)}});
  CHECK(std::find(full.witnesses.begin(), full.witnesses.end(), e00) != full.witnesses.end());
}

TEST_CASE("finite-field search: preconditions") {
  const Dims d33({3, 3});
  CHECK_THROWS_AS(ff_product_vectors(d33, entangled_generators(d33), 3), std::invalid_argument);
  CHECK_THROWS_AS(ff_product_vectors(d33, entangled_generators(d33), 4), std::invalid_argument);
  CHECK_THROWS_AS(ff_product_vectors(d33, entangled_generators(d33), 5, 100), BudgetExceeded);
  try {
    ff_product_vectors(d33, entangled_generators(d33), 5, 100);
  } catch (const BudgetExceeded& e) {
    CHECK(e.required() == 31 * 31);
  }
}

TEST_CASE("finite-field search agrees with brute-force membership") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coeff(-2, 2), count(0, 5);
  for (const auto& local : std::vector<std::vector<int>>{{2, 2}, {2, 3}}) {
    const Dims d(local);
    for (std::uint64_t p : {5u, 7u}) {
      std::vector<std::vector<StateVector<Rational>>> cases{entangled_generators(d),
                                                            sperp_generators(d)};
      for (int t = 0; t < 6; ++t) {
        std::vector<StateVector<Rational>> gens;
        const int c = count(rng);
        for (int j = 0; j < c; ++j) {
          auto v = StateVector<Rational>::zero(d, Q);
          for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(rng);
          gens.push_back(v);
        }
        cases.push_back(gens);
      }
      for (const auto& gens : cases) {
        const auto fast = ff_product_vectors(d, gens, p);
        const auto slow = oracle::brute_projective_members(reduce_mod_p(d, gens, p));
        CHECK(fast.witnesses.size() == slow);
        for (const auto& w : fast.witnesses) {
          CHECK(reduce_mod_p(d, gens, p).contains(w.expand()));
          CHECK(projective_normal_form(w) == w);
        }
      }
    }
  }
}

TEST_CASE("S-perp classification") {
  const auto a = classify_sperp(Dims({2, 3}), 5);
  CHECK(a.pass);
  CHECK(a.found.size() == 6);
  CHECK(classify_sperp(Dims({2, 2, 2}), 5).found.size() == 6);
  CHECK(classify_sperp(Dims({2, 2, 2}), 5).enumerated == 216);
  const auto c = classify_sperp(Dims({2, 2}), 3);
  CHECK(c.pass);
  CHECK(c.found.size() == 4);
}

TEST_CASE("oracle finds no product vector in S and only Vandermonde points in S-perp") {
  for (const auto& local : family()) {
    const Dims d(local);
    for (std::uint64_t p : {5u, 7u, 11u}) {
      if (p <= static_cast<std::uint64_t>(d.N())) continue;
      CHECK(ff_product_vectors(d, entangled_generators(d), p).witnesses.empty());
      const auto cls = classify_sperp(d, p);
      CHECK(cls.pass);
      CHECK(cls.found.size() == p + 1);
    }
  }
}

TEST_CASE("ALS: basic overlaps") {
  const Dims d22({2, 2});
  const std::vector<StateVector<Complex>> e00{to_complex(StateVector<Rational>::unit(d22, Q, 0))};
  const auto r = max_product_overlap(e00, d22, quick_als(4));
  CHECK(r.best_overlap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(std::abs(r.witness[0][0]) - 1.0) < 1e-9);
  CHECK(std::abs(std::abs(r.witness[1][0]) - 1.0) < 1e-9);

  const auto singlet = orthonormal_basis(entangled_subspace(d22));
  const auto rs = max_product_overlap(singlet, d22, quick_als(8));
  CHECK(std::abs(rs.best_overlap - 0.5) < 1e-9);

  const Dims d23({2, 3});
  const auto perp = orthonormal_basis(s_perp(d23));
  const auto rp = max_product_overlap(perp, d23, quick_als(16));
  CHECK(rp.best_overlap >= 1.0 - 1e-8);
  CHECK(vandermonde_parameter(rp.witness, 1e-6).has_value());
}

TEST_CASE("ALS: input validation") {
  const Dims d({2, 2});
  const std::vector<StateVector<Complex>> bad{
      to_complex(StateVector<Rational>::unit(d, Q, 0) + StateVector<Rational>::unit(d, Q, 1))};
  CHECK_THROWS_AS(max_product_overlap(bad, d, quick_als()), std::invalid_argument);
  const auto good = orthonormal_basis(entangled_subspace(d));
  CHECK_THROWS_AS(max_product_overlap(good, d, quick_als(0)), std::invalid_argument);
}

TEST_CASE("ALS: monotone sweeps and schedule-independent results") {
  for (const auto& local : family()) {
    const Dims d(local);
    const auto basis = orthonormal_basis(entangled_subspace(d));
    AlsOptions serial = quick_als(12, 99);
    serial.threads = 1;
    AlsOptions parallel = serial;
    parallel.threads = 4;
    const auto a = max_product_overlap(basis, d, serial);
    const auto b = max_product_overlap(basis, d, parallel);
    CHECK(a.best_overlap == b.best_overlap);
    CHECK(a.best_restart == b.best_restart);
    CHECK(a.witness == b.witness);
    for (const auto& r : a.restarts) {
      for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] >= r.history[i - 1] - 1e-12);
    }
  }
}

TEST_CASE("ALS: single vector in two factors matches the Schmidt oracle") {
  std::mt19937 rng(23);
  std::normal_distribution<double> normal;
  for (const auto& local : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {3, 4}, {4, 4}}) {
    const Dims d(local);
    for (int trial = 0; trial < 3; ++trial) {
      auto v = StateVector<Complex>::zero(d, Field::complex_approx());
      Eigen::MatrixXcd m(d[0], d[1]);
      double norm2 = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = {normal(rng), normal(rng)};
        norm2 += std::norm(v[i]);
      }
      v *= Complex(1.0 / std::sqrt(norm2));
      for (int i = 0; i < d[0]; ++i) {
        for (int j = 0; j < d[1]; ++j) m(i, j) = v[static_cast<std::size_t>(i * d[1] + j)];
      }
      const double sigma = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
      const std::vector<StateVector<Complex>> basis{v};
      const auto r = max_product_overlap(basis, d, quick_als(8, static_cast<std::uint64_t>(trial)));
      CHECK(std::abs(r.best_overlap - sigma * sigma) < 1e-9);
    }
  }
}

TEST_CASE("finite-field and ALS verdicts agree") {
  CheckOptions both;
  both.use_ff = true;
  both.use_als = true;
  both.primes = {5, 7};
  both.als = quick_als(64, 42);
  for (const auto& local : family()) {
    const Dims d(local);
    std::vector<Subspace<Rational>> spaces{entangled_subspace(d), s_perp(d)};
    for (int n = 1; n < d.N(); ++n) spaces.push_back(s_level(d, n));
    const auto upb = minimal_upb(d);
    for (std::size_t drop = 0; drop < upb.size(); ++drop) {
      std::vector<ProductVector<Rational>> subset;
      for (std::size_t j = 0; j < upb.size(); ++j) {
        if (j != drop) subset.push_back(upb[j]);
      }
      spaces.push_back(Subspace<Rational>::span(d, Q, expand_all(subset)).orthocomplement());
    }
    for (const auto& s : spaces) {
      if (s.dim() == 0) continue;
      const auto reports = check_completely_entangled(s, both);
      bool ff_witness = false, als_witness = false;
      for (const auto& r : reports) {
        REQUIRE_FALSE(r.skipped.has_value());
        if (r.method == Method::finite_field) ff_witness |= r.verdict == Verdict::witness_found;
        if (r.method == Method::als) als_witness |= r.verdict == Verdict::witness_found;
      }
      CHECK(ff_witness == als_witness);
    }
  }
}

TEST_CASE("verify_upb") {
  CheckOptions ff;
  ff.primes = {5};

  const Dims q({2, 2, 2});
  const auto minimal = minimal_upb(q);
  const auto ok = verify_upb(q, minimal, ff);
  CHECK(ok.status == UpbStatus::confirmed);
  CHECK(ok.independent);
  CHECK(ok.complement_within_s);
  CHECK(ok.complement_dim == 4);
  REQUIRE(ok.complement_checks.size() == 1);
  CHECK(ok.complement_checks[0].verdict == Verdict::no_product_vector_found);

  const Dims d23({2, 3});
  const auto upb23 = minimal_upb(d23);
  for (std::size_t drop = 0; drop < upb23.size(); ++drop) {
    std::vector<ProductVector<Rational>> subset;
    for (std::size_t j = 0; j < upb23.size(); ++j) {
      if (j != drop) subset.push_back(upb23[j]);
    }
    const auto r = verify_upb(d23, subset, ff);
    CHECK(r.status == UpbStatus::rejected);
    CHECK(r.rank == 3);
    CHECK_FALSE(r.meets_minimum);
    REQUIRE(r.complement_checks.size() == 1);
    CHECK(r.complement_checks[0].verdict == Verdict::witness_found);
    CHECK_FALSE(r.complement_checks[0].ff_witnesses.empty());
  }

  std::vector<ProductVector<Rational>> standard;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::vector<Rational> a(2, Rational(0)), b(3, Rational(0));
      a[static_cast<std::size_t>(i)] = 1;
      b[static_cast<std::size_t>(j)] = 1;
      standard.emplace_back(d23, Q, std::vector<std::vector<Rational>>{a, b});
    }
  }
  const auto full = verify_upb(d23, standard, ff);
  CHECK(full.status == UpbStatus::confirmed);
  CHECK(full.complement_dim == 0);

  const std::vector<ProductVector<Rational>> dependent{upb23[0], upb23[0], upb23[1], upb23[2], upb23[3]};
  CHECK(verify_upb(d23, dependent, ff).status == UpbStatus::rejected);
  CHECK_THROWS_AS(verify_upb(d23, std::vector<ProductVector<Rational>>{}, ff), std::invalid_argument);
}

TEST_CASE("verify_upb: minimal size is sharp on (2,2,2)") {
  CheckOptions ff;
  ff.primes = {5, 7};
  const Dims q({2, 2, 2});
  const auto upb = minimal_upb(q);
  CHECK(verify_upb(q, upb, ff).status == UpbStatus::confirmed);
  for (std::size_t drop = 0; drop < upb.size(); ++drop) {
    std::vector<ProductVector<Rational>> subset;
    for (std::size_t j = 0; j < upb.size(); ++j) {
      if (j != drop) subset.push_back(upb[j]);
    }
    const auto r = verify_upb(q, subset, ff);
    CHECK(r.status == UpbStatus::rejected);
    CHECK(any_witness(r.complement_checks));
  }
}

TEST_CASE("checks report skipped work") {
  CheckOptions opts;
  opts.primes = {5};
  const Dims d({4, 4});
  const auto reports = check_completely_entangled(entangled_subspace(d), opts);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].skipped.has_value());

  opts.primes = {7};
  opts.budget = 10;
  const auto over = check_completely_entangled(entangled_subspace(d), opts);
  REQUIRE(over.size() == 1);
  CHECK(over[0].skipped.has_value());
}
