#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ces/graded_index.hpp"
#include "ces/linalg.hpp"
#include "ces/scalar.hpp"

namespace ces {

/// y_1 ⊗ ... ⊗ y_k with one coefficient vector per tensor slot.
template <class T>
class ProductVector {
 public:
  /// Throws std::invalid_argument if a factor has the wrong length or is zero.
  ProductVector(Dims dims, Field field, std::vector<std::vector<T>> factors)
      : dims_(std::move(dims)), field_(field), factors_(std::move(factors)) {
    if (static_cast<int>(factors_.size()) != dims_.k()) {
      throw std::invalid_argument("product vector: expected " + std::to_string(dims_.k()) +
                                  " factors");
    }
    for (int r = 0; r < dims_.k(); ++r) {
      const auto& f = factors_[static_cast<std::size_t>(r)];
      if (static_cast<int>(f.size()) != dims_[r]) {
        throw std::invalid_argument("product vector: factor " + std::to_string(r) +
                                    " has wrong length");
      }
      if (std::all_of(f.begin(), f.end(), [](const T& c) { return ScalarTraits<T>::is_zero(c); })) {
        throw std::invalid_argument("product vector: factor " + std::to_string(r) + " is zero");
      }
    }
  }

  const Dims& dims() const { return dims_; }
  const Field& field() const { return field_; }
  const std::vector<std::vector<T>>& factors() const { return factors_; }

  /// Coefficient Π_r a^r_{i_r} at multi-index (i_1, ..., i_k).
  StateVector<T> expand() const {
    std::vector<T> coeffs{ScalarTraits<T>::from_integer(1, field_)};
    for (const auto& f : factors_) {
      std::vector<T> next;
      next.reserve(coeffs.size() * f.size());
      for (const auto& c : coeffs) {
        for (const auto& a : f) next.push_back(c * a);
      }
      coeffs = std::move(next);
    }
    return StateVector<T>(dims_, field_, std::move(coeffs));
  }

  friend bool operator==(const ProductVector& a, const ProductVector& b) {
    return a.dims_ == b.dims_ && a.field_ == b.field_ && a.factors_ == b.factors_;
  }

 private:
  Dims dims_;
  Field field_;
  std::vector<std::vector<T>> factors_;
};

/// A finite λ or the point ∞.
template <class T>
struct VandermondePoint {
  std::optional<T> value;

  static VandermondePoint infinity() { return {}; }
  static VandermondePoint finite(T v) { return {std::move(v)}; }
  bool is_infinite() const { return !value.has_value(); }

  friend bool operator==(const VandermondePoint& a, const VandermondePoint& b) {
    return a.value == b.value;
  }
};

using Point = VandermondePoint<Rational>;

/// "inf" / "∞" or a rational literal.
Point parse_point(std::string_view text);
std::string to_string(const Point& p);

/// u_n: the sum of all level-n basis vectors.
StateVector<Rational> u_vector(const Dims& dims, int n);

/// z^λ = ⊗_r (1, λ, ..., λ^{d_r - 1}); z^∞ = ⊗_r e_{d_r - 1}.
template <class T>
ProductVector<T> z_vector(const Dims& dims, const VandermondePoint<T>& point, const Field& field) {
  const T zero = ScalarTraits<T>::from_integer(0, field);
  const T one = ScalarTraits<T>::from_integer(1, field);
  std::vector<std::vector<T>> factors;
  for (int r = 0; r < dims.k(); ++r) {
    std::vector<T> f(static_cast<std::size_t>(dims[r]), zero);
    if (point.is_infinite()) {
      f.back() = one;
    } else {
      T power = one;
      for (auto& c : f) {
        c = power;
        power = power * *point.value;
      }
    }
    factors.push_back(std::move(f));
  }
  return ProductVector<T>(dims, field, std::move(factors));
}

inline ProductVector<Rational> z_vector(const Dims& dims, const Point& point) {
  return z_vector<Rational>(dims, point, Field::rational());
}

/// Generators v_0 - v_j (j >= 1) of every level, v_0 the first index of the
/// level in lexicographic order. Integer coefficients.
std::vector<StateVector<Rational>> entangled_generators(const Dims& dims);
/// u_0, ..., u_N.
std::vector<StateVector<Rational>> sperp_generators(const Dims& dims);

/// S: the span of all differences of basis vectors of equal level.
Subspace<Rational> entangled_subspace(const Dims& dims);
/// S⊥ = span{u_0, ..., u_N}.
Subspace<Rational> s_perp(const Dims& dims);
/// H^(n).
Subspace<Rational> h_level(const Dims& dims, int n);
/// S^(n): the complement of u_n inside H^(n).
Subspace<Rational> s_level(const Dims& dims, int n);
/// T^(n) = span{u_n}.
Subspace<Rational> t_level(const Dims& dims, int n);

/// Character basis of H^(n): v_j = a^{-1/2} Σ_t ω^{jt} b_t with ω = e^{2πi/a},
/// b_t the level-n basis vectors. v_0 is u_n normalized; the rest span S^(n).
std::vector<StateVector<Complex>> onb_level(const Dims& dims, int n);

/// The integers 0, ..., N.
std::vector<Point> default_points(const Dims& dims);

/// z^λ for each point; N+1 pairwise distinct points span S⊥.
/// Throws std::invalid_argument on duplicates or on a count other than N+1.
std::vector<ProductVector<Rational>> minimal_upb(const Dims& dims, std::span<const Point> points);
std::vector<ProductVector<Rational>> minimal_upb(const Dims& dims);

/// Levels picked by subset sum over weights w_n = a_n - 1, and the basis
/// vector dropped from each picked level.
struct UpbSpec {
  Dims dims;
  int size = 0;
  std::vector<int> levels;
  std::vector<Point> points;
  std::vector<MultiIndex> dropped;
};

struct AnyDimUpb {
  UpbSpec spec;
  std::vector<ProductVector<Rational>> vectors;
  /// ⊕_{n not in M} S^(n), the orthocomplement of the span.
  Subspace<Rational> complement;
};

/// Subset of level indices whose weights sum to target. Levels of weight 0
/// are never picked; among feasible choices smaller levels are preferred.
/// Returns std::nullopt when no subset reaches target.
std::optional<std::vector<int>> choose_levels(std::span<const std::int64_t> weights,
                                              std::int64_t target);

/// Unextendible product basis of size m for k = 2, d1 + d2 - 1 <= m <= d1 d2.
/// Throws std::out_of_range for m outside that range and std::invalid_argument
/// for k != 2. The result is rank-checked; a failed check throws
/// std::logic_error.
AnyDimUpb any_dim_upb(const Dims& dims, int m, std::span<const Point> points);
AnyDimUpb any_dim_upb(const Dims& dims, int m);

/// {[a_ij] : Σ_{i+j=n} a_ij = 0 for all n} in the d1 × d2 matrix space, with
/// E_ij identified with e_i ⊗ e_j.
Subspace<Rational> example1_space(int d1, int d2);

struct Example2 {
  Subspace<Rational> m;
  Subspace<Rational> m_perp;
  std::vector<ProductVector<Rational>> r;
};

/// The 4 × 4 matrix space M cut out by eight anti-diagonal constraints (level 3
/// split in two), its complement, and R = {z^λ} ∪ {E_33}.
Example2 example2_spaces(std::span<const Rational> lambdas);
Example2 example2_spaces();

/// G_ij = ⟨x_i, x_j⟩ of the expansions.
template <class T>
std::vector<std::vector<T>> gram(std::span<const ProductVector<T>> vectors) {
  std::vector<StateVector<T>> expanded;
  expanded.reserve(vectors.size());
  for (const auto& v : vectors) expanded.push_back(v.expand());
  std::vector<std::vector<T>> g(expanded.size());
  for (std::size_t i = 0; i < expanded.size(); ++i) {
    for (std::size_t j = 0; j < expanded.size(); ++j) g[i].push_back(inner(expanded[i], expanded[j]));
  }
  return g;
}

}  // namespace ces
