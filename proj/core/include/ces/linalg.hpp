#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ces/graded_index.hpp"
#include "ces/scalar.hpp"

namespace ces {

/// Dense coefficient vector over the lexicographically ordered product basis.
template <class T>
class StateVector {
 public:
  StateVector(Dims dims, Field field, std::vector<T> coeffs)
      : dims_(std::move(dims)), field_(field), coeffs_(std::move(coeffs)) {
    if (!ScalarTraits<T>::accepts(field_)) {
      throw std::invalid_argument("state vector: scalar type does not match field " + field_.name());
    }
    if (static_cast<std::int64_t>(coeffs_.size()) != dims_.total()) {
      throw std::invalid_argument("state vector: expected " + std::to_string(dims_.total()) +
                                  " coefficients, got " + std::to_string(coeffs_.size()));
    }
    if constexpr (std::is_same_v<T, Fp>) {
      for (const Fp& c : coeffs_) {
        if (c.modulus() != field_.prime) throw std::invalid_argument("state vector: mixed moduli");
      }
    }
  }

  static StateVector zero(const Dims& dims, const Field& field) {
    const T z = ScalarTraits<T>::from_integer(0, field);
    return StateVector(dims, field, std::vector<T>(static_cast<std::size_t>(dims.total()), z));
  }

  static StateVector unit(const Dims& dims, const Field& field, std::int64_t flat) {
    StateVector v = zero(dims, field);
    v.coeffs_.at(static_cast<std::size_t>(flat)) = ScalarTraits<T>::from_integer(1, field);
    return v;
  }

  const Dims& dims() const { return dims_; }
  const Field& field() const { return field_; }
  std::span<const T> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  const T& operator[](std::size_t i) const { return coeffs_[i]; }
  T& operator[](std::size_t i) { return coeffs_[i]; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const T& c) { return ScalarTraits<T>::is_zero(c); });
  }

  StateVector& operator+=(const StateVector& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  StateVector& operator-=(const StateVector& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  StateVector& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(const T& s, StateVector a) { return a *= s; }

  friend bool operator==(const StateVector& a, const StateVector& b) {
    return a.dims_ == b.dims_ && a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

  void check_compatible(const StateVector& o) const {
    if (!(dims_ == o.dims_) || !(field_ == o.field_)) {
      throw std::invalid_argument("state vector: mismatched dims or field (" + dims_.to_string() +
                                  " " + field_.name() + " vs " + o.dims_.to_string() + " " +
                                  o.field_.name() + ")");
    }
  }

 private:
  Dims dims_;
  Field field_;
  std::vector<T> coeffs_;
};

/// ⟨a, b⟩ = Σ conj(a_i) b_i, conjugate-linear in the first argument.
template <class T>
T inner(const StateVector<T>& a, const StateVector<T>& b) {
  a.check_compatible(b);
  T acc = ScalarTraits<T>::from_integer(0, a.field());
  for (std::size_t i = 0; i < a.size(); ++i) acc += ScalarTraits<T>::conj(a[i]) * b[i];
  return acc;
}

/// Reduced row-echelon form of a dense matrix.
template <ExactScalar T>
struct Echelon {
  std::vector<std::vector<T>> rows;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination. Rows are reduced so that each pivot is 1 and is
/// the only nonzero entry of its column; zero rows are dropped.
template <ExactScalar T>
Echelon<T> row_reduce(std::vector<std::vector<T>> rows, std::size_t cols, const Field& field) {
  const T one = ScalarTraits<T>::from_integer(1, field);
  Echelon<T> out;
  std::vector<std::size_t> support;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pick = rank;
    while (pick < rows.size() && ScalarTraits<T>::is_zero(rows[pick][c])) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[rank], rows[pick]);
    auto& pivot_row = rows[rank];
    if (!(pivot_row[c] == one)) {
      const T scale = one / pivot_row[c];
      for (std::size_t j = c; j < cols; ++j) pivot_row[j] *= scale;
    }
    // Generators are typically sparse; only touch the pivot row's support.
    support.clear();
    for (std::size_t j = c; j < cols; ++j) {
      if (!ScalarTraits<T>::is_zero(pivot_row[j])) support.push_back(j);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || ScalarTraits<T>::is_zero(rows[i][c])) continue;
      const T factor = rows[i][c];
      for (std::size_t j : support) rows[i][j] -= factor * pivot_row[j];
    }
    out.pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  out.rows = std::move(rows);
  return out;
}

/// Basis of {x : A x = 0} for A already in reduced row-echelon form.
template <ExactScalar T>
std::vector<std::vector<T>> nullspace(const Echelon<T>& a, std::size_t cols, const Field& field) {
  const T zero = ScalarTraits<T>::from_integer(0, field);
  const T one = ScalarTraits<T>::from_integer(1, field);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : a.pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> x(cols, zero);
    x[f] = one;
    for (std::size_t i = 0; i < a.rows.size(); ++i) x[a.pivots[i]] = -a.rows[i][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// A linear subspace of H stored as its unique reduced row-echelon basis.
template <ExactScalar T>
class Subspace {
 public:
  /// The zero subspace.
  Subspace(Dims dims, Field field) : dims_(std::move(dims)), field_(field) {
    if (!ScalarTraits<T>::accepts(field_)) {
      throw std::invalid_argument("subspace: scalar type does not match field " + field_.name());
    }
  }

  static Subspace span(const Dims& dims, const Field& field,
                       std::span<const StateVector<T>> vectors) {
    Subspace out(dims, field);
    std::vector<std::vector<T>> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
      if (!(v.dims() == dims) || !(v.field() == field)) {
        throw std::invalid_argument("span: vector over " + v.dims().to_string() + " " +
                                    v.field().name() + " does not match " + dims.to_string() +
                                    " " + field.name());
      }
      rows.emplace_back(v.coeffs().begin(), v.coeffs().end());
    }
    out.assign(row_reduce(std::move(rows), static_cast<std::size_t>(dims.total()), field));
    return out;
  }

  /// Span of a nonempty list; dims and field are taken from the first vector.
  static Subspace span(std::span<const StateVector<T>> vectors) {
    if (vectors.empty()) throw std::invalid_argument("span: empty list needs explicit dims");
    return span(vectors.front().dims(), vectors.front().field(), vectors);
  }

  static Subspace full(const Dims& dims, const Field& field) {
    std::vector<StateVector<T>> units;
    for (std::int64_t i = 0; i < dims.total(); ++i) {
      units.push_back(StateVector<T>::unit(dims, field, i));
    }
    return span(dims, field, units);
  }

  const Dims& dims() const { return dims_; }
  const Field& field() const { return field_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<StateVector<T>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Membership by elimination against the echelon rows.
  bool contains(const StateVector<T>& v) const {
    check_vector(v);
    StateVector<T> rest = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const T coeff = rest[pivots_[i]];
      if (ScalarTraits<T>::is_zero(coeff)) continue;
      StateVector<T> scaled = rows_[i];
      scaled *= coeff;
      rest -= scaled;
    }
    return rest.is_zero();
  }

  bool contains(const Subspace& other) const {
    check_subspace(other);
    return std::all_of(other.rows_.begin(), other.rows_.end(),
                       [&](const StateVector<T>& r) { return contains(r); });
  }

  /// {x : ⟨r, x⟩ = 0 for every r in this subspace}.
  Subspace orthocomplement() const {
    const auto cols = static_cast<std::size_t>(dims_.total());
    Echelon<T> conj_rows;
    conj_rows.pivots = pivots_;
    for (const auto& r : rows_) {
      std::vector<T> row;
      row.reserve(cols);
      for (const auto& c : r.coeffs()) row.push_back(ScalarTraits<T>::conj(c));
      conj_rows.rows.push_back(std::move(row));
    }
    Subspace out(dims_, field_);
    out.assign(row_reduce(nullspace(conj_rows, cols, field_), cols, field_));
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.dims_ == b.dims_ && a.field_ == b.field_ && a.pivots_ == b.pivots_ &&
           a.rows_ == b.rows_;
  }

  void check_subspace(const Subspace& o) const {
    if (!(dims_ == o.dims_) || !(field_ == o.field_)) {
      throw std::invalid_argument("subspace: mismatched dims or field");
    }
  }

 private:
  void check_vector(const StateVector<T>& v) const {
    if (!(dims_ == v.dims()) || !(field_ == v.field())) {
      throw std::invalid_argument("subspace: vector has mismatched dims or field");
    }
  }

  void assign(Echelon<T> e) {
    rows_.clear();
    for (auto& r : e.rows) rows_.emplace_back(dims_, field_, std::move(r));
    pivots_ = std::move(e.pivots);
  }

  Dims dims_;
  Field field_;
  std::vector<StateVector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

template <ExactScalar T>
Subspace<T> sum(const Subspace<T>& a, const Subspace<T>& b) {
  a.check_subspace(b);
  std::vector<StateVector<T>> all = a.rows();
  all.insert(all.end(), b.rows().begin(), b.rows().end());
  return Subspace<T>::span(a.dims(), a.field(), all);
}

/// a ∩ b = (a⊥ + b⊥)⊥; valid because the form is nondegenerate on H.
template <ExactScalar T>
Subspace<T> intersect(const Subspace<T>& a, const Subspace<T>& b) {
  a.check_subspace(b);
  return sum(a.orthocomplement(), b.orthocomplement()).orthocomplement();
}

template <ExactScalar T>
bool equal(const Subspace<T>& a, const Subspace<T>& b) {
  a.check_subspace(b);
  return a == b;
}

/// Exact conversion of a rational vector into another field.
template <class To>
StateVector<To> convert(const StateVector<Rational>& v, const Field& field) {
  std::vector<To> coeffs;
  coeffs.reserve(v.size());
  for (const auto& c : v.coeffs()) coeffs.push_back(ScalarTraits<To>::from_rational(c, field));
  return StateVector<To>(v.dims(), field, std::move(coeffs));
}

bool is_integral(const StateVector<Rational>& v);

/// Rescales each echelon row to a primitive integer vector (coprime entries,
/// positive pivot) spanning the same line.
std::vector<StateVector<Rational>> integer_generators(const Subspace<Rational>& s);

/// Echelon basis over F_p of the reduction of integer generators. Throws
/// std::invalid_argument for non-integer coefficients.
Subspace<Fp> reduce_mod_p(const Dims& dims, std::span<const StateVector<Rational>> generators,
                          std::uint64_t p);

StateVector<Complex> to_complex(const StateVector<Rational>& v);

}  // namespace ces
