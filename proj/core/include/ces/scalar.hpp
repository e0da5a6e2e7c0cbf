#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ces {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

enum class FieldKind { rational, gaussian, prime, complex_approx };

/// Which scalar field a vector or subspace lives over. Only prime fields
/// carry extra data (the modulus).
struct Field {
  FieldKind kind = FieldKind::rational;
  std::uint64_t prime = 0;

  static Field rational() { return {FieldKind::rational, 0}; }
  static Field gaussian() { return {FieldKind::gaussian, 0}; }
  static Field fp(std::uint64_t p);
  static Field complex_approx() { return {FieldKind::complex_approx, 0}; }

  /// "rational", "gaussian", "fp(p)" or "complex64-approx".
  std::string name() const;
  /// Accepts every spelling produced by name(), plus "fp:p".
  static Field parse(std::string_view text);

  bool operator==(const Field&) const = default;
};

bool is_prime(std::uint64_t n);

/// Exact Gaussian rational re + i·im.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational real, Rational imag = 0) : re(std::move(real)), im(std::move(imag)) {}
  GaussianRational(int real) : re(real), im(0) {}

  GaussianRational conj() const { return {re, -im}; }
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Residue modulo a prime p < 2^31. Arithmetic between residues with
/// different moduli throws std::invalid_argument.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t value, std::uint64_t modulus);
  Fp(const Integer& value, std::uint64_t modulus);

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  /// Throws std::domain_error for zero.
  Fp inverse() const;

  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend Fp operator-(const Fp& a) { return Fp(0, a.modulus_) - a; }
  friend bool operator==(const Fp& a, const Fp& b) {
    return a.value_ == b.value_ && a.modulus_ == b.modulus_;
  }
  friend auto operator<=>(const Fp& a, const Fp& b) {
    if (auto c = a.modulus_ <=> b.modulus_; c != 0) return c;
    return a.value_ <=> b.value_;
  }

 private:
  void check_same(const Fp& o) const;

  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Fp& x);
std::ostream& operator<<(std::ostream& os, const GaussianRational& x);

/// Uniform access to the scalar types used by vectors and subspaces.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool accepts(const Field& f) { return f.kind == FieldKind::rational; }
  static Rational from_integer(const Integer& v, const Field&) { return Rational(v); }
  static Rational from_rational(const Rational& v, const Field&) { return v; }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational conj(const Rational& x) { return x; }
};

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static bool accepts(const Field& f) { return f.kind == FieldKind::gaussian; }
  static GaussianRational from_integer(const Integer& v, const Field&) { return {Rational(v)}; }
  static GaussianRational from_rational(const Rational& v, const Field&) { return {v}; }
  static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
  static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
};

template <>
struct ScalarTraits<Fp> {
  static constexpr bool exact = true;
  static bool accepts(const Field& f) { return f.kind == FieldKind::prime; }
  static Fp from_integer(const Integer& v, const Field& f) { return Fp(v, f.prime); }
  /// Throws std::domain_error when p divides the denominator.
  static Fp from_rational(const Rational& v, const Field& f);
  static bool is_zero(const Fp& x) { return x.is_zero(); }
  static Fp conj(const Fp& x) { return x; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static bool accepts(const Field& f) { return f.kind == FieldKind::complex_approx; }
  static Complex from_integer(const Integer& v, const Field&) { return {v.get_d(), 0.0}; }
  static Complex from_rational(const Rational& v, const Field&) { return {v.get_d(), 0.0}; }
  static bool is_zero(const Complex& x) { return x == Complex{}; }
  static Complex conj(const Complex& x) { return std::conj(x); }
};

template <class T>
concept ExactScalar = ScalarTraits<T>::exact;

/// Parses "p/q", "p", or a finite decimal such as "-0.25". Throws
/// std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

}  // namespace ces
