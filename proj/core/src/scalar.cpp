#include "ces/scalar.hpp"

#include <charconv>
#include <stdexcept>

namespace ces {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

std::uint64_t reduce(std::int64_t value, std::uint64_t modulus) {
  const auto m = static_cast<std::int64_t>(modulus);
  std::int64_t r = value % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

Field Field::fp(std::uint64_t p) {
  if (!is_prime(p) || p >= kMaxModulus) {
    throw std::invalid_argument("field: " + std::to_string(p) + " is not a supported prime");
  }
  return {FieldKind::prime, p};
}

std::string Field::name() const {
  switch (kind) {
    case FieldKind::rational:
      return "rational";
    case FieldKind::gaussian:
      return "gaussian";
    case FieldKind::prime:
      return "fp(" + std::to_string(prime) + ")";
    case FieldKind::complex_approx:
      return "complex64-approx";
  }
  return "unknown";
}

Field Field::parse(std::string_view text) {
  if (text == "rational") return rational();
  if (text == "gaussian") return gaussian();
  if (text == "complex64-approx") return complex_approx();
  std::string_view digits;
  if (text.starts_with("fp(") && text.ends_with(")")) {
    digits = text.substr(3, text.size() - 4);
  } else if (text.starts_with("fp:")) {
    digits = text.substr(3);
  } else {
    throw std::invalid_argument("field: unknown field '" + std::string(text) + "'");
  }
  std::uint64_t p = 0;
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size()) {
    throw std::invalid_argument("field: bad prime in '" + std::string(text) + "'");
  }
  return fp(p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("gaussian rational: division by zero");
  const Rational norm = o.re * o.re + o.im * o.im;
  *this *= o.conj();
  re /= norm;
  im /= norm;
  return *this;
}

Fp::Fp(std::int64_t value, std::uint64_t modulus) : modulus_(modulus) {
  if (modulus < 2 || modulus >= kMaxModulus) {
    throw std::invalid_argument("fp: unsupported modulus " + std::to_string(modulus));
  }
  value_ = reduce(value, modulus);
}

Fp::Fp(const Integer& value, std::uint64_t modulus) : modulus_(modulus) {
  if (modulus < 2 || modulus >= kMaxModulus) {
    throw std::invalid_argument("fp: unsupported modulus " + std::to_string(modulus));
  }
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), static_cast<unsigned long>(modulus));
  value_ = r.get_ui();
}

void Fp::check_same(const Fp& o) const {
  if (modulus_ != o.modulus_) {
    throw std::invalid_argument("fp: mixed moduli " + std::to_string(modulus_) + " and " +
                                std::to_string(o.modulus_));
  }
}

Fp Fp::inverse() const {
  if (value_ == 0) throw std::domain_error("fp: inverse of zero");
  // Fermat: a^(p-2)
  std::uint64_t result = 1;
  std::uint64_t base = value_;
  std::uint64_t e = modulus_ - 2;
  while (e) {
    if (e & 1) result = result * base % modulus_;
    base = base * base % modulus_;
    e >>= 1;
  }
  Fp out;
  out.value_ = result;
  out.modulus_ = modulus_;
  return out;
}

Fp& Fp::operator+=(const Fp& o) {
  check_same(o);
  value_ = (value_ + o.value_) % modulus_;
  return *this;
}

Fp& Fp::operator-=(const Fp& o) {
  check_same(o);
  value_ = (value_ + modulus_ - o.value_) % modulus_;
  return *this;
}

Fp& Fp::operator*=(const Fp& o) {
  check_same(o);
  value_ = value_ * o.value_ % modulus_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Fp& x) {
  return os << x.value() << " (mod " << x.modulus() << ")";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& x) {
  return os << x.re << (sgn(x.im) < 0 ? "-" : "+") << abs(x.im) << "i";
}

Fp ScalarTraits<Fp>::from_rational(const Rational& v, const Field& f) {
  Fp den(v.get_den(), f.prime);
  if (den.is_zero()) {
    throw std::domain_error("fp: denominator divisible by " + std::to_string(f.prime));
  }
  return Fp(v.get_num(), f.prime) / den;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("rational: empty string");
  const auto dot = s.find('.');
  Rational out;
  try {
    if (dot != std::string::npos) {
      if (s.find('/') != std::string::npos) throw std::invalid_argument("mixed");
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      const std::size_t scale = s.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bare");
      if (digits.front() == '+') digits.erase(0, 1);
      Integer num(digits, 10);
      Integer den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
      out = Rational(num, den);
    } else {
      if (s.front() == '+') s.erase(0, 1);
      out = Rational(s, 10);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("rational: cannot parse '" + std::string(text) + "'");
  }
  if (sgn(out.get_den()) == 0) throw std::invalid_argument("rational: zero denominator");
  out.canonicalize();
  return out;
}

}  // namespace ces
