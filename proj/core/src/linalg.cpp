#include "ces/linalg.hpp"

namespace ces {

bool is_integral(const StateVector<Rational>& v) {
  return std::all_of(v.coeffs().begin(), v.coeffs().end(),
                     [](const Rational& c) { return c.get_den() == 1; });
}

std::vector<StateVector<Rational>> integer_generators(const Subspace<Rational>& s) {
  std::vector<StateVector<Rational>> out;
  out.reserve(s.rows().size());
  for (const auto& row : s.rows()) {
    Integer den_lcm = 1;
    for (const auto& c : row.coeffs()) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    StateVector<Rational> scaled = row;
    scaled *= Rational(den_lcm);
    Integer num_gcd = 0;
    for (const auto& c : scaled.coeffs()) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    if (num_gcd > 1) scaled *= Rational(Integer(1), num_gcd);
    out.push_back(std::move(scaled));
  }
  return out;
}

Subspace<Fp> reduce_mod_p(const Dims& dims, std::span<const StateVector<Rational>> generators,
                          std::uint64_t p) {
  const Field field = Field::fp(p);
  std::vector<StateVector<Fp>> reduced;
  reduced.reserve(generators.size());
  for (const auto& g : generators) {
    if (!(g.dims() == dims)) throw std::invalid_argument("reduce_mod_p: mismatched dims");
    if (!is_integral(g)) {
      throw std::invalid_argument("reduce_mod_p: generator has non-integer coefficients");
    }
    reduced.push_back(convert<Fp>(g, field));
  }
  return Subspace<Fp>::span(dims, field, reduced);
}

StateVector<Complex> to_complex(const StateVector<Rational>& v) {
  return convert<Complex>(v, Field::complex_approx());
}

}  // namespace ces
