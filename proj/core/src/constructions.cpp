#include "ces/constructions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ces {

namespace {

StateVector<Rational> basis_vector(const Dims& dims, const MultiIndex& index) {
  return StateVector<Rational>::unit(dims, Field::rational(), dims.flat_index(index.i));
}

ProductVector<Rational> basis_product(const Dims& dims, const MultiIndex& index) {
  std::vector<std::vector<Rational>> factors;
  for (int r = 0; r < dims.k(); ++r) {
    std::vector<Rational> f(static_cast<std::size_t>(dims[r]), Rational(0));
    f[static_cast<std::size_t>(index.i[static_cast<std::size_t>(r)])] = 1;
    factors.push_back(std::move(f));
  }
  return ProductVector<Rational>(dims, Field::rational(), std::move(factors));
}

void check_level(const Dims& dims, int n, const char* what) {
  if (n < 0 || n > dims.N()) {
    throw std::out_of_range(std::string(what) + ": level " + std::to_string(n) + " outside [0, " +
                            std::to_string(dims.N()) + "]");
  }
}

std::vector<StateVector<Rational>> expand_all(std::span<const ProductVector<Rational>> vectors) {
  std::vector<StateVector<Rational>> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) out.push_back(v.expand());
  return out;
}

}  // namespace

Point parse_point(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "∞") return Point::infinity();
  return Point::finite(parse_rational(text));
}

std::string to_string(const Point& p) { return p.is_infinite() ? "inf" : p.value->get_str(); }

StateVector<Rational> u_vector(const Dims& dims, int n) {
  check_level(dims, n, "u_vector");
  auto u = StateVector<Rational>::zero(dims, Field::rational());
  for (const auto& idx : enumerate_level(dims, n)) {
    u[static_cast<std::size_t>(dims.flat_index(idx.i))] = 1;
  }
  return u;
}

std::vector<StateVector<Rational>> entangled_generators(const Dims& dims) {
  std::vector<StateVector<Rational>> gens;
  for (int n = 0; n <= dims.N(); ++n) {
    const auto level = enumerate_level(dims, n);
    const auto anchor = basis_vector(dims, level.front());
    for (std::size_t j = 1; j < level.size(); ++j) {
      gens.push_back(anchor - basis_vector(dims, level[j]));
    }
  }
  return gens;
}

std::vector<StateVector<Rational>> sperp_generators(const Dims& dims) {
  std::vector<StateVector<Rational>> gens;
  for (int n = 0; n <= dims.N(); ++n) gens.push_back(u_vector(dims, n));
  return gens;
}

Subspace<Rational> entangled_subspace(const Dims& dims) {
  return Subspace<Rational>::span(dims, Field::rational(), entangled_generators(dims));
}

Subspace<Rational> s_perp(const Dims& dims) {
  return Subspace<Rational>::span(dims, Field::rational(), sperp_generators(dims));
}

Subspace<Rational> h_level(const Dims& dims, int n) {
  check_level(dims, n, "h_level");
  std::vector<StateVector<Rational>> gens;
  for (const auto& idx : enumerate_level(dims, n)) gens.push_back(basis_vector(dims, idx));
  return Subspace<Rational>::span(dims, Field::rational(), gens);
}

Subspace<Rational> s_level(const Dims& dims, int n) {
  check_level(dims, n, "s_level");
  const auto level = enumerate_level(dims, n);
  std::vector<StateVector<Rational>> gens;
  const auto anchor = basis_vector(dims, level.front());
  for (std::size_t j = 1; j < level.size(); ++j) gens.push_back(anchor - basis_vector(dims, level[j]));
  return Subspace<Rational>::span(dims, Field::rational(), gens);
}

Subspace<Rational> t_level(const Dims& dims, int n) {
  check_level(dims, n, "t_level");
  const std::vector<StateVector<Rational>> gens{u_vector(dims, n)};
  return Subspace<Rational>::span(dims, Field::rational(), gens);
}

std::vector<StateVector<Complex>> onb_level(const Dims& dims, int n) {
  check_level(dims, n, "onb_level");
  const auto level = enumerate_level(dims, n);
  const auto a = static_cast<std::int64_t>(level.size());
  const double norm = 1.0 / std::sqrt(static_cast<double>(a));
  std::vector<StateVector<Complex>> out;
  for (std::int64_t j = 0; j < a; ++j) {
    auto v = StateVector<Complex>::zero(dims, Field::complex_approx());
    for (std::int64_t t = 0; t < a; ++t) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * t) % a) /
                           static_cast<double>(a);
      v[static_cast<std::size_t>(dims.flat_index(level[static_cast<std::size_t>(t)].i))] =
          std::polar(norm, angle);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Point> default_points(const Dims& dims) {
  std::vector<Point> points;
  for (int n = 0; n <= dims.N(); ++n) points.push_back(Point::finite(Rational(n)));
  return points;
}

std::vector<ProductVector<Rational>> minimal_upb(const Dims& dims, std::span<const Point> points) {
  if (static_cast<int>(points.size()) != dims.N() + 1) {
    throw std::invalid_argument("minimal_upb: need exactly N+1 = " + std::to_string(dims.N() + 1) +
                                " points, got " + std::to_string(points.size()));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) {
        throw std::invalid_argument("minimal_upb: duplicate point " + to_string(points[i]));
      }
    }
  }
  std::vector<ProductVector<Rational>> out;
  for (const auto& p : points) out.push_back(z_vector(dims, p));
  return out;
}

std::vector<ProductVector<Rational>> minimal_upb(const Dims& dims) {
  const auto points = default_points(dims);
  return minimal_upb(dims, points);
}

std::optional<std::vector<int>> choose_levels(std::span<const std::int64_t> weights,
                                              std::int64_t target) {
  if (target < 0) return std::nullopt;
  const std::size_t count = weights.size();
  const auto width = static_cast<std::size_t>(target) + 1;
  // reachable[i][s]: some subset of levels i.. sums to s.
  std::vector<std::vector<bool>> reachable(count + 1, std::vector<bool>(width, false));
  reachable[count][0] = true;
  for (std::size_t i = count; i-- > 0;) {
    const std::int64_t w = weights[i];
    for (std::size_t s = 0; s < width; ++s) {
      bool ok = reachable[i + 1][s];
      if (!ok && w > 0 && static_cast<std::int64_t>(s) >= w) {
        ok = reachable[i + 1][s - static_cast<std::size_t>(w)];
      }
      reachable[i][s] = ok;
    }
  }
  if (!reachable[0][static_cast<std::size_t>(target)]) return std::nullopt;

  std::vector<int> picked;
  auto remaining = static_cast<std::size_t>(target);
  for (std::size_t i = 0; i < count; ++i) {
    const std::int64_t w = weights[i];
    if (w > 0 && static_cast<std::int64_t>(remaining) >= w &&
        reachable[i + 1][remaining - static_cast<std::size_t>(w)]) {
      picked.push_back(static_cast<int>(i));
      remaining -= static_cast<std::size_t>(w);
    }
  }
  return picked;
}

AnyDimUpb any_dim_upb(const Dims& dims, int m, std::span<const Point> points) {
  if (dims.k() != 2) throw std::invalid_argument("any_dim_upb: only defined for two factors");
  const int lo = dims[0] + dims[1] - 1;
  const auto hi = dims.total();
  if (m < lo || m > hi) {
    throw std::out_of_range("any_dim_upb: size " + std::to_string(m) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const auto counts = level_counts(dims);
  std::vector<std::int64_t> weights;
  for (auto a : counts) weights.push_back(a - 1);
  const auto levels = choose_levels(weights, m - (dims.N() + 1));
  if (!levels) throw std::logic_error("any_dim_upb: subset sum infeasible for m = " + std::to_string(m));

  AnyDimUpb out{UpbSpec{dims, m, *levels, {points.begin(), points.end()}, {}},
                minimal_upb(dims, points), Subspace<Rational>(dims, Field::rational())};
  for (int n : *levels) {
    auto level = enumerate_level(dims, n);
    out.spec.dropped.push_back(level.back());
    level.pop_back();
    for (const auto& idx : level) out.vectors.push_back(basis_product(dims, idx));
  }

  const auto span = Subspace<Rational>::span(dims, Field::rational(), expand_all(out.vectors));
  if (span.dim() != m) {
    throw std::logic_error("any_dim_upb: rank " + std::to_string(span.dim()) + " != " +
                           std::to_string(m));
  }
  out.complement = span.orthocomplement();
  Subspace<Rational> expected(dims, Field::rational());
  for (int n = 0; n <= dims.N(); ++n) {
    if (std::find(levels->begin(), levels->end(), n) == levels->end()) {
      expected = sum(expected, s_level(dims, n));
    }
  }
  if (!(out.complement == expected)) {
    throw std::logic_error("any_dim_upb: complement is not the expected sum of S^(n)");
  }
  return out;
}

AnyDimUpb any_dim_upb(const Dims& dims, int m) {
  const auto points = default_points(dims);
  return any_dim_upb(dims, m, points);
}

Subspace<Rational> example1_space(int d1, int d2) {
  const Dims dims({d1, d2});
  std::vector<StateVector<Rational>> constraints;
  for (int n = 0; n <= d1 + d2 - 2; ++n) {
    auto row = StateVector<Rational>::zero(dims, Field::rational());
    for (int i = 0; i < d1; ++i) {
      const int j = n - i;
      if (j >= 0 && j < d2) row[static_cast<std::size_t>(i * d2 + j)] = 1;
    }
    constraints.push_back(std::move(row));
  }
  return Subspace<Rational>::span(dims, Field::rational(), constraints).orthocomplement();
}

Example2 example2_spaces(std::span<const Rational> lambdas) {
  const Dims dims({4, 4});
  using Cell = std::pair<int, int>;
  const std::vector<std::vector<Cell>> groups{
      {{0, 0}},
      {{0, 1}, {1, 0}},
      {{0, 2}, {1, 1}, {2, 0}},
      {{0, 3}, {1, 2}},
      {{2, 1}, {3, 0}},
      {{1, 3}, {2, 2}, {3, 1}},
      {{2, 3}, {3, 2}},
      {{3, 3}},
  };
  std::vector<StateVector<Rational>> constraints;
  for (const auto& group : groups) {
    auto row = StateVector<Rational>::zero(dims, Field::rational());
    for (auto [i, j] : group) row[static_cast<std::size_t>(i * 4 + j)] = 1;
    constraints.push_back(std::move(row));
  }
  auto m = Subspace<Rational>::span(dims, Field::rational(), constraints).orthocomplement();
  auto m_perp = m.orthocomplement();

  std::vector<ProductVector<Rational>> r;
  for (const auto& lambda : lambdas) r.push_back(z_vector(dims, Point::finite(lambda)));
  r.push_back(z_vector(dims, Point::infinity()));
  return Example2{std::move(m), std::move(m_perp), std::move(r)};
}

Example2 example2_spaces() {
  std::vector<Rational> lambdas;
  for (int l = 0; l <= 6; ++l) lambdas.emplace_back(l);
  return example2_spaces(lambdas);
}

}  // namespace ces
