#include "ces/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

namespace ces {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

/// All nonzero vectors of F_p^d whose first nonzero coordinate is 1.
std::vector<std::vector<std::uint64_t>> projective_points(int d, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> points;
  for (int lead = 0; lead < d; ++lead) {
    const int free = d - 1 - lead;
    std::vector<std::uint64_t> v(static_cast<std::size_t>(d), 0);
    v[static_cast<std::size_t>(lead)] = 1;
    std::uint64_t combos = 1;
    for (int i = 0; i < free; ++i) combos *= p;
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::uint64_t rest = c;
      // last coordinate varies fastest
      for (int i = d - 1; i > lead; --i) {
        v[static_cast<std::size_t>(i)] = rest % p;
        rest /= p;
      }
      points.push_back(v);
    }
  }
  return points;
}

ProductVector<Fp> to_product(const Dims& dims, std::uint64_t p,
                             const std::vector<const std::vector<std::uint64_t>*>& factors) {
  const Field field = Field::fp(p);
  std::vector<std::vector<Fp>> out;
  for (const auto* f : factors) {
    std::vector<Fp> row;
    for (auto c : *f) row.emplace_back(static_cast<std::int64_t>(c), p);
    out.push_back(std::move(row));
  }
  return ProductVector<Fp>(dims, field, std::move(out));
}

using Factors = std::vector<std::vector<Complex>>;

class OverlapObjective {
 public:
  OverlapObjective(std::span<const StateVector<Complex>> basis, const Dims& dims)
      : dims_(dims), total_(static_cast<std::size_t>(dims.total())) {
    for (const auto& w : basis) {
      std::vector<Complex> c(total_);
      for (std::size_t i = 0; i < total_; ++i) c[i] = std::conj(w[i]);
      conj_basis_.push_back(std::move(c));
    }
    digits_.resize(total_);
    for (std::size_t i = 0; i < total_; ++i) digits_[i] = dims.multi_index(static_cast<std::int64_t>(i));
  }

  double value(const Factors& x) const {
    std::vector<Complex> prod(total_);
    for (std::size_t i = 0; i < total_; ++i) {
      Complex v = 1.0;
      for (int r = 0; r < dims_.k(); ++r) v *= x[r][static_cast<std::size_t>(digits_[i][r])];
      prod[i] = v;
    }
    double f = 0.0;
    for (const auto& w : conj_basis_) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < total_; ++i) acc += w[i] * prod[i];
      f += std::norm(acc);
    }
    return f;
  }

  /// Replaces x[r] with the maximizer of F over unit vectors at site r and
  /// returns the new value of F.
  double update(Factors& x, int r) const {
    const int d = dims_[r];
    std::vector<Complex> weight(total_);
    for (std::size_t i = 0; i < total_; ++i) {
      Complex v = 1.0;
      for (int s = 0; s < dims_.k(); ++s) {
        if (s != r) v *= x[s][static_cast<std::size_t>(digits_[i][s])];
      }
      weight[i] = v;
    }
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    Eigen::VectorXcd g(d);
    for (const auto& w : conj_basis_) {
      g.setZero();
      for (std::size_t i = 0; i < total_; ++i) g(digits_[i][r]) += w[i] * weight[i];
      a += g.conjugate() * g.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(a);
    const auto& values = eig.eigenvalues();
    const auto& vectors = eig.eigenvectors();
    const double top = values(d - 1);
    const double cutoff = top - 1e-12 * std::max(1.0, std::abs(top));

    Eigen::VectorXcd prev(d);
    for (int i = 0; i < d; ++i) prev(i) = x[r][static_cast<std::size_t>(i)];

    // Degenerate top eigenvalue: stay as close to the previous iterate as the
    // eigenspace allows.
    Eigen::VectorXcd next = vectors.col(d - 1);
    int multiplicity = 0;
    for (int i = d - 1; i >= 0 && values(i) >= cutoff; --i) ++multiplicity;
    if (multiplicity > 1) {
      Eigen::VectorXcd projected = Eigen::VectorXcd::Zero(d);
      for (int i = d - multiplicity; i < d; ++i) {
        projected += vectors.col(i) * vectors.col(i).dot(prev);
      }
      if (projected.norm() > 1e-12) next = projected / projected.norm();
    }
    const Complex phase = next.dot(prev);
    if (std::abs(phase) > 1e-300) next *= phase / std::abs(phase);
    next /= next.norm();

    for (int i = 0; i < d; ++i) x[r][static_cast<std::size_t>(i)] = next(i);
    return (next.adjoint() * a * next)(0, 0).real();
  }

 private:
  const Dims& dims_;
  std::size_t total_;
  std::vector<std::vector<Complex>> conj_basis_;
  std::vector<std::vector<int>> digits_;
};

struct RestartOutcome {
  AlsRestart record;
  Factors factors;
};

RestartOutcome run_restart(const OverlapObjective& objective, const Dims& dims,
                           const AlsOptions& options, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                    static_cast<std::uint32_t>(options.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;

  Factors x;
  for (int r = 0; r < dims.k(); ++r) {
    std::vector<Complex> f(static_cast<std::size_t>(dims[r]));
    double norm2 = 0.0;
    for (auto& c : f) {
      const double re = normal(rng);
      const double im = normal(rng);
      c = {re, im};
      norm2 += std::norm(c);
    }
    for (auto& c : f) c /= std::sqrt(norm2);
    x.push_back(std::move(f));
  }

  RestartOutcome out;
  double f = objective.value(x);
  out.record.history.push_back(f);
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    const double start = f;
    for (int r = 0; r < dims.k(); ++r) {
      f = objective.update(x, r);
      out.record.history.push_back(f);
    }
    out.record.sweeps = sweep + 1;
    if (f - start < options.tol) break;
  }
  out.record.overlap = f;
  out.factors = std::move(x);
  return out;
}

}  // namespace

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("enumeration needs " + std::to_string(required) +
                         " membership tests, budget is " + std::to_string(budget)),
      required_(required),
      budget_(budget) {}

std::uint64_t projective_product_count(const Dims& dims, std::uint64_t p) {
  std::uint64_t count = 1;
  for (int d : dims.local()) {
    std::uint64_t per_factor = 0;
    std::uint64_t power = 1;
    for (int i = 0; i < d; ++i) {
      per_factor += power;  // 1 + p + ... + p^{d-1}
      power = saturating_mul(power, p);
      if (per_factor == kSaturated || power == kSaturated) return kSaturated;
    }
    count = saturating_mul(count, per_factor);
  }
  return count;
}

FfSearch ff_product_vectors(const Dims& dims, std::span<const StateVector<Rational>> generators,
                            std::uint64_t p, std::uint64_t budget) {
  if (!is_prime(p)) throw std::invalid_argument("ff search: " + std::to_string(p) + " is not prime");
  if (p <= static_cast<std::uint64_t>(dims.N())) {
    throw std::invalid_argument("ff search: prime " + std::to_string(p) + " must exceed N = " +
                                std::to_string(dims.N()));
  }
  const std::uint64_t required = projective_product_count(dims, p);
  if (required > budget) throw BudgetExceeded(required, budget);

  const Subspace<Fp> subspace = reduce_mod_p(dims, generators, p);
  const Subspace<Fp> checks = subspace.orthocomplement();

  FfSearch out;
  out.prime = p;
  out.dim_fp = subspace.dim();

  const auto total = static_cast<std::size_t>(dims.total());
  std::vector<std::vector<std::uint64_t>> parity;
  for (const auto& row : checks.rows()) {
    std::vector<std::uint64_t> h(total);
    for (std::size_t i = 0; i < total; ++i) h[i] = row[i].value();
    parity.push_back(std::move(h));
  }

  const int k = dims.k();
  std::vector<std::vector<std::vector<std::uint64_t>>> points;
  for (int r = 0; r < k; ++r) points.push_back(projective_points(dims[r], p));

  // prefix[r] holds the expansion of factors 0..r-1.
  std::vector<std::vector<std::uint64_t>> prefix(static_cast<std::size_t>(k) + 1);
  prefix[0] = {1};
  std::vector<std::size_t> choice(static_cast<std::size_t>(k), 0);
  auto rebuild = [&](int from) {
    for (int r = from; r < k; ++r) {
      const auto& f = points[r][choice[r]];
      auto& next = prefix[r + 1];
      next.clear();
      for (auto c : prefix[r]) {
        for (auto a : f) next.push_back(c * a % p);
      }
    }
  };
  rebuild(0);
  while (true) {
    ++out.enumerated;
    const auto& v = prefix[k];
    bool member = true;
    for (const auto& h : parity) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < total; ++i) acc = (acc + h[i] * v[i]) % p;
      if (acc != 0) {
        member = false;
        break;
      }
    }
    if (member) {
      std::vector<const std::vector<std::uint64_t>*> factors;
      for (int r = 0; r < k; ++r) factors.push_back(&points[r][choice[r]]);
      out.witnesses.push_back(to_product(dims, p, factors));
    }
    int r = k - 1;
    while (r >= 0 && ++choice[r] == points[r].size()) {
      choice[r] = 0;
      --r;
    }
    if (r < 0) break;
    rebuild(r);
  }
  return out;
}

ProductVector<Fp> projective_normal_form(const ProductVector<Fp>& v) {
  auto factors = v.factors();
  for (auto& f : factors) {
    auto lead = std::find_if(f.begin(), f.end(), [](const Fp& c) { return !c.is_zero(); });
    const Fp scale = lead->inverse();
    for (auto& c : f) c *= scale;
  }
  return ProductVector<Fp>(v.dims(), v.field(), std::move(factors));
}

SperpClassification classify_sperp(const Dims& dims, std::uint64_t p, std::uint64_t budget) {
  const auto search = ff_product_vectors(dims, sperp_generators(dims), p, budget);
  const Field field = Field::fp(p);
  std::vector<ProductVector<Fp>> expected;
  for (std::uint64_t lambda = 0; lambda < p; ++lambda) {
    expected.push_back(z_vector<Fp>(
        dims, VandermondePoint<Fp>::finite(Fp(static_cast<std::int64_t>(lambda), p)), field));
  }
  expected.push_back(z_vector<Fp>(dims, VandermondePoint<Fp>::infinity(), field));

  auto key_less = [](const ProductVector<Fp>& a, const ProductVector<Fp>& b) {
    return a.factors() < b.factors();
  };
  std::vector<ProductVector<Fp>> found;
  for (const auto& w : search.witnesses) found.push_back(projective_normal_form(w));
  for (auto& e : expected) e = projective_normal_form(e);
  std::sort(found.begin(), found.end(), key_less);
  std::sort(expected.begin(), expected.end(), key_less);

  SperpClassification out;
  out.prime = p;
  out.enumerated = search.enumerated;
  std::set_difference(expected.begin(), expected.end(), found.begin(), found.end(),
                      std::back_inserter(out.missing), key_less);
  std::set_difference(found.begin(), found.end(), expected.begin(), expected.end(),
                      std::back_inserter(out.extraneous), key_less);
  out.found = std::move(found);
  out.pass = out.missing.empty() && out.extraneous.empty();
  return out;
}

std::vector<StateVector<Complex>> orthonormal_basis(const Subspace<Rational>& s) {
  std::vector<StateVector<Complex>> basis;
  for (const auto& row : s.rows()) {
    auto v = to_complex(row);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        const Complex c = inner(q, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
      }
    }
    const double norm = std::sqrt(std::real(inner(v, v)));
    v *= Complex(1.0 / norm);
    basis.push_back(std::move(v));
  }
  return basis;
}

AlsResult max_product_overlap(std::span<const StateVector<Complex>> orthonormal, const Dims& dims,
                              const AlsOptions& options) {
  if (options.restarts < 1) throw std::invalid_argument("als: restarts must be >= 1");
  for (std::size_t i = 0; i < orthonormal.size(); ++i) {
    if (!(orthonormal[i].dims() == dims)) throw std::invalid_argument("als: basis has wrong dims");
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex g = inner(orthonormal[i], orthonormal[j]);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(g - expected) > 1e-8) {
        throw std::invalid_argument("als: basis is not orthonormal (Gram deviation " +
                                    std::to_string(std::abs(g - expected)) + ")");
      }
    }
  }

  const OverlapObjective objective(orthonormal, dims);
  const auto restarts = static_cast<std::size_t>(options.restarts);
  std::vector<RestartOutcome> outcomes(restarts);

  unsigned workers = options.threads ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(restarts));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < restarts; i = next++) {
      outcomes[i] = run_restart(objective, dims, options, static_cast<int>(i));
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  AlsResult result;
  for (std::size_t i = 0; i < restarts; ++i) {
    if (i == 0 || outcomes[i].record.overlap > result.best_overlap) {
      result.best_overlap = outcomes[i].record.overlap;
      result.best_restart = static_cast<int>(i);
    }
  }
  result.witness = outcomes[static_cast<std::size_t>(result.best_restart)].factors;
  for (auto& o : outcomes) result.restarts.push_back(std::move(o.record));
  return result;
}

std::string to_string(Method m) { return m == Method::finite_field ? "finite-field" : "als"; }

std::string to_string(Verdict v) {
  return v == Verdict::witness_found ? "witness-found" : "no-product-vector-found";
}

std::string to_string(UpbStatus s) {
  switch (s) {
    case UpbStatus::confirmed:
      return "confirmed";
    case UpbStatus::rejected:
      return "rejected";
    case UpbStatus::unverified:
      return "unverified";
  }
  return "unknown";
}

std::vector<VerificationReport> check_completely_entangled(const Subspace<Rational>& s,
                                                           const CheckOptions& options) {
  const Dims& dims = s.dims();
  std::vector<VerificationReport> reports;

  if (options.use_ff) {
    const auto generators = integer_generators(s);
    bool any_prime = false;
    for (std::uint64_t p : options.primes) {
      if (p <= static_cast<std::uint64_t>(dims.N())) continue;
      any_prime = true;
      VerificationReport report;
      report.method = Method::finite_field;
      report.prime = p;
      report.certified_dims["rational"] = s.dim();
      try {
        auto search = ff_product_vectors(dims, generators, p, options.budget);
        report.enumerated = search.enumerated;
        report.certified_dims[Field::fp(p).name()] = search.dim_fp;
        if (search.dim_fp != s.dim()) {
          report.skipped = "rank drops modulo " + std::to_string(p);
        } else if (!search.witnesses.empty()) {
          report.verdict = Verdict::witness_found;
          report.ff_witnesses = std::move(search.witnesses);
        }
      } catch (const BudgetExceeded& e) {
        report.skipped = e.what();
      }
      reports.push_back(std::move(report));
    }
    if (!any_prime) {
      VerificationReport report;
      report.method = Method::finite_field;
      report.certified_dims["rational"] = s.dim();
      report.skipped = "no prime in the list exceeds N = " + std::to_string(dims.N());
      reports.push_back(std::move(report));
    }
  }

  if (options.use_als) {
    VerificationReport report;
    report.method = Method::als;
    report.als = options.als;
    report.witness_gap = options.witness_gap;
    report.certified_dims["rational"] = s.dim();
    if (s.dim() > 0) {
      const auto basis = orthonormal_basis(s);
      const auto result = max_product_overlap(basis, dims, options.als);
      report.best_overlap = result.best_overlap;
      for (const auto& r : result.restarts) report.sweeps.push_back(r.sweeps);
      if (result.best_overlap > 1.0 - options.witness_gap) {
        report.verdict = Verdict::witness_found;
        report.als_witness.emplace(dims, Field::complex_approx(), result.witness);
      }
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

bool any_witness(std::span<const VerificationReport> reports) {
  return std::any_of(reports.begin(), reports.end(), [](const VerificationReport& r) {
    return !r.skipped && r.verdict == Verdict::witness_found;
  });
}

UpbReport verify_upb(const Dims& dims, std::span<const ProductVector<Rational>> vectors,
                     const CheckOptions& options) {
  if (vectors.empty()) throw std::invalid_argument("verify_upb: empty vector list");
  std::vector<StateVector<Rational>> expanded;
  for (const auto& v : vectors) {
    if (!(v.dims() == dims)) throw std::invalid_argument("verify_upb: mismatched dims");
    expanded.push_back(v.expand());
  }
  const auto span = Subspace<Rational>::span(dims, Field::rational(), expanded);
  const auto complement = span.orthocomplement();

  UpbReport report;
  report.count = static_cast<int>(vectors.size());
  report.rank = span.dim();
  report.independent = report.rank == report.count;
  report.meets_minimum = report.rank >= dims.N() + 1;
  report.complement_dim = complement.dim();
  report.complement_within_s = entangled_subspace(dims).contains(complement);
  if (complement.dim() > 0) report.complement_checks = check_completely_entangled(complement, options);

  const bool ran_clean = std::any_of(report.complement_checks.begin(), report.complement_checks.end(),
                                     [](const VerificationReport& r) { return !r.skipped; });
  if (!report.independent || !report.meets_minimum || any_witness(report.complement_checks)) {
    report.status = UpbStatus::rejected;
  } else if (complement.dim() == 0 || ran_clean || report.complement_within_s) {
    report.status = UpbStatus::confirmed;
  }
  return report;
}

}  // namespace ces
