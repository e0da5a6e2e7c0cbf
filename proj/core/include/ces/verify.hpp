#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ces/constructions.hpp"
#include "ces/linalg.hpp"

namespace ces {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Raised when an exhaustive enumeration would exceed its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget);
  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// Π_r (p^{d_r} - 1)/(p - 1), saturating at UINT64_MAX.
std::uint64_t projective_product_count(const Dims& dims, std::uint64_t p);

struct FfSearch {
  std::uint64_t prime = 0;
  int dim_fp = 0;
  std::uint64_t enumerated = 0;
  /// Projectively normalized: first nonzero coordinate of each factor is 1.
  std::vector<ProductVector<Fp>> witnesses;
};

/// Every projective product vector over F_p whose expansion lies in the span
/// of the reduced integer generators. Requires p prime and p > N; throws
/// std::invalid_argument otherwise and BudgetExceeded when the number of
/// products exceeds budget.
FfSearch ff_product_vectors(const Dims& dims, std::span<const StateVector<Rational>> generators,
                            std::uint64_t p, std::uint64_t budget = kDefaultEnumerationBudget);

/// Scales each factor so its first nonzero coordinate is 1.
ProductVector<Fp> projective_normal_form(const ProductVector<Fp>& v);

struct SperpClassification {
  bool pass = false;
  std::uint64_t prime = 0;
  std::uint64_t enumerated = 0;
  std::vector<ProductVector<Fp>> found;
  std::vector<ProductVector<Fp>> missing;
  std::vector<ProductVector<Fp>> extraneous;
};

/// Compares the product vectors of S⊥ over F_p with {z^λ : λ ∈ F_p ∪ {∞}}.
SperpClassification classify_sperp(const Dims& dims, std::uint64_t p,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

struct AlsOptions {
  int restarts = 64;
  int max_sweeps = 500;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  /// 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  unsigned threads = 0;
};

struct AlsRestart {
  double overlap = 0.0;
  int sweeps = 0;
  /// F after initialization and after every single-site update.
  std::vector<double> history;
};

struct AlsResult {
  double best_overlap = 0.0;
  int best_restart = 0;
  std::vector<std::vector<Complex>> witness;
  std::vector<AlsRestart> restarts;
};

/// Modified Gram-Schmidt (two passes) of the echelon rows, in double precision.
std::vector<StateVector<Complex>> orthonormal_basis(const Subspace<Rational>& s);

/// Maximizes Σ_j |⟨w_j, x_1 ⊗ ... ⊗ x_k⟩|² over unit factors by cyclic
/// single-site updates, each taking the top eigenvector of the local
/// d_r × d_r Hermitian matrix. Throws std::invalid_argument if the basis Gram
/// matrix deviates from the identity by more than 1e-8.
AlsResult max_product_overlap(std::span<const StateVector<Complex>> orthonormal, const Dims& dims,
                              const AlsOptions& options);

enum class Method { finite_field, als };
enum class Verdict { no_product_vector_found, witness_found };

std::string to_string(Method m);
std::string to_string(Verdict v);

/// Outcome of one entanglement check on one subspace.
struct VerificationReport {
  Method method = Method::finite_field;
  Verdict verdict = Verdict::no_product_vector_found;
  /// finite field
  std::uint64_t prime = 0;
  std::uint64_t enumerated = 0;
  std::vector<ProductVector<Fp>> ff_witnesses;
  /// als
  std::optional<AlsOptions> als;
  double best_overlap = 0.0;
  double witness_gap = 0.0;
  std::vector<int> sweeps;
  std::optional<ProductVector<Complex>> als_witness;
  /// Subspace dimension per field name, e.g. {"rational": 2, "fp(5)": 2}.
  std::map<std::string, int> certified_dims;
  /// Set when the check could not run (budget, prime constraint).
  std::optional<std::string> skipped;
};

struct CheckOptions {
  bool use_ff = true;
  bool use_als = false;
  std::vector<std::uint64_t> primes{5, 7, 11};
  std::uint64_t budget = kDefaultEnumerationBudget;
  AlsOptions als;
  /// ALS reports a witness when the best overlap exceeds 1 - witness_gap.
  double witness_gap = 1e-6;
};

/// Runs the selected checks on s. Primes <= N are dropped from the list;
/// checks that cannot run are returned with `skipped` set.
std::vector<VerificationReport> check_completely_entangled(const Subspace<Rational>& s,
                                                           const CheckOptions& options);

/// Any report that found a witness.
bool any_witness(std::span<const VerificationReport> reports);

enum class UpbStatus { confirmed, rejected, unverified };
std::string to_string(UpbStatus s);

struct UpbReport {
  int count = 0;
  int rank = 0;
  bool independent = false;
  /// rank >= N+1; a smaller span always has product vectors in its complement.
  bool meets_minimum = false;
  int complement_dim = 0;
  /// The complement lies in S, so it is completely entangled outright.
  bool complement_within_s = false;
  std::vector<VerificationReport> complement_checks;
  UpbStatus status = UpbStatus::unverified;
};

/// Throws std::invalid_argument on an empty list or mismatched dims.
UpbReport verify_upb(const Dims& dims, std::span<const ProductVector<Rational>> vectors,
                     const CheckOptions& options);

}  // namespace ces
