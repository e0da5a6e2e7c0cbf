#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ces {

/// Local dimensions (d_1, ..., d_k) of H = H_1 ⊗ ... ⊗ H_k.
///
/// Basis vectors e_{i_1} ⊗ ... ⊗ e_{i_k} are ordered lexicographically on
/// (i_1, ..., i_k), i.e. row-major with the first factor most significant.
/// Every vector and file in this library uses that order.
class Dims {
 public:
  /// Throws std::invalid_argument unless k >= 2 and every d_r >= 2.
  explicit Dims(std::vector<int> local);

  /// Parses a comma separated list such as "2,3,4".
  static Dims parse(std::string_view text);

  int k() const { return static_cast<int>(local_.size()); }
  int operator[](int r) const { return local_[static_cast<std::size_t>(r)]; }
  const std::vector<int>& local() const { return local_; }

  /// N = Σ (d_r - 1), the top level.
  int N() const { return top_level_; }
  /// Π d_r.
  std::int64_t total() const { return total_; }

  std::int64_t flat_index(std::span<const int> index) const;
  std::vector<int> multi_index(std::int64_t flat) const;
  int level_of(std::int64_t flat) const;

  std::string to_string() const;

  bool operator==(const Dims&) const = default;

 private:
  std::vector<int> local_;
  int top_level_ = 0;
  std::int64_t total_ = 1;
};

struct MultiIndex {
  std::vector<int> i;
  int level = 0;

  auto operator<=>(const MultiIndex& other) const { return i <=> other.i; }
  bool operator==(const MultiIndex& other) const { return i == other.i; }
};

/// All multi-indices with Σ i_r = n, in lexicographic order.
/// Throws std::out_of_range if n is outside [0, N].
std::vector<MultiIndex> enumerate_level(const Dims& dims, int n);

/// a_n: the coefficient of x^n in Π_r (1 + x + ... + x^{d_r - 1}).
/// Zero outside [0, N].
std::int64_t level_count(const Dims& dims, int n);

/// (a_0, ..., a_N) by exact polynomial convolution.
std::vector<std::int64_t> level_counts(const Dims& dims);

/// Closed forms for a_n: the three-branch formula when k = 2 and the binomial
/// C(k, n) when every d_r = 2. std::nullopt when neither applies.
std::optional<std::int64_t> level_count_closed_form(const Dims& dims, int n);

}  // namespace ces
