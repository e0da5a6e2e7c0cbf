#include "ces/graded_index.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace ces {

namespace {

// Dense vectors over H are the only representation, so anything past this is
// not a desk-scale problem.
constexpr std::int64_t kMaxTotal = std::int64_t{1} << 32;

}  // namespace

Dims::Dims(std::vector<int> local) : local_(std::move(local)) {
  if (local_.size() < 2) {
    throw std::invalid_argument("dims: need at least two tensor factors");
  }
  for (int d : local_) {
    if (d < 2) {
      throw std::invalid_argument("dims: every local dimension must be >= 2");
    }
    top_level_ += d - 1;
    if (total_ > kMaxTotal / d) {
      throw std::invalid_argument("dims: total dimension too large");
    }
    total_ *= d;
  }
}

Dims Dims::parse(std::string_view text) {
  std::vector<int> local;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int value = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
      throw std::invalid_argument("dims: cannot parse '" + std::string(text) + "'");
    }
    local.push_back(value);
    pos = comma + 1;
  }
  return Dims(std::move(local));
}

std::int64_t Dims::flat_index(std::span<const int> index) const {
  if (index.size() != local_.size()) {
    throw std::invalid_argument("flat_index: index has wrong arity");
  }
  std::int64_t flat = 0;
  for (std::size_t r = 0; r < local_.size(); ++r) {
    if (index[r] < 0 || index[r] >= local_[r]) {
      throw std::out_of_range("flat_index: component out of range");
    }
    flat = flat * local_[r] + index[r];
  }
  return flat;
}

std::vector<int> Dims::multi_index(std::int64_t flat) const {
  if (flat < 0 || flat >= total_) {
    throw std::out_of_range("multi_index: flat index out of range");
  }
  std::vector<int> index(local_.size());
  for (std::size_t r = local_.size(); r-- > 0;) {
    index[r] = static_cast<int>(flat % local_[r]);
    flat /= local_[r];
  }
  return index;
}

int Dims::level_of(std::int64_t flat) const {
  int level = 0;
  for (int i : multi_index(flat)) level += i;
  return level;
}

std::string Dims::to_string() const {
  std::string out;
  for (std::size_t r = 0; r < local_.size(); ++r) {
    if (r) out += ',';
    out += std::to_string(local_[r]);
  }
  return out;
}

std::vector<MultiIndex> enumerate_level(const Dims& dims, int n) {
  if (n < 0 || n > dims.N()) {
    throw std::out_of_range("enumerate_level: level " + std::to_string(n) +
                            " outside [0, " + std::to_string(dims.N()) + "]");
  }
  const int k = dims.k();
  // max_tail[r] = largest sum reachable by positions r..k-1
  std::vector<int> max_tail(static_cast<std::size_t>(k) + 1, 0);
  for (int r = k - 1; r >= 0; --r) max_tail[r] = max_tail[r + 1] + dims[r] - 1;

  std::vector<MultiIndex> out;
  std::vector<int> index(static_cast<std::size_t>(k), 0);
  // Depth-first in increasing digit order yields lexicographic order.
  auto recurse = [&](auto&& self, int r, int remaining) -> void {
    if (r == k) {
      if (remaining == 0) out.push_back({index, n});
      return;
    }
    const int lo = std::max(0, remaining - max_tail[r + 1]);
    const int hi = std::min(dims[r] - 1, remaining);
    for (int v = lo; v <= hi; ++v) {
      index[r] = v;
      self(self, r + 1, remaining - v);
    }
  };
  recurse(recurse, 0, n);
  return out;
}

std::vector<std::int64_t> level_counts(const Dims& dims) {
  std::vector<std::int64_t> poly{1};
  for (int d : dims.local()) {
    std::vector<std::int64_t> next(poly.size() + static_cast<std::size_t>(d) - 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      for (int j = 0; j < d; ++j) next[i + j] += poly[i];
    }
    poly = std::move(next);
  }
  return poly;
}

std::int64_t level_count(const Dims& dims, int n) {
  if (n < 0 || n > dims.N()) return 0;
  return level_counts(dims)[static_cast<std::size_t>(n)];
}

std::optional<std::int64_t> level_count_closed_form(const Dims& dims, int n) {
  if (dims.k() == 2) {
    const std::int64_t d1 = std::min(dims[0], dims[1]);
    const std::int64_t d2 = std::max(dims[0], dims[1]);
    if (n < 0 || n > d1 + d2 - 2) return 0;
    if (n <= d1 - 1) return n + 1;
    if (n <= d2 - 1) return d1;
    return d1 + d2 - (n + 1);
  }
  const bool qubits = std::all_of(dims.local().begin(), dims.local().end(),
                                  [](int d) { return d == 2; });
  if (!qubits) return std::nullopt;
  const int k = dims.k();
  if (n < 0 || n > k) return 0;
  std::int64_t binom = 1;
  for (int i = 1; i <= n; ++i) binom = binom * (k - n + i) / i;
  return binom;
}

}  // namespace ces
