#include "bcclab/hash.hpp"

#include <bit>
#include <numeric>

namespace bcclab {

int gf2_rank(std::vector<std::uint32_t> rows) {
  int rank = 0;
  for (int col = 31; col >= 0; --col) {
    std::uint32_t bit = std::uint32_t{1} << col;
    std::size_t pivot = rows.size();
    for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size(); ++r)
      if (rows[r] & bit) {
        pivot = r;
        break;
      }
    if (pivot == rows.size()) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != static_cast<std::size_t>(rank) && (rows[r] & bit))
        rows[r] ^= rows[static_cast<std::size_t>(rank)];
    ++rank;
  }
  return rank;
}

LinearHash::LinearHash(int k, int m, std::vector<std::uint32_t> rows)
    : k_(k), m_(m), rows_(std::move(rows)) {
  require(1 <= m && m <= k && k <= 30, "LinearHash: need 1 <= m <= k <= 30");
  require(rows_.size() == static_cast<std::size_t>(m), "LinearHash: row count != m");
  const std::uint32_t mask = (k == 32) ? ~0u : ((std::uint32_t{1} << k) - 1);
  for (std::uint32_t r : rows_) require((r & ~mask) == 0, "LinearHash: row exceeds k bits");
  require(gf2_rank(rows_) == m, "LinearHash: matrix not full rank (not surjective)");

  // Row-reduce [F | T] so that R = T*F is in reduced row echelon form; pivot
  // columns then carry both the kernel basis and the particular solutions.
  std::vector<std::uint32_t> r = rows_;
  std::vector<std::uint32_t> t(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) t[static_cast<std::size_t>(i)] = std::uint32_t{1} << i;
  std::vector<int> pivot_col(static_cast<std::size_t>(m), -1);
  int rank = 0;
  for (int col = k - 1; col >= 0 && rank < m; --col) {
    std::uint32_t bit = std::uint32_t{1} << col;
    int pivot = -1;
    for (int row = rank; row < m; ++row)
      if (r[static_cast<std::size_t>(row)] & bit) {
        pivot = row;
        break;
      }
    if (pivot < 0) continue;
    std::swap(r[static_cast<std::size_t>(rank)], r[static_cast<std::size_t>(pivot)]);
    std::swap(t[static_cast<std::size_t>(rank)], t[static_cast<std::size_t>(pivot)]);
    for (int row = 0; row < m; ++row)
      if (row != rank && (r[static_cast<std::size_t>(row)] & bit)) {
        r[static_cast<std::size_t>(row)] ^= r[static_cast<std::size_t>(rank)];
        t[static_cast<std::size_t>(row)] ^= t[static_cast<std::size_t>(rank)];
      }
    pivot_col[static_cast<std::size_t>(rank)] = col;
    ++rank;
  }

  std::vector<bool> is_pivot(static_cast<std::size_t>(k), false);
  for (int p : pivot_col) is_pivot[static_cast<std::size_t>(p)] = true;

  kernel_.reserve(static_cast<std::size_t>(k - m));
  for (int f = 0; f < k; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::uint32_t v = std::uint32_t{1} << f;
    for (int row = 0; row < m; ++row)
      if (r[static_cast<std::size_t>(row)] & (std::uint32_t{1} << f))
        v |= std::uint32_t{1} << pivot_col[static_cast<std::size_t>(row)];
    kernel_.push_back(v);
  }

  solution_.assign(static_cast<std::size_t>(m), 0);
  for (int j = 0; j < m; ++j) {
    std::uint32_t x = 0;
    for (int row = 0; row < m; ++row)
      if (t[static_cast<std::size_t>(row)] & (std::uint32_t{1} << j))
        x |= std::uint32_t{1} << pivot_col[static_cast<std::size_t>(row)];
    solution_[static_cast<std::size_t>(j)] = x;
  }
}

LinearHash LinearHash::sample(int k, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample(k, m, rng);
}

LinearHash LinearHash::sample(int k, int m, std::mt19937_64& rng) {
  require(1 <= m && m <= k && k <= 30, "LinearHash::sample: need 1 <= m <= k <= 30");
  const std::uint32_t mask = (std::uint32_t{1} << k) - 1;
  for (;;) {
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(m));
    for (auto& r : rows) r = static_cast<std::uint32_t>(rng()) & mask;
    if (gf2_rank(rows) == m) return LinearHash(k, m, std::move(rows));
  }
}

std::uint32_t LinearHash::apply(std::uint32_t b) const {
  require(b < (std::uint64_t{1} << k_), "LinearHash::apply: index out of range");
  std::uint32_t s = 0;
  for (int i = 0; i < m_; ++i)
    s |= static_cast<std::uint32_t>(std::popcount(rows_[static_cast<std::size_t>(i)] & b) & 1)
         << i;
  return s;
}

std::uint32_t LinearHash::particular_solution(std::uint32_t s) const {
  require(s < (std::uint64_t{1} << m_), "LinearHash: secret index out of range");
  std::uint32_t x = 0;
  for (int j = 0; j < m_; ++j)
    if (s & (std::uint32_t{1} << j)) x ^= solution_[static_cast<std::size_t>(j)];
  return x;
}

std::uint32_t LinearHash::sample_preimage(std::uint32_t s, std::mt19937_64& rng) const {
  std::uint32_t x = particular_solution(s);
  if (!kernel_.empty()) {
    std::uint64_t pick = rng() & ((std::uint64_t{1} << kernel_.size()) - 1);
    for (std::size_t i = 0; i < kernel_.size(); ++i)
      if (pick & (std::uint64_t{1} << i)) x ^= kernel_[i];
  }
  return x;
}

Rational HashFamily::collision_probability(std::uint32_t b1, std::uint32_t b2) const {
  require(b1 != b2, "collision_probability: inputs must differ");
  require(b1 < (std::uint64_t{1} << k) && b2 < (std::uint64_t{1} << k),
          "collision_probability: index out of range");
  // Full-rank matrices killing a fixed nonzero difference d are exactly the
  // full-rank matrices with rows in the hyperplane d-perp; the count ratio
  // telescopes to (2^(k-m) - 1)/(2^k - 1).
  std::uint64_t num = (std::uint64_t{1} << (k - m)) - 1;
  std::uint64_t den = (std::uint64_t{1} << k) - 1;
  std::uint64_t g = std::gcd(std::max<std::uint64_t>(num, 1), den);
  if (num == 0) return Rational{0, 1};
  return Rational{num / g, den / g};
}

std::uint64_t HashFamily::size() const {
  require(k >= 1 && m >= 1 && m <= k && k * m <= 62, "HashFamily::size: too large");
  std::uint64_t s = 1;
  for (int i = 0; i < m; ++i) s *= (std::uint64_t{1} << k) - (std::uint64_t{1} << i);
  return s;
}

void HashFamily::for_each_member(const std::function<void(const LinearHash&)>& fn) const {
  require(1 <= m && m <= k, "HashFamily: need 1 <= m <= k");
  require_budget(static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(k) <= 26,
                 "HashFamily::for_each_member: 2^(m*k) candidates exceed budget");
  const std::uint64_t total = std::uint64_t{1} << (m * k);
  const std::uint32_t mask = (std::uint32_t{1} << k) - 1;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(m));
    std::uint64_t c = code;
    for (int i = 0; i < m; ++i) {
      rows[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(c) & mask;
      c >>= k;
    }
    if (gf2_rank(rows) != m) continue;
    fn(LinearHash(k, m, std::move(rows)));
  }
}

}  // namespace bcclab
