#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcclab {

// Thrown when an enumeration or table would exceed its configured budget.
// The CLI maps this to exit code 2, everything else invalid to exit code 1.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline void require_budget(bool cond, const std::string& msg) {
  if (!cond) throw budget_error(msg);
}

// Row-major index of an n-tuple over an alphabet of size k.
// First symbol is the most significant digit.
inline std::size_t tuple_index(const std::vector<int>& seq, std::size_t k) {
  std::size_t idx = 0;
  for (int s : seq) idx = idx * k + static_cast<std::size_t>(s);
  return idx;
}

inline std::vector<int> index_tuple(std::size_t idx, std::size_t k, int n) {
  std::vector<int> seq(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    seq[static_cast<std::size_t>(i)] = static_cast<int>(idx % k);
    idx /= k;
  }
  return seq;
}

// k^n with overflow guard; throws budget_error past the cap.
inline std::size_t checked_pow(std::size_t k, int n, std::size_t cap) {
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) {
    require_budget(k == 0 || r <= cap / k, "alphabet^n exceeds budget");
    r *= k;
  }
  require_budget(r <= cap, "alphabet^n exceeds budget");
  return r;
}

}  // namespace bcclab
