#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bcclab/common.hpp"

namespace bcclab {

// Reduced fraction; exact for the collision counts handled here.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Surjective linear map GF(2)^k -> GF(2)^m, m <= k, stored as m rows of
// k-bit masks.  Full row rank, so every fiber has exactly 2^(k-m) elements.
class LinearHash {
 public:
  LinearHash(int k, int m, std::vector<std::uint32_t> rows);

  // Uniform over full-rank m x k matrices; rejection sampling.
  static LinearHash sample(int k, int m, std::uint64_t seed);
  static LinearHash sample(int k, int m, std::mt19937_64& rng);

  int k() const { return k_; }
  int m() const { return m_; }
  const std::vector<std::uint32_t>& rows() const { return rows_; }
  std::uint64_t fiber_size() const { return std::uint64_t{1} << (k_ - m_); }

  // Matrix-vector product over GF(2); b indexes a k-bit vector.
  std::uint32_t apply(std::uint32_t b) const;

  // Uniform draw from f^{-1}(s): particular solution plus a uniform
  // element of the kernel.
  std::uint32_t sample_preimage(std::uint32_t s, std::mt19937_64& rng) const;
  // Deterministic particular solution with f(b) = s.
  std::uint32_t particular_solution(std::uint32_t s) const;
  const std::vector<std::uint32_t>& kernel_basis() const { return kernel_; }

 private:
  int k_, m_;
  std::vector<std::uint32_t> rows_;
  std::vector<std::uint32_t> kernel_;    // k-m basis vectors of the null space
  std::vector<std::uint32_t> solution_;  // column j: preimage of unit vector e_j
};

// Rank of a list of k-bit row vectors over GF(2).
int gf2_rank(std::vector<std::uint32_t> rows);

// The family of all surjective (full-rank) m x k binary matrices.
struct HashFamily {
  int k = 0;
  int m = 0;

  LinearHash sample(std::uint64_t seed) const { return LinearHash::sample(k, m, seed); }

  // Exact Pr[F(b1) = F(b2)] over the uniform family.  Depends only on the
  // difference b1 xor b2; equals (2^(k-m) - 1)/(2^k - 1), which the
  // enumeration oracle in the tests confirms.
  Rational collision_probability(std::uint32_t b1, std::uint32_t b2) const;

  // Visit every full-rank m x k matrix.  Guarded: 2^(m*k) candidates.
  void for_each_member(const std::function<void(const LinearHash&)>& fn) const;
  std::uint64_t size() const;  // number of full-rank matrices
};

}  // namespace bcclab
