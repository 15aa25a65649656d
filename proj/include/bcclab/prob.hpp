#pragma once

#include <cstddef>
#include <vector>

#include "bcclab/common.hpp"

namespace bcclab {

inline constexpr double kProbTol = 1e-12;

// Probability vector over a finite alphabet.  Validated at construction:
// entries non-negative, sum within 1e-12 of one.  Immutable afterwards.
class Dist {
 public:
  explicit Dist(std::vector<double> probs);

  static Dist uniform(std::size_t k);
  static Dist point_mass(std::size_t k, std::size_t at);
  // Explicit renormalization of non-negative weights; never done silently.
  static Dist normalized(std::vector<double> weights);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }

  bool operator==(const Dist&) const = default;

 private:
  std::vector<double> p_;
};

// Stochastic matrix, one Dist per input symbol.  row(x)[z] is W(z|x).
class Channel {
 public:
  explicit Channel(std::vector<Dist> rows);
  Channel(std::size_t input, std::size_t output,
          const std::vector<std::vector<double>>& rows);

  static Channel identity(std::size_t k);
  static Channel bsc(double crossover);
  static Channel constant(std::size_t input, Dist output);

  std::size_t input_size() const { return rows_.size(); }
  std::size_t output_size() const { return out_; }
  const Dist& row(std::size_t x) const { return rows_[x]; }

  bool operator==(const Channel&) const = default;

 private:
  std::vector<Dist> rows_;
  std::size_t out_;
};

// Joint distribution over a product alphabet, entries sum to one.
class JointDist {
 public:
  explicit JointDist(std::vector<std::vector<double>> probs);
  static JointDist from_marginals(const Dist& p_u, const Channel& p_v_given_u);

  std::size_t rows() const { return p_.size(); }
  std::size_t cols() const { return p_[0].size(); }
  double at(std::size_t u, std::size_t v) const { return p_[u][v]; }

  Dist row_marginal() const;
  Dist col_marginal() const;
  // Conditional of the column variable given the row variable; rows with zero
  // marginal get a uniform placeholder (they carry no probability anywhere).
  Channel conditional() const;

 private:
  std::vector<std::vector<double>> p_;
};

// --- information measures (all in nats) ---

double entropy(const Dist& p);

// Output marginal of `input` pushed through `ch`.
Dist push_forward(const Dist& input, const Channel& ch);

// I(X;Z) = H(Z) - H(Z|X) for X ~ input, Z | X ~ ch.
double mutual_info(const Dist& input, const Channel& ch);

// sum_u q_u(u) I(V;Z|U=u) along the chain U -> V -> Z.
double cond_mutual_info(const Dist& q_u, const Channel& q_v_given_u,
                        const Channel& ch);

// KL divergence D(p || q); +inf when p is not absolutely continuous wrt q.
double kl_divergence(const Dist& p, const Dist& q);

// D(V || W | Q) = sum_x Q(x) D(V(.|x) || W(.|x)).
double conditional_kl(const Channel& v, const Channel& w, const Dist& q);

// Apply `first`, then `then`:  result(z|v) = sum_x then(z|x) first(x|v).
Channel compose(const Channel& first, const Channel& then);

// n-th memoryless extension over tuple alphabets, row-major tuple indexing.
// Guard: the output table may not exceed `max_entries` entries.
Channel product_extension(const Channel& ch, int n,
                          std::size_t max_entries = std::size_t{1} << 26);

// n-fold product of a distribution over the tuple alphabet.
Dist product_dist(const Dist& p, int n,
                  std::size_t max_entries = std::size_t{1} << 26);

}  // namespace bcclab
