#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bcclab/prob.hpp"

namespace bcclab {

inline constexpr std::uint64_t kTypeClassGuard = std::uint64_t{1} << 22;

// Empirical count vector of a length-n sequence.
struct TypeSpec {
  std::vector<int> counts;
  int n = 0;

  std::size_t alphabet() const { return counts.size(); }
  Dist empirical() const;
  bool operator==(const TypeSpec&) const = default;
};

// Integer count matrix of a pair sequence (u^n, v^n); row sums are the
// u-type, so rows index the conditioning alphabet.
struct JointType {
  std::vector<std::vector<int>> counts;
  int n = 0;

  std::size_t rows() const { return counts.size(); }
  std::size_t cols() const { return counts[0].size(); }
  TypeSpec row_type() const;   // type of u^n
  TypeSpec col_type() const;   // type of v^n
  Channel conditional() const; // Q_{V|U}; zero rows become uniform placeholders
  JointDist joint() const;
};

// Conditional count matrix with row sums equal to the base type: one element
// of the family of conditional types compatible with that input type.
struct VShell {
  std::vector<std::vector<int>> counts;
  TypeSpec base;

  // Number of output sequences in the shell fiber of any fixed input
  // sequence of the base type.
  std::uint64_t fiber_size() const;
  bool operator==(const VShell&) const = default;
};

struct ShellComponent {
  double weight;
  VShell shell;
};

struct ShellDecomposition {
  std::vector<ShellComponent> components;
  TypeSpec base;
};

struct BoundCheckRecord {
  bool ok = false;
  double max_ratio = 0.0;        // bounded quantity / bound, must be <= 1
  std::uint64_t cases = 0;       // how many ensemble members were covered
  std::string detail;
};

TypeSpec type_of(const std::vector<int>& seq, std::size_t alphabet);
JointType joint_type_of(const std::vector<int>& u, const std::vector<int>& v,
                        std::size_t alpha_u, std::size_t alpha_v);

std::uint64_t multinomial(int n, const std::vector<int>& counts);
std::uint64_t type_class_size(const TypeSpec& t);
double log_type_class_size(const TypeSpec& t);

// Visit every sequence of type t in lexicographic order.
void for_each_in_type_class(const TypeSpec& t,
                            const std::function<void(const std::vector<int>&)>& fn,
                            std::uint64_t guard = kTypeClassGuard);
std::vector<std::vector<int>> type_class(const TypeSpec& t,
                                         std::uint64_t guard = kTypeClassGuard);

// All types of length n over an alphabet of size k.
std::vector<TypeSpec> all_types(int n, std::size_t k);
// All joint types of length n over a rows x cols product alphabet.
std::vector<JointType> all_joint_types(int n, std::size_t rows, std::size_t cols);

// Checks 1/|T_n(t)| <= (n+1)^{|alphabet|} Q^n(u) for every u in the class,
// Q = t/n.  Enumerates the class when it fits the guard, otherwise evaluates
// the (u-independent) ratio in closed form.
BoundCheckRecord uniform_type_bound_check(const TypeSpec& t,
                                          std::uint64_t guard = kTypeClassGuard);

// Checks P_{V^n|U^n=u}(v) <= (n+1)^{|UxV|} Q^n_{V|U}(v|u) for the
// constant-composition ensemble of the joint type, where P is uniform on the
// conditional class.  Also checks the combined joint-law bound with constant
// (n+1)^{|U|^2 |V|}, which is what the leakage chain actually consumes.
BoundCheckRecord conditional_type_bound_check(const JointType& jt,
                                              std::uint64_t guard = kTypeClassGuard);

std::uint64_t count_vshells(const TypeSpec& t, std::size_t output_alphabet);
std::vector<VShell> enumerate_vshells(const TypeSpec& t, std::size_t output_alphabet,
                                      std::uint64_t guard = kTypeClassGuard);

// Convex decomposition of the memoryless extension w^n restricted to inputs
// of type t: weights are the w^n-masses of the shell fibers, each shell
// channel is uniform within its fiber.  Zero-weight shells are dropped.
ShellDecomposition decompose_over_vshells(const Channel& w, const TypeSpec& t,
                                          std::uint64_t guard = kTypeClassGuard);

// Probability the shell channel assigns to z^n given v^n of the base type:
// 1/fiber_size if the conditional type of (v,z) matches, else 0.
double shell_prob(const VShell& shell, const std::vector<int>& v,
                  const std::vector<int>& z, std::size_t output_alphabet);

// Largest-remainder rounding of a distribution to a type at blocklength n;
// ties broken by lexicographic index.
TypeSpec round_to_type(const Dist& q, int n);
JointType round_to_joint_type(const JointDist& q, int n);

}  // namespace bcclab
