#include "bcclab/prob.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace bcclab {

namespace {

void check_prob_vector(const std::vector<double>& p) {
  require(!p.empty(), "Dist: empty probability vector");
  double sum = 0.0;
  for (double x : p) {
    require(x >= 0.0, "Dist: negative entry");
    sum += x;
  }
  require(std::abs(sum - 1.0) <= kProbTol,
          "Dist: entries sum to " + std::to_string(sum) + ", not 1");
}

}  // namespace

Dist::Dist(std::vector<double> probs) : p_(std::move(probs)) {
  check_prob_vector(p_);
}

Dist Dist::uniform(std::size_t k) {
  require(k > 0, "Dist::uniform: k must be positive");
  return Dist(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Dist Dist::point_mass(std::size_t k, std::size_t at) {
  require(at < k, "Dist::point_mass: index out of range");
  std::vector<double> p(k, 0.0);
  p[at] = 1.0;
  return Dist(std::move(p));
}

Dist Dist::normalized(std::vector<double> weights) {
  double sum = 0.0;
  for (double x : weights) {
    require(x >= 0.0, "Dist::normalized: negative weight");
    sum += x;
  }
  require(sum > 0.0, "Dist::normalized: zero total weight");
  for (double& x : weights) x /= sum;
  return Dist(std::move(weights));
}

Channel::Channel(std::vector<Dist> rows) : rows_(std::move(rows)) {
  require(!rows_.empty(), "Channel: no rows");
  out_ = rows_[0].size();
  for (const Dist& r : rows_)
    require(r.size() == out_, "Channel: ragged rows");
}

Channel::Channel(std::size_t input, std::size_t output,
                 const std::vector<std::vector<double>>& rows)
    : out_(output) {
  require(rows.size() == input, "Channel: row count != input size");
  rows_.reserve(input);
  for (const auto& r : rows) {
    require(r.size() == output, "Channel: row length != output size");
    rows_.emplace_back(r);
  }
}

Channel Channel::identity(std::size_t k) {
  std::vector<Dist> rows;
  rows.reserve(k);
  for (std::size_t i = 0; i < k; ++i) rows.push_back(Dist::point_mass(k, i));
  return Channel(std::move(rows));
}

Channel Channel::bsc(double crossover) {
  require(crossover >= 0.0 && crossover <= 1.0, "bsc: crossover not in [0,1]");
  return Channel({Dist({1.0 - crossover, crossover}),
                  Dist({crossover, 1.0 - crossover})});
}

Channel Channel::constant(std::size_t input, Dist output) {
  return Channel(std::vector<Dist>(input, std::move(output)));
}

JointDist::JointDist(std::vector<std::vector<double>> probs)
    : p_(std::move(probs)) {
  require(!p_.empty() && !p_[0].empty(), "JointDist: empty");
  double sum = 0.0;
  for (const auto& row : p_) {
    require(row.size() == p_[0].size(), "JointDist: ragged rows");
    for (double x : row) {
      require(x >= 0.0, "JointDist: negative entry");
      sum += x;
    }
  }
  require(std::abs(sum - 1.0) <= kProbTol, "JointDist: entries do not sum to 1");
}

JointDist JointDist::from_marginals(const Dist& p_u, const Channel& p_v_given_u) {
  require(p_u.size() == p_v_given_u.input_size(),
          "JointDist: marginal/conditional size mismatch");
  std::vector<std::vector<double>> p(p_u.size(),
                                     std::vector<double>(p_v_given_u.output_size()));
  for (std::size_t u = 0; u < p_u.size(); ++u)
    for (std::size_t v = 0; v < p_v_given_u.output_size(); ++v)
      p[u][v] = p_u[u] * p_v_given_u.row(u)[v];
  return JointDist(std::move(p));
}

Dist JointDist::row_marginal() const {
  std::vector<double> m(rows(), 0.0);
  for (std::size_t u = 0; u < rows(); ++u)
    for (std::size_t v = 0; v < cols(); ++v) m[u] += p_[u][v];
  return Dist::normalized(std::move(m));
}

Dist JointDist::col_marginal() const {
  std::vector<double> m(cols(), 0.0);
  for (std::size_t u = 0; u < rows(); ++u)
    for (std::size_t v = 0; v < cols(); ++v) m[v] += p_[u][v];
  return Dist::normalized(std::move(m));
}

Channel JointDist::conditional() const {
  std::vector<Dist> rows_out;
  rows_out.reserve(rows());
  for (std::size_t u = 0; u < rows(); ++u) {
    double mass = std::accumulate(p_[u].begin(), p_[u].end(), 0.0);
    if (mass <= 0.0) {
      rows_out.push_back(Dist::uniform(cols()));
      continue;
    }
    std::vector<double> r(cols());
    for (std::size_t v = 0; v < cols(); ++v) r[v] = p_[u][v] / mass;
    rows_out.push_back(Dist::normalized(std::move(r)));
  }
  return Channel(std::move(rows_out));
}

double entropy(const Dist& p) {
  double h = 0.0;
  for (double x : p.probs())
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

Dist push_forward(const Dist& input, const Channel& ch) {
  require(input.size() == ch.input_size(), "push_forward: size mismatch");
  std::vector<double> out(ch.output_size(), 0.0);
  for (std::size_t x = 0; x < input.size(); ++x) {
    if (input[x] == 0.0) continue;
    for (std::size_t z = 0; z < ch.output_size(); ++z)
      out[z] += input[x] * ch.row(x)[z];
  }
  return Dist::normalized(std::move(out));
}

double mutual_info(const Dist& input, const Channel& ch) {
  require(input.size() == ch.input_size(), "mutual_info: size mismatch");
  double h_out = entropy(push_forward(input, ch));
  double h_cond = 0.0;
  for (std::size_t x = 0; x < input.size(); ++x)
    if (input[x] > 0.0) h_cond += input[x] * entropy(ch.row(x));
  double i = h_out - h_cond;
  return i > 0.0 ? i : 0.0;
}

double cond_mutual_info(const Dist& q_u, const Channel& q_v_given_u,
                        const Channel& ch) {
  require(q_u.size() == q_v_given_u.input_size(),
          "cond_mutual_info: U dimension mismatch");
  require(q_v_given_u.output_size() == ch.input_size(),
          "cond_mutual_info: V dimension mismatch");
  double i = 0.0;
  for (std::size_t u = 0; u < q_u.size(); ++u)
    if (q_u[u] > 0.0) i += q_u[u] * mutual_info(q_v_given_u.row(u), ch);
  return i;
}

double kl_divergence(const Dist& p, const Dist& q) {
  require(p.size() == q.size(), "kl_divergence: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log(p[i] / q[i]);
  }
  return d > 0.0 ? d : 0.0;
}

double conditional_kl(const Channel& v, const Channel& w, const Dist& q) {
  require(v.input_size() == w.input_size() && v.input_size() == q.size(),
          "conditional_kl: input size mismatch");
  require(v.output_size() == w.output_size(), "conditional_kl: output mismatch");
  double d = 0.0;
  for (std::size_t x = 0; x < q.size(); ++x) {
    if (q[x] == 0.0) continue;
    double dx = kl_divergence(v.row(x), w.row(x));
    if (std::isinf(dx)) return dx;
    d += q[x] * dx;
  }
  return d;
}

Channel compose(const Channel& first, const Channel& then) {
  require(first.output_size() == then.input_size(),
          "compose: inner alphabet mismatch");
  std::vector<Dist> rows;
  rows.reserve(first.input_size());
  for (std::size_t v = 0; v < first.input_size(); ++v) {
    std::vector<double> r(then.output_size(), 0.0);
    for (std::size_t x = 0; x < first.output_size(); ++x) {
      double fx = first.row(v)[x];
      if (fx == 0.0) continue;
      for (std::size_t z = 0; z < then.output_size(); ++z)
        r[z] += fx * then.row(x)[z];
    }
    rows.push_back(Dist::normalized(std::move(r)));
  }
  return Channel(std::move(rows));
}

Channel product_extension(const Channel& ch, int n, std::size_t max_entries) {
  require(n >= 1, "product_extension: n must be >= 1");
  std::size_t in_n = checked_pow(ch.input_size(), n, max_entries);
  std::size_t out_n = checked_pow(ch.output_size(), n, max_entries);
  require_budget(in_n <= max_entries / out_n,
                 "product_extension: table exceeds budget");
  std::vector<Dist> rows;
  rows.reserve(in_n);
  for (std::size_t xi = 0; xi < in_n; ++xi) {
    std::vector<int> x = index_tuple(xi, ch.input_size(), n);
    std::vector<double> r(out_n);
    for (std::size_t zi = 0; zi < out_n; ++zi) {
      std::vector<int> z = index_tuple(zi, ch.output_size(), n);
      double p = 1.0;
      for (int i = 0; i < n; ++i)
        p *= ch.row(static_cast<std::size_t>(x[static_cast<std::size_t>(i)]))
                 [static_cast<std::size_t>(z[static_cast<std::size_t>(i)])];
      r[zi] = p;
    }
    rows.push_back(Dist::normalized(std::move(r)));
  }
  return Channel(std::move(rows));
}

Dist product_dist(const Dist& p, int n, std::size_t max_entries) {
  require(n >= 1, "product_dist: n must be >= 1");
  std::size_t kn = checked_pow(p.size(), n, max_entries);
  std::vector<double> out(kn);
  for (std::size_t i = 0; i < kn; ++i) {
    std::vector<int> t = index_tuple(i, p.size(), n);
    double q = 1.0;
    for (int s : t) q *= p[static_cast<std::size_t>(s)];
    out[i] = q;
  }
  return Dist::normalized(std::move(out));
}

}  // namespace bcclab
