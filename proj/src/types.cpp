#include "bcclab/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bcclab {

namespace {

// Exact C(n,k) with overflow guard; intermediate products held in 128 bits.
std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    require_budget(r <= (unsigned __int128{1} << 63), "binomial overflow");
  }
  return static_cast<std::uint64_t>(r);
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// Visit all vectors of `parts` non-negative ints summing to `total`.
void for_each_composition(int total, std::size_t parts,
                          const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> c(parts, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int rest) {
    if (pos + 1 == parts) {
      c[pos] = rest;
      fn(c);
      return;
    }
    for (int v = 0; v <= rest; ++v) {
      c[pos] = v;
      rec(pos + 1, rest - v);
    }
  };
  if (parts == 0) return;
  rec(0, total);
}

}  // namespace

Dist TypeSpec::empirical() const {
  std::vector<double> p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    p[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  return Dist::normalized(std::move(p));
}

TypeSpec JointType::row_type() const {
  TypeSpec t;
  t.n = n;
  t.counts.resize(rows());
  for (std::size_t a = 0; a < rows(); ++a)
    t.counts[a] = std::accumulate(counts[a].begin(), counts[a].end(), 0);
  return t;
}

TypeSpec JointType::col_type() const {
  TypeSpec t;
  t.n = n;
  t.counts.assign(cols(), 0);
  for (std::size_t a = 0; a < rows(); ++a)
    for (std::size_t b = 0; b < cols(); ++b) t.counts[b] += counts[a][b];
  return t;
}

Channel JointType::conditional() const {
  std::vector<Dist> out;
  out.reserve(rows());
  for (std::size_t a = 0; a < rows(); ++a) {
    int na = std::accumulate(counts[a].begin(), counts[a].end(), 0);
    if (na == 0) {
      out.push_back(Dist::uniform(cols()));
      continue;
    }
    std::vector<double> r(cols());
    for (std::size_t b = 0; b < cols(); ++b)
      r[b] = static_cast<double>(counts[a][b]) / static_cast<double>(na);
    out.push_back(Dist::normalized(std::move(r)));
  }
  return Channel(std::move(out));
}

JointDist JointType::joint() const {
  std::vector<std::vector<double>> p(rows(), std::vector<double>(cols()));
  for (std::size_t a = 0; a < rows(); ++a)
    for (std::size_t b = 0; b < cols(); ++b)
      p[a][b] = static_cast<double>(counts[a][b]) / static_cast<double>(n);
  return JointDist(std::move(p));
}

std::uint64_t VShell::fiber_size() const {
  std::uint64_t f = 1;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    std::uint64_t m = multinomial(base.counts[a], counts[a]);
    require_budget(m == 0 || f <= (std::uint64_t{1} << 62) / std::max<std::uint64_t>(m, 1),
                   "VShell::fiber_size overflow");
    f *= m;
  }
  return f;
}

TypeSpec type_of(const std::vector<int>& seq, std::size_t alphabet) {
  TypeSpec t;
  t.n = static_cast<int>(seq.size());
  t.counts.assign(alphabet, 0);
  for (int s : seq) {
    require(s >= 0 && static_cast<std::size_t>(s) < alphabet,
            "type_of: symbol outside alphabet");
    ++t.counts[static_cast<std::size_t>(s)];
  }
  return t;
}

JointType joint_type_of(const std::vector<int>& u, const std::vector<int>& v,
                        std::size_t alpha_u, std::size_t alpha_v) {
  require(u.size() == v.size(), "joint_type_of: length mismatch");
  JointType jt;
  jt.n = static_cast<int>(u.size());
  jt.counts.assign(alpha_u, std::vector<int>(alpha_v, 0));
  for (std::size_t i = 0; i < u.size(); ++i) {
    require(u[i] >= 0 && static_cast<std::size_t>(u[i]) < alpha_u &&
                v[i] >= 0 && static_cast<std::size_t>(v[i]) < alpha_v,
            "joint_type_of: symbol outside alphabet");
    ++jt.counts[static_cast<std::size_t>(u[i])][static_cast<std::size_t>(v[i])];
  }
  return jt;
}

std::uint64_t multinomial(int n, const std::vector<int>& counts) {
  require(std::accumulate(counts.begin(), counts.end(), 0) == n,
          "multinomial: counts do not sum to n");
  std::uint64_t r = 1;
  int used = 0;
  for (int c : counts) {
    used += c;
    std::uint64_t b = binomial(used, c);
    require_budget(b == 0 || r <= (std::uint64_t{1} << 62) / std::max<std::uint64_t>(b, 1),
                   "multinomial overflow");
    r *= b;
  }
  return r;
}

std::uint64_t type_class_size(const TypeSpec& t) { return multinomial(t.n, t.counts); }

double log_type_class_size(const TypeSpec& t) {
  double l = log_factorial(t.n);
  for (int c : t.counts) l -= log_factorial(c);
  return l;
}

void for_each_in_type_class(const TypeSpec& t,
                            const std::function<void(const std::vector<int>&)>& fn,
                            std::uint64_t guard) {
  require_budget(type_class_size(t) <= guard, "type_class: size exceeds guard");
  std::vector<int> seq;
  seq.reserve(static_cast<std::size_t>(t.n));
  for (std::size_t a = 0; a < t.counts.size(); ++a)
    seq.insert(seq.end(), static_cast<std::size_t>(t.counts[a]), static_cast<int>(a));
  do {
    fn(seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
}

std::vector<std::vector<int>> type_class(const TypeSpec& t, std::uint64_t guard) {
  std::vector<std::vector<int>> out;
  for_each_in_type_class(t, [&](const std::vector<int>& s) { out.push_back(s); }, guard);
  return out;
}

std::vector<TypeSpec> all_types(int n, std::size_t k) {
  std::vector<TypeSpec> out;
  for_each_composition(n, k, [&](const std::vector<int>& c) {
    out.push_back(TypeSpec{c, n});
  });
  return out;
}

std::vector<JointType> all_joint_types(int n, std::size_t rows, std::size_t cols) {
  std::vector<JointType> out;
  for_each_composition(n, rows * cols, [&](const std::vector<int>& c) {
    JointType jt;
    jt.n = n;
    jt.counts.assign(rows, std::vector<int>(cols));
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t b = 0; b < cols; ++b) jt.counts[a][b] = c[a * cols + b];
    out.push_back(std::move(jt));
  });
  return out;
}

BoundCheckRecord uniform_type_bound_check(const TypeSpec& t, std::uint64_t guard) {
  const int n = t.n;
  const double log_bound_const =
      static_cast<double>(t.alphabet()) * std::log(static_cast<double>(n) + 1.0);
  // Q^n(u) is constant on the class: sum_a t_a ln(t_a/n).
  double log_qn = 0.0;
  for (int c : t.counts)
    if (c > 0) log_qn += c * std::log(static_cast<double>(c) / n);
  const double log_p = -log_type_class_size(t);

  BoundCheckRecord rec;
  std::uint64_t size = type_class_size(t);
  if (size <= guard) {
    // Enumerate and evaluate per-sequence, confirming the constant ratio.
    double max_log_ratio = -std::numeric_limits<double>::infinity();
    for_each_in_type_class(
        t,
        [&](const std::vector<int>& u) {
          double lq = 0.0;
          for (int s : u)
            lq += std::log(static_cast<double>(t.counts[static_cast<std::size_t>(s)]) / n);
          max_log_ratio = std::max(max_log_ratio, log_p - log_bound_const - lq);
          ++rec.cases;
        },
        guard);
    rec.max_ratio = std::exp(max_log_ratio);
  } else {
    rec.cases = 1;
    rec.max_ratio = std::exp(log_p - log_bound_const - log_qn);
  }
  rec.ok = rec.max_ratio <= 1.0 + 1e-12;
  rec.detail = "uniform-type bound, class size " + std::to_string(size);
  return rec;
}

BoundCheckRecord conditional_type_bound_check(const JointType& jt, std::uint64_t guard) {
  const int n = jt.n;
  const TypeSpec t_u = jt.row_type();

  // P_{V^n|U^n=u} is uniform on the conditional class; its size and
  // Q^n_{V|U}(v|u) depend only on the joint type, so the ratio is constant
  // over the ensemble and can be evaluated in closed form.
  double log_fiber = 0.0;
  double log_qn_cond = 0.0;  // sum_{a,b} c_ab ln(c_ab/n_a)
  double log_qn_joint = 0.0; // sum_{a,b} c_ab ln(c_ab/n)
  for (std::size_t a = 0; a < jt.rows(); ++a) {
    int na = t_u.counts[a];
    if (na == 0) continue;
    log_fiber += log_factorial(na);
    for (std::size_t b = 0; b < jt.cols(); ++b) {
      int c = jt.counts[a][b];
      if (c == 0) continue;
      log_fiber -= log_factorial(c);
      log_qn_cond += c * std::log(static_cast<double>(c) / na);
      log_qn_joint += c * std::log(static_cast<double>(c) / n);
    }
  }

  const double log_np1 = std::log(static_cast<double>(n) + 1.0);
  const double cells = static_cast<double>(jt.rows() * jt.cols());
  const double printed = static_cast<double>(jt.rows() * jt.rows() * jt.cols());

  // Conditional bound with constant (n+1)^{|UxV|}.
  double log_ratio_cond = -log_fiber - cells * log_np1 - log_qn_cond;
  // Joint-law bound with the printed constant (n+1)^{|U|^2 |V|}.
  double log_p_joint = -log_type_class_size(t_u) - log_fiber;
  double log_ratio_joint = log_p_joint - printed * log_np1 - log_qn_joint;

  BoundCheckRecord rec;
  rec.max_ratio = std::exp(std::max(log_ratio_cond, log_ratio_joint));
  rec.ok = rec.max_ratio <= 1.0 + 1e-12;
  long double members =
      std::exp(static_cast<long double>(log_type_class_size(t_u)) +
               static_cast<long double>(log_fiber));
  rec.cases = members < 1e18L ? static_cast<std::uint64_t>(members + 0.5L)
                              : std::numeric_limits<std::uint64_t>::max();
  rec.detail = "conditional-type bound (and joint form), closed-form ratio";
  (void)guard;
  return rec;
}

std::uint64_t count_vshells(const TypeSpec& t, std::size_t output_alphabet) {
  std::uint64_t c = 1;
  for (int ta : t.counts) {
    std::uint64_t per_row = binomial(ta + static_cast<int>(output_alphabet) - 1,
                                     static_cast<int>(output_alphabet) - 1);
    require_budget(c <= (std::uint64_t{1} << 62) / std::max<std::uint64_t>(per_row, 1),
                   "count_vshells overflow");
    c *= per_row;
  }
  return c;
}

std::vector<VShell> enumerate_vshells(const TypeSpec& t, std::size_t output_alphabet,
                                      std::uint64_t guard) {
  require_budget(count_vshells(t, output_alphabet) <= guard,
                 "enumerate_vshells: count exceeds guard");
  // Per-row compositions, combined by an odometer over rows.
  std::vector<std::vector<std::vector<int>>> per_row(t.alphabet());
  for (std::size_t a = 0; a < t.alphabet(); ++a)
    for_each_composition(t.counts[a], output_alphabet,
                         [&](const std::vector<int>& c) { per_row[a].push_back(c); });

  std::vector<VShell> out;
  std::vector<std::size_t> pick(t.alphabet(), 0);
  for (;;) {
    VShell s;
    s.base = t;
    s.counts.reserve(t.alphabet());
    for (std::size_t a = 0; a < t.alphabet(); ++a) s.counts.push_back(per_row[a][pick[a]]);
    out.push_back(std::move(s));
    std::size_t pos = t.alphabet();
    while (pos > 0) {
      --pos;
      if (++pick[pos] < per_row[pos].size()) break;
      pick[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

ShellDecomposition decompose_over_vshells(const Channel& w, const TypeSpec& t,
                                          std::uint64_t guard) {
  require(w.input_size() == t.alphabet(),
          "decompose_over_vshells: channel input != type alphabet");
  ShellDecomposition dec;
  dec.base = t;
  for (VShell& s : enumerate_vshells(t, w.output_size(), guard)) {
    // Weight = w^n-mass of the shell fiber: fiber count times the common
    // per-sequence probability prod_{a,b} W(b|a)^{c_ab}.
    double log_w = 0.0;
    bool zero = false;
    for (std::size_t a = 0; a < s.counts.size() && !zero; ++a)
      for (std::size_t b = 0; b < s.counts[a].size() && !zero; ++b) {
        int c = s.counts[a][b];
        if (c == 0) continue;
        double p = w.row(a)[b];
        if (p == 0.0) zero = true;
        else log_w += c * std::log(p);
      }
    if (zero) continue;
    double weight = static_cast<double>(s.fiber_size()) * std::exp(log_w);
    if (weight <= 0.0) continue;
    dec.components.push_back({weight, std::move(s)});
  }
  return dec;
}

double shell_prob(const VShell& shell, const std::vector<int>& v,
                  const std::vector<int>& z, std::size_t output_alphabet) {
  JointType jt = joint_type_of(v, z, shell.base.alphabet(), output_alphabet);
  if (jt.counts != shell.counts) return 0.0;
  return 1.0 / static_cast<double>(shell.fiber_size());
}

namespace {

std::vector<int> largest_remainder(const std::vector<double>& q, int n) {
  std::vector<int> counts(q.size());
  std::vector<std::pair<double, std::size_t>> rem;
  int assigned = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double exact = q[i] * n;
    counts[i] = static_cast<int>(std::floor(exact + 1e-12));
    assigned += counts[i];
    rem.emplace_back(exact - counts[i], i);
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& x, const auto& y) {
    return x.first > y.first;  // ties keep lexicographic index order
  });
  for (int r = 0; r < n - assigned; ++r) ++counts[rem[static_cast<std::size_t>(r)].second];
  return counts;
}

}  // namespace

TypeSpec round_to_type(const Dist& q, int n) {
  require(n >= 1, "round_to_type: n must be positive");
  return TypeSpec{largest_remainder(q.probs(), n), n};
}

JointType round_to_joint_type(const JointDist& q, int n) {
  require(n >= 1, "round_to_joint_type: n must be positive");
  std::vector<double> flat;
  flat.reserve(q.rows() * q.cols());
  for (std::size_t a = 0; a < q.rows(); ++a)
    for (std::size_t b = 0; b < q.cols(); ++b) flat.push_back(q.at(a, b));
  std::vector<int> c = largest_remainder(flat, n);
  JointType jt;
  jt.n = n;
  jt.counts.assign(q.rows(), std::vector<int>(q.cols()));
  for (std::size_t a = 0; a < q.rows(); ++a)
    for (std::size_t b = 0; b < q.cols(); ++b) jt.counts[a][b] = c[a * q.cols() + b];
  return jt;
}

}  // namespace bcclab
