#pragma once

#include <vector>

#include "bcclab/prob.hpp"

namespace bcclab {

// log sum_{z,l} P(l) W(z|l)^{1+rho} P_Z(z)^{-rho}; zero-mass terms skipped.
// rho in (0,1].
double psi(double rho, const Channel& w, const Dist& p);

// log sum_z ( sum_l P(l) W(z|l)^{1/(1-rho)} )^{1-rho} for rho in (0,1);
// at rho = 1 the standard limit log sum_z max_{l in supp P} W(z|l).
double phi(double rho, const Channel& w, const Dist& p);

// Averaged variant: log sum_u Q_U(u) sum_z ( sum_v Q_{V|U}(v|u) W(z|v)^{1/(1-rho)} )^{1-rho}.
double phi_avg(double rho, const Channel& w, const Channel& q_v_given_u,
               const Dist& q_u);

struct ScalingCheckRecord {
  bool ok = false;
  double lhs = 0.0;   // exp(phi(rho, w, p))
  double rhs = 0.0;   // c1 * exp(phi(rho, w, p_tilde))
  double slack = 0.0; // rhs - lhs
};

// Concavity-based scaling bound: p <= c1 * p_tilde entrywise (c1 >= 1)
// implies exp(phi(p)) <= c1 * exp(phi(p_tilde)).
ScalingCheckRecord scaling_inequality_check(double rho, const Channel& w,
                                            const Dist& p, const Dist& p_tilde,
                                            double c1);

// Query for the leakage exponents.  w_z is Eve's effective channel from V
// (compose with the prefix channel beforehand if one is used).
struct ExponentQuery {
  Channel w_z;
  Dist q_u;
  Channel q_v_given_u;
  double r_s = 0.0;  // secret-message rate, nats/symbol
  double r_p = 0.0;  // private-message rate, nats/symbol
  double r_c = 0.0;  // common-message rate, nats/symbol

  void validate() const;
};

// log eps_{1,rho} = rho (R_s - R_p) + phi_avg(rho, w_z, Q_{V|U}, Q_U).
double log_epsilon1(double rho, const ExponentQuery& q);
double epsilon_rho_single_letter(double rho, const ExponentQuery& q);
// n-fold value computed on materialized product channel and inputs; equals
// epsilon_1^n for memoryless channels, which the tests verify.
double epsilon_n_rho_product(int n, double rho, const ExponentQuery& q,
                             std::size_t max_entries = std::size_t{1} << 26);

struct SupResult {
  double value = 0.0;     // clamped below at 0
  double rho_star = 0.0;  // maximizer of the unclamped objective in (0,1]
};

// sup_{0 < rho <= 1} [ rho (R_p - R_s) - phi_avg(rho) ], clamped at 0.
// Golden-section on the concave objective, dense-grid fallback.
SupResult f_i_plus(const ExponentQuery& q);

// I(V;Z|U) - R_p + R_s, reported signed.
double f_i_minus(const ExponentQuery& q);

// Constant-composition random-coding exponent
//   min over channels Vbar of  D(Vbar || W | Q) + [I(Q, Vbar) - R]_+ .
// Grid search over stochastic matrices with one refinement stage.
double cc_random_coding_exponent(double rate, const Dist& q, const Channel& w,
                                 int resolution = 64);

struct KsExponents {
  double f_s = 0.0;
  double f_c = 0.0;
  bool stand_in = true;  // not the cited decoder-specific exponent formulas
};

// Stand-in error exponents: satellite messages over Bob's effective channel
// at rate R_p, cloud messages over Eve's effective channel at rate R_c.
KsExponents ks_error_exponents(const ExponentQuery& q, const Channel& w_y);

struct ExponentReport {
  double f_s = 0.0;
  double f_c = 0.0;
  double f_i_plus = 0.0;
  double f_i_minus = 0.0;
  double rho_star = 0.0;
  bool error_exponents_stand_in = true;
};

ExponentReport evaluate_exponents(const ExponentQuery& q, const Channel& w_y);

// Helper shared by the sweep output: the objective of f_i_plus at one rho.
double f_i_plus_objective(double rho, const ExponentQuery& q);

double log_sum_exp(const std::vector<double>& terms);

}  // namespace bcclab
