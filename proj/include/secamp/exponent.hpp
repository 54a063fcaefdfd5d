#pragma once

#include <array>

#include "secamp/affine.hpp"
#include "secamp/prob.hpp"

namespace secamp {

enum class SolveMethod { closed_form, convex_descent, grid_multistart };

struct ExponentResult {
  double value = 0;  // bits
  std::vector<double> argmin;
  SolveMethod method = SolveMethod::grid_multistart;
  double certificate_gap = 0;  // grid-scan value minus refined value
  bool converged = true;
};

/// Error-exponent family for a fixed joint source pmf. The simplex grid of
/// (H(X1|X2), H(X2|X1), H(X1X2), D(.||P)) tuples is precomputed once, so
/// repeated rate evaluations are cheap scans plus a local polish.
class FExponentEvaluator {
 public:
  explicit FExponentEvaluator(const JointPmf& p, std::size_t grid_steps = 100);

  /// F_i(R|P) = min over the simplex of [R - H_i]^+ + D(.||P), where
  /// H_1 = H(X1|X2), H_2 = H(X2|X1), H_3 = H(X1 X2).
  ExponentResult f_i(int i, double rate) const;
  /// F(R1, R2 | P) = min_i F_i(R_i | P) with R_3 = R_1 + R_2.
  double f(const RatePoint& rates) const;

  const JointPmf& pmf() const { return p_; }

 private:
  JointPmf p_;
  std::size_t steps_;
  // one entry per grid pmf: {h1, h2, h3, d}
  std::vector<std::array<double, 4>> cloud_;
  std::vector<std::vector<double>> cloud_pmfs_;
};

/// Secrecy-exponent single-variable function for a fixed marginal pmf:
/// G(R|P_Z) = min over the simplex of [H(Z) - R]^+ + D(.||P_Z). Not convex,
/// so grid scan plus pattern-search refinement. grid_steps = 0 picks a
/// default based on the alphabet size.
class GExponentEvaluator {
 public:
  explicit GExponentEvaluator(std::vector<double> pz, std::size_t grid_steps = 0);

  ExponentResult g(double rate) const;

  const std::vector<double>& pmf() const { return pz_; }

 private:
  std::vector<double> pz_;
  std::size_t steps_;
  std::vector<std::pair<double, double>> cloud_;  // {h, d}
  std::vector<std::vector<double>> cloud_pmfs_;
};

ExponentResult exponent_F_i(int i, double rate, const JointPmf& p, std::size_t grid_steps = 100);
double exponent_F(const RatePoint& rates, const JointPmf& p, std::size_t grid_steps = 100);

ExponentResult exponent_G_single(double rate, const std::vector<double>& pz,
                                 std::size_t grid_steps = 0);
/// G(R1, R2 | P_K) = min{G(R1|P_K1), G(R2|P_K2), G(R1+R2|P_K1K2)}.
double exponent_G(const RatePoint& rates, const JointPmf& key_pmf, std::size_t grid_steps = 0);

struct RegionSpec {
  enum class Kind { slepian_wolf, key };
  Kind kind;
  JointPmf pmf;
  double t1, t2, t3;  // per-rate and sum-rate thresholds

  static RegionSpec slepian_wolf(const JointPmf& source_pmf);
  static RegionSpec key_region(const JointPmf& key_pmf);
};

/// Strict-inequality membership: R_sw needs every rate above its threshold,
/// R_key needs every rate below.
bool region_membership(const RatePoint& rates, const RegionSpec& region);

struct RegionPoint {
  RatePoint rates;
  bool in_sw = false;
  bool in_key = false;
};

struct RegionGrid {
  RegionSpec sw;
  RegionSpec key;
  std::vector<RegionPoint> points;  // row-major, r1 fastest
};

RegionGrid region_intersection_grid(const JointPmf& source_pmf, const JointPmf& key_pmf,
                                    std::size_t resolution, double r_lo = 0.0, double r_hi = 2.5);

/// Finite-length penalty terms of the main theorem:
/// delta1 = (1/n) log2[24 (n+1)^{3 d1 d2}],
/// delta2 = (1/n) log2[6 (log2 e) (log2 d1 d2) n (n+1)^{3 d1 d2}].
std::pair<double, double> delta_terms(std::size_t n, std::size_t d1, std::size_t d2);

struct Theorem1Bounds {
  double pe_bound = 1;    // min(1, 2^{-n(F - delta1)})
  double leak_bound = 1;  // min(1, 2^{-n(G - delta2)})
  double f = 0, g = 0;
  double delta1 = 0, delta2 = 0;
  bool vacuous = true;  // true when either bound clamps to 1
};

Theorem1Bounds theorem1_bounds(std::size_t n, const RatePoint& rates, const JointPmf& source_pmf,
                               const JointPmf& key_pmf, std::size_t grid_steps = 100);

/// G*(R1, R2) = min{log2(1/P_max), G(R1, R2 | P_K)}.
double g_star(const RatePoint& rates, const JointPmf& source_pmf, const JointPmf& key_pmf,
              std::size_t grid_steps = 0);

}  // namespace secamp
