#include "secamp/exponent.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace secamp {

namespace {

constexpr double kLog2E = 1.4426950408889634;

double pos(double v) { return v > 0 ? v : 0.0; }

// Visits every pmf on the (d-1)-simplex whose entries are multiples of
// 1/steps, i.e. all compositions of `steps` into d cells.
void for_each_grid_pmf(std::size_t d, std::size_t steps,
                       const std::function<void(const std::vector<double>&)>& f) {
  std::vector<uint32_t> counts(d, 0);
  std::vector<double> q(d, 0.0);
  const double inv = 1.0 / double(steps);
  std::function<void(std::size_t, uint32_t)> rec = [&](std::size_t cell, uint32_t left) {
    if (cell + 1 == d) {
      counts[cell] = left;
      for (std::size_t i = 0; i < d; ++i) q[i] = counts[i] * inv;
      f(q);
      return;
    }
    for (uint32_t c = 0; c <= left; ++c) {
      counts[cell] = c;
      rec(cell + 1, left - c);
    }
  };
  rec(0, uint32_t(steps));
}

double kl_vec(const std::vector<double>& q, const std::vector<double>& p) {
  double d = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] <= 0) continue;
    if (p[i] <= 0) return kInfBits;
    d += q[i] * std::log2(q[i] / p[i]);
  }
  return std::max(0.0, d);
}

// Local polish on the simplex: try moving mass `step` between every ordered
// cell pair, keep the best strict improvement, halve the step when stuck.
// Works for the convex F objectives and the nonconvex G objective alike;
// the grid scan supplies a start close to the global basin.
double pattern_search(const std::function<double(const std::vector<double>&)>& obj,
                      std::vector<double>& q, double step, double min_step) {
  const std::size_t d = q.size();
  double best = obj(q);
  while (step > min_step) {
    bool improved = false;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (i == j || q[j] <= 0) continue;
        const double delta = std::min(step, q[j]);
        std::vector<double> cand = q;
        cand[j] -= delta;
        cand[i] += delta;
        if (cand[j] < 1e-15) cand[j] = 0;
        const double v = obj(cand);
        if (v < best - 1e-15) {
          best = v;
          q = std::move(cand);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

struct JointStats {
  double h1, h2, h3;  // H(X1|X2), H(X2|X1), H(X1X2)
};

JointStats joint_stats(const std::vector<double>& q, std::size_t d1, std::size_t d2) {
  std::vector<double> m1(d1, 0.0), m2(d2, 0.0);
  double h = 0;
  for (std::size_t a = 0; a < d1; ++a)
    for (std::size_t b = 0; b < d2; ++b) {
      const double v = q[a * d2 + b];
      m1[a] += v;
      m2[b] += v;
      if (v > 0) h -= v * std::log2(v);
    }
  return {h - entropy_of(m2), h - entropy_of(m1), h};
}

}  // namespace

FExponentEvaluator::FExponentEvaluator(const JointPmf& p, std::size_t grid_steps)
    : p_(p), steps_(grid_steps) {
  const std::size_t d1 = p.dim1(), d2 = p.dim2(), d = d1 * d2;
  if (d > 16) throw std::invalid_argument("FExponentEvaluator: alphabet too large for grid cert");
  if (steps_ < 2) throw std::invalid_argument("FExponentEvaluator: grid_steps too small");
  for_each_grid_pmf(d, steps_, [&](const std::vector<double>& q) {
    const double dkl = kl_vec(q, p.flat());
    if (std::isinf(dkl)) return;
    const JointStats s = joint_stats(q, d1, d2);
    cloud_.push_back({s.h1, s.h2, s.h3, dkl});
    cloud_pmfs_.push_back(q);
  });
}

ExponentResult FExponentEvaluator::f_i(int i, double rate) const {
  if (i < 1 || i > 3) throw std::invalid_argument("f_i: i must be 1, 2, or 3");
  if (rate <= 0) throw std::invalid_argument("f_i: rate must be positive");
  const std::size_t d1 = p_.dim1(), d2 = p_.dim2();

  double grid_best = kInfBits;
  std::size_t best_idx = 0;
  for (std::size_t k = 0; k < cloud_.size(); ++k) {
    const double v = pos(rate - cloud_[k][std::size_t(i - 1)]) + cloud_[k][3];
    if (v < grid_best) {
      grid_best = v;
      best_idx = k;
    }
  }

  auto obj = [&](const std::vector<double>& q) {
    const double dkl = kl_vec(q, p_.flat());
    if (std::isinf(dkl)) return kInfBits;
    const JointStats s = joint_stats(q, d1, d2);
    const double h = (i == 1) ? s.h1 : (i == 2) ? s.h2 : s.h3;
    return pos(rate - h) + dkl;
  };

  ExponentResult res;
  res.method = SolveMethod::convex_descent;
  res.argmin = cloud_pmfs_[best_idx];
  res.value = pattern_search(obj, res.argmin, 1.0 / double(steps_), 1e-8);
  res.value = std::max(0.0, res.value);
  res.certificate_gap = grid_best - res.value;
  return res;
}

double FExponentEvaluator::f(const RatePoint& rates) const {
  const double f1 = f_i(1, rates.r1).value;
  const double f2 = f_i(2, rates.r2).value;
  const double f3 = f_i(3, rates.r1 + rates.r2).value;
  return std::min({f1, f2, f3});
}

GExponentEvaluator::GExponentEvaluator(std::vector<double> pz, std::size_t grid_steps)
    : pz_(std::move(pz)), steps_(grid_steps) {
  const std::size_t d = pz_.size();
  if (d < 2 || d > 16) throw std::invalid_argument("GExponentEvaluator: bad alphabet size");
  double sum = 0;
  for (double v : pz_) {
    if (v < 0) throw std::invalid_argument("GExponentEvaluator: negative probability");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw std::invalid_argument("GExponentEvaluator: pmf must sum to 1");
  if (steps_ == 0) steps_ = (d <= 2) ? 2000 : (d == 3) ? 300 : 100;
  for_each_grid_pmf(d, steps_, [&](const std::vector<double>& q) {
    const double dkl = kl_vec(q, pz_);
    if (std::isinf(dkl)) return;
    cloud_.push_back({entropy_of(q), dkl});
    cloud_pmfs_.push_back(q);
  });
}

ExponentResult GExponentEvaluator::g(double rate) const {
  if (rate <= 0) throw std::invalid_argument("g: rate must be positive");

  double grid_best = kInfBits;
  std::size_t best_idx = 0;
  for (std::size_t k = 0; k < cloud_.size(); ++k) {
    const double v = pos(cloud_[k].first - rate) + cloud_[k].second;
    if (v < grid_best) {
      grid_best = v;
      best_idx = k;
    }
  }

  auto obj = [&](const std::vector<double>& q) {
    const double dkl = kl_vec(q, pz_);
    if (std::isinf(dkl)) return kInfBits;
    return pos(entropy_of(q) - rate) + dkl;
  };

  ExponentResult res;
  res.method = SolveMethod::grid_multistart;
  res.argmin = cloud_pmfs_[best_idx];
  res.value = pattern_search(obj, res.argmin, 1.0 / double(steps_), 1e-8);
  res.value = std::max(0.0, res.value);
  res.certificate_gap = grid_best - res.value;
  return res;
}

ExponentResult exponent_F_i(int i, double rate, const JointPmf& p, std::size_t grid_steps) {
  return FExponentEvaluator(p, grid_steps).f_i(i, rate);
}

double exponent_F(const RatePoint& rates, const JointPmf& p, std::size_t grid_steps) {
  return FExponentEvaluator(p, grid_steps).f(rates);
}

ExponentResult exponent_G_single(double rate, const std::vector<double>& pz,
                                 std::size_t grid_steps) {
  return GExponentEvaluator(pz, grid_steps).g(rate);
}

double exponent_G(const RatePoint& rates, const JointPmf& key_pmf, std::size_t grid_steps) {
  const double g1 = GExponentEvaluator(key_pmf.marginal1(), grid_steps).g(rates.r1).value;
  const double g2 = GExponentEvaluator(key_pmf.marginal2(), grid_steps).g(rates.r2).value;
  const double g3 = GExponentEvaluator(key_pmf.flat(), grid_steps).g(rates.r1 + rates.r2).value;
  return std::min({g1, g2, g3});
}

RegionSpec RegionSpec::slepian_wolf(const JointPmf& source_pmf) {
  return {Kind::slepian_wolf, source_pmf, conditional_entropy(source_pmf, 2),
          conditional_entropy(source_pmf, 1), entropy(source_pmf)};
}

RegionSpec RegionSpec::key_region(const JointPmf& key_pmf) {
  return {Kind::key, key_pmf, entropy_of(key_pmf.marginal1()), entropy_of(key_pmf.marginal2()),
          entropy(key_pmf)};
}

bool region_membership(const RatePoint& rates, const RegionSpec& region) {
  if (region.kind == RegionSpec::Kind::slepian_wolf)
    return rates.r1 > region.t1 && rates.r2 > region.t2 && rates.r1 + rates.r2 > region.t3;
  return rates.r1 < region.t1 && rates.r2 < region.t2 && rates.r1 + rates.r2 < region.t3;
}

RegionGrid region_intersection_grid(const JointPmf& source_pmf, const JointPmf& key_pmf,
                                    std::size_t resolution, double r_lo, double r_hi) {
  if (resolution < 2) throw std::invalid_argument("region_intersection_grid: resolution must be >= 2");
  RegionGrid grid{RegionSpec::slepian_wolf(source_pmf), RegionSpec::key_region(key_pmf), {}};
  grid.points.reserve(resolution * resolution);
  const double step = (r_hi - r_lo) / double(resolution - 1);
  for (std::size_t j = 0; j < resolution; ++j) {
    for (std::size_t i = 0; i < resolution; ++i) {
      RegionPoint pt;
      pt.rates = {r_lo + step * double(i), r_lo + step * double(j)};
      pt.in_sw = region_membership(pt.rates, grid.sw);
      pt.in_key = region_membership(pt.rates, grid.key);
      grid.points.push_back(pt);
    }
  }
  return grid;
}

std::pair<double, double> delta_terms(std::size_t n, std::size_t d1, std::size_t d2) {
  if (n < 1) throw std::invalid_argument("delta_terms: n must be >= 1");
  const double poly = 3.0 * double(d1) * double(d2) * std::log2(double(n + 1));
  const double delta1 = (std::log2(24.0) + poly) / double(n);
  const double delta2 =
      (std::log2(6.0 * kLog2E * std::log2(double(d1) * double(d2)) * double(n)) + poly) / double(n);
  return {delta1, delta2};
}

Theorem1Bounds theorem1_bounds(std::size_t n, const RatePoint& rates, const JointPmf& source_pmf,
                               const JointPmf& key_pmf, std::size_t grid_steps) {
  Theorem1Bounds b;
  std::tie(b.delta1, b.delta2) = delta_terms(n, source_pmf.dim1(), source_pmf.dim2());
  b.f = exponent_F(rates, source_pmf, grid_steps);
  b.g = exponent_G(rates, key_pmf);
  b.pe_bound = std::min(1.0, std::exp2(-double(n) * (b.f - b.delta1)));
  b.leak_bound = std::min(1.0, std::exp2(-double(n) * (b.g - b.delta2)));
  b.vacuous = (b.pe_bound >= 1.0 || b.leak_bound >= 1.0);
  return b;
}

double g_star(const RatePoint& rates, const JointPmf& source_pmf, const JointPmf& key_pmf,
              std::size_t grid_steps) {
  return std::min(std::log2(1.0 / source_pmf.max_cell()), exponent_G(rates, key_pmf, grid_steps));
}

}  // namespace secamp
