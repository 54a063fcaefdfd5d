#include "secamp/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace secamp {

JointPmf::JointPmf(std::size_t dim1, std::size_t dim2, std::vector<double> probs, std::string label)
    : dim1_(dim1), dim2_(dim2), probs_(std::move(probs)), label_(std::move(label)) {
  if (probs_.size() != dim1_ * dim2_)
    throw std::invalid_argument("JointPmf: grid size does not match dims");
  double sum = 0;
  for (double v : probs_) {
    if (v < 0) throw std::invalid_argument("JointPmf: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("JointPmf: probabilities sum to " + std::to_string(sum));
}

std::vector<double> JointPmf::marginal1() const {
  std::vector<double> m(dim1_, 0);
  for (std::size_t a = 0; a < dim1_; ++a)
    for (std::size_t b = 0; b < dim2_; ++b) m[a] += at(a, b);
  return m;
}

std::vector<double> JointPmf::marginal2() const {
  std::vector<double> m(dim2_, 0);
  for (std::size_t a = 0; a < dim1_; ++a)
    for (std::size_t b = 0; b < dim2_; ++b) m[b] += at(a, b);
  return m;
}

double JointPmf::max_cell() const { return *std::max_element(probs_.begin(), probs_.end()); }

JointPmf JointPmf::uniform(std::size_t dim1, std::size_t dim2) {
  return JointPmf(dim1, dim2, std::vector<double>(dim1 * dim2, 1.0 / double(dim1 * dim2)), "uniform");
}

JointPmf JointPmf::correlated_uniform(std::size_t q, double rho) {
  if (rho < 0 || rho > 1) throw std::invalid_argument("correlated_uniform: rho must be in [0,1]");
  std::vector<double> grid(q * q, (1.0 - rho) / double(q * q));
  for (std::size_t a = 0; a < q; ++a) grid[a * q + a] += rho / double(q);
  return JointPmf(q, q, std::move(grid), "correlated_uniform");
}

JointPmf JointPmf::dsbs(double cross) {
  if (cross < 0 || cross > 1) throw std::invalid_argument("dsbs: crossover must be in [0,1]");
  const double same = (1.0 - cross) / 2.0, diff = cross / 2.0;
  return JointPmf(2, 2, {same, diff, diff, same}, "dsbs");
}

double entropy_of(const std::vector<double>& p) {
  double h = 0;
  for (double v : p)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

double entropy(const JointPmf& p) { return entropy_of(p.flat()); }

double conditional_entropy(const JointPmf& p, int given_axis) {
  if (given_axis != 1 && given_axis != 2)
    throw std::invalid_argument("conditional_entropy: axis must be 1 or 2");
  const auto marg = (given_axis == 1) ? p.marginal1() : p.marginal2();
  return entropy(p) - entropy_of(marg);
}

double mutual_information(const JointPmf& p) {
  const double i = entropy_of(p.marginal1()) + entropy_of(p.marginal2()) - entropy(p);
  return std::max(0.0, i);
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: size mismatch");
  double d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;
    if (q[i] <= 0) return kInfBits;
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return std::max(0.0, d);
}

double kl_divergence(const JointPmf& p, const JointPmf& q) {
  if (p.dim1() != q.dim1() || p.dim2() != q.dim2())
    throw std::invalid_argument("kl_divergence: dimension mismatch");
  return kl_divergence(p.flat(), q.flat());
}

SequencePair sample_iid(const JointPmf& p, std::size_t n, SplitMix64& rng) {
  if (n < 1) throw std::invalid_argument("sample_iid: n must be >= 1");
  SequencePair s;
  s.seq1.resize(n);
  s.seq2.resize(n);
  const auto& flat = p.flat();
  for (std::size_t t = 0; t < n; ++t) {
    const double u = rng.next_double();
    double acc = 0;
    std::size_t idx = flat.size() - 1;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      acc += flat[i];
      if (u < acc) {
        idx = i;
        break;
      }
    }
    s.seq1[t] = uint32_t(idx / p.dim2());
    s.seq2[t] = uint32_t(idx % p.dim2());
  }
  return s;
}

double sequence_probability(const JointPmf& p, const SequencePair& s) {
  if (s.seq1.size() != s.seq2.size())
    throw std::invalid_argument("sequence_probability: length mismatch");
  double prob = 1.0;
  for (std::size_t t = 0; t < s.seq1.size(); ++t) {
    if (s.seq1[t] >= p.dim1() || s.seq2[t] >= p.dim2())
      throw std::invalid_argument("sequence_probability: symbol outside alphabet");
    prob *= p.at(s.seq1[t], s.seq2[t]);
  }
  return prob;
}

}  // namespace secamp
