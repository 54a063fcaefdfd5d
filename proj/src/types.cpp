#include "secamp/types.hpp"

#include <cmath>
#include <numeric>

namespace secamp {

JointType::JointType(std::size_t n, std::size_t dim1, std::size_t dim2, std::vector<uint64_t> counts)
    : n_(n), dim1_(dim1), dim2_(dim2), counts_(std::move(counts)) {
  if (counts_.size() != dim1_ * dim2_)
    throw std::invalid_argument("JointType: counts grid does not match dims");
  uint64_t sum = std::accumulate(counts_.begin(), counts_.end(), uint64_t{0});
  if (sum != n_) throw std::invalid_argument("JointType: counts do not sum to n");
}

JointPmf JointType::as_pmf() const {
  std::vector<double> probs(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) probs[i] = double(counts_[i]) / double(n_);
  return JointPmf(dim1_, dim2_, std::move(probs), "type");
}

JointType joint_type_of(const SequencePair& s, std::size_t dim1, std::size_t dim2) {
  std::vector<uint64_t> counts(dim1 * dim2, 0);
  for (std::size_t t = 0; t < s.length(); ++t) {
    if (s.seq1[t] >= dim1 || s.seq2[t] >= dim2)
      throw std::invalid_argument("joint_type_of: symbol outside alphabet");
    ++counts[s.seq1[t] * dim2 + s.seq2[t]];
  }
  return JointType(s.length(), dim1, dim2, std::move(counts));
}

namespace {

uint64_t compositions_count(uint64_t n, uint64_t k) {
  // C(n + k - 1, k - 1), saturating at UINT64_MAX.
  BigInt c = 1;
  for (uint64_t i = 1; i < k; ++i) {
    c *= (n + i);
    c /= i;
  }
  if (c > BigInt(UINT64_MAX)) return UINT64_MAX;
  return uint64_t(c);
}

}  // namespace

std::vector<JointType> enumerate_joint_types(std::size_t n, std::size_t dim1, std::size_t dim2,
                                             uint64_t cap) {
  if (n < 1) throw std::invalid_argument("enumerate_joint_types: n must be >= 1");
  const std::size_t cells = dim1 * dim2;
  if (compositions_count(n, cells) > cap)
    throw CapacityError("enumerate_joint_types: type count exceeds cap");

  std::vector<JointType> out;
  std::vector<uint64_t> counts(cells, 0);
  // Lexicographic enumeration of compositions of n.
  std::function<void(std::size_t, uint64_t)> rec = [&](std::size_t cell, uint64_t remaining) {
    if (cell + 1 == cells) {
      counts[cell] = remaining;
      out.emplace_back(n, dim1, dim2, counts);
      return;
    }
    for (uint64_t c = 0; c <= remaining; ++c) {
      counts[cell] = c;
      rec(cell + 1, remaining - c);
    }
  };
  rec(0, n);
  return out;
}

BigInt type_class_size(const JointType& t) {
  BigInt num = 1;
  for (uint64_t i = 2; i <= t.n(); ++i) num *= i;
  for (uint64_t c : t.flat())
    for (uint64_t i = 2; i <= c; ++i) num /= i;
  return num;
}

double entropy_of_type(const JointType& t) { return entropy(t.as_pmf()); }

double conditional_entropy_of_type(const JointType& t, int given_axis) {
  return conditional_entropy(t.as_pmf(), given_axis);
}

TypeProbability type_class_probability(const JointType& t, const JointPmf& p) {
  if (t.dim1() != p.dim1() || t.dim2() != p.dim2())
    throw std::invalid_argument("type_class_probability: dimension mismatch");
  const double d = kl_divergence(t.as_pmf(), p);
  TypeProbability r;
  r.bound = std::isinf(d) ? 0.0 : std::exp2(-double(t.n()) * d);
  double log_prob = 0;
  bool zero = false;
  const auto& counts = t.flat();
  const auto& probs = p.flat();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    if (probs[i] <= 0) {
      zero = true;
      break;
    }
    log_prob += double(counts[i]) * std::log2(probs[i]);
  }
  r.exact = zero ? 0.0 : double(type_class_size(t)) * std::exp2(log_prob);
  return r;
}

void for_each_in_type_class(const JointType& t, uint64_t cap,
                            const std::function<void(const SequencePair&)>& f) {
  if (type_class_size(t) > BigInt(cap))
    throw CapacityError("for_each_in_type_class: class size exceeds cap");
  const std::size_t n = t.n();
  const std::size_t cells = t.dim1() * t.dim2();
  std::vector<uint64_t> remaining = t.flat();
  SequencePair s;
  s.seq1.resize(n);
  s.seq2.resize(n);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == n) {
      f(s);
      return;
    }
    for (std::size_t cell = 0; cell < cells; ++cell) {
      if (remaining[cell] == 0) continue;
      --remaining[cell];
      s.seq1[pos] = uint32_t(cell / t.dim2());
      s.seq2[pos] = uint32_t(cell % t.dim2());
      rec(pos + 1);
      ++remaining[cell];
    }
  };
  rec(0);
}

}  // namespace secamp
