#pragma once

#include <limits>
#include <string>
#include <vector>

#include "secamp/field.hpp"
#include "secamp/rng.hpp"

namespace secamp {

constexpr double kInfBits = std::numeric_limits<double>::infinity();

/// Joint probability distribution over a product alphabet X1 x X2, stored
/// row-major (index = a * dim2 + b). All information quantities downstream
/// are in bits.
class JointPmf {
 public:
  JointPmf(std::size_t dim1, std::size_t dim2, std::vector<double> probs, std::string label = "");

  std::size_t dim1() const { return dim1_; }
  std::size_t dim2() const { return dim2_; }
  const std::string& label() const { return label_; }

  double at(std::size_t a, std::size_t b) const { return probs_[a * dim2_ + b]; }
  const std::vector<double>& flat() const { return probs_; }

  std::vector<double> marginal1() const;  // over X1
  std::vector<double> marginal2() const;  // over X2
  double max_cell() const;

  /// Uniform distribution on dim1 x dim2.
  static JointPmf uniform(std::size_t dim1, std::size_t dim2);
  /// Symmetric joint with uniform marginals over a q x q alphabet and
  /// correlation parameter rho in [0, 1]; rho = 0 is independent, rho = 1
  /// is a perfect copy. P(a,b) = (1-rho)/q^2 + rho/q * [a == b].
  static JointPmf correlated_uniform(std::size_t q, double rho);
  /// Doubly symmetric binary source with crossover probability `cross`.
  static JointPmf dsbs(double cross);

 private:
  std::size_t dim1_, dim2_;
  std::vector<double> probs_;
  std::string label_;
};

struct SequencePair {
  FieldVec seq1;
  FieldVec seq2;

  std::size_t length() const { return seq1.size(); }
  bool operator==(const SequencePair& o) const = default;
};

double entropy_of(const std::vector<double>& p);

/// Joint entropy H(X1 X2) in bits.
double entropy(const JointPmf& p);
/// H(X1|X2) for given_axis = 2, H(X2|X1) for given_axis = 1.
double conditional_entropy(const JointPmf& p, int given_axis);
double mutual_information(const JointPmf& p);
/// D(p||q) in bits; +infinity when support(p) is not contained in support(q).
double kl_divergence(const JointPmf& p, const JointPmf& q);
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

SequencePair sample_iid(const JointPmf& p, std::size_t n, SplitMix64& rng);
double sequence_probability(const JointPmf& p, const SequencePair& s);

}  // namespace secamp
