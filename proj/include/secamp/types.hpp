#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <vector>

#include "secamp/prob.hpp"

namespace secamp {

using BigInt = boost::multiprecision::cpp_int;

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Empirical joint distribution of a sequence pair, kept as integer counts
/// so multinomials and equality tests stay exact.
class JointType {
 public:
  JointType(std::size_t n, std::size_t dim1, std::size_t dim2, std::vector<uint64_t> counts);

  std::size_t n() const { return n_; }
  std::size_t dim1() const { return dim1_; }
  std::size_t dim2() const { return dim2_; }
  uint64_t count(std::size_t a, std::size_t b) const { return counts_[a * dim2_ + b]; }
  const std::vector<uint64_t>& flat() const { return counts_; }

  /// counts / n as a JointPmf.
  JointPmf as_pmf() const;

  bool operator==(const JointType& o) const = default;

 private:
  std::size_t n_, dim1_, dim2_;
  std::vector<uint64_t> counts_;
};

JointType joint_type_of(const SequencePair& s, std::size_t dim1, std::size_t dim2);

/// All joint types at length n, i.e. compositions of n into dim1*dim2
/// cells, ordered lexicographically by the flattened count vector. Refuses
/// to enumerate when the count would exceed `cap`.
std::vector<JointType> enumerate_joint_types(std::size_t n, std::size_t dim1, std::size_t dim2,
                                             uint64_t cap = 10'000'000);

/// |T| = n! / prod counts! as an exact integer.
BigInt type_class_size(const JointType& t);

double entropy_of_type(const JointType& t);
double conditional_entropy_of_type(const JointType& t, int given_axis);

struct TypeProbability {
  double bound;  // 2^{-n D(t/n || p)}
  double exact;  // |T| * prod p^count
};

TypeProbability type_class_probability(const JointType& t, const JointPmf& p);

/// Enumerate every member of the type class, invoking f(SequencePair).
/// Members are generated in lexicographic order of the flattened pair
/// sequence. Throws CapacityError when |T| > cap.
void for_each_in_type_class(const JointType& t, uint64_t cap,
                            const std::function<void(const SequencePair&)>& f);

}  // namespace secamp
