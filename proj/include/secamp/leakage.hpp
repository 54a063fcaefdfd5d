#pragma once

#include "secamp/pipeline.hpp"

namespace secamp {

/// Compressed-output product group X1^m1 x X2^m2, indexed as
/// idx = idx1 * p2^m2 + idx2 with each side a base-p digit string.
class OutputGroup {
 public:
  OutputGroup(uint32_t p1, std::size_t m1, uint32_t p2, std::size_t m2, uint64_t cap);

  uint64_t size() const { return size_; }
  uint64_t size1() const { return size1_; }
  uint64_t size2() const { return size2_; }

  uint64_t index_of(const FieldVec& y1, const FieldVec& y2) const;
  uint64_t add(uint64_t a, uint64_t b) const;
  uint64_t sub(uint64_t a, uint64_t b) const;

 private:
  uint32_t p1_, p2_;
  std::size_t m1_, m2_;
  uint64_t size1_, size2_, size_;
};

struct LeakageReport {
  double exact_mi = 0;        // Delta^(n)
  double key_divergence = 0;  // D(P_Ktilde || U)
  double lemdiv_mid = 0;      // sum over types of D(Omega||U) 2^{-nD}
  double bound_rhs = 0;       // full divergence bound
  std::size_t n = 0, m1 = 0, m2 = 0;
  std::string code_id;
};

/// Pushforward of P_key^n through the affine pair: distribution of
/// (phi_aff(K1), phi_aff(K2)) over the output group. Full enumeration of
/// all p^{2n} key pairs.
std::vector<double> compressed_key_distribution(const CodePair& codes, const JointPmf& key_pmf,
                                                std::size_t n, uint64_t cap = uint64_t(1) << 24);

/// Distribution of (phi_lin(X1), phi_lin(X2)) over the output group.
std::vector<double> compressed_source_distribution(const CodePair& codes, const JointPmf& source_pmf,
                                                   std::size_t n, uint64_t cap = uint64_t(1) << 24);

/// Exact information leakage Delta^(n) = I(Ctilde; X). Computed as
/// H(Ctilde) - H(Ktilde): given X, Ctilde is a group translate of Ktilde.
double exact_leakage(const SystemInstance& instance, uint64_t cap = uint64_t(1) << 24);

/// D(P_Ktilde || uniform) in bits.
double key_divergence(const CodePair& codes, const JointPmf& key_pmf, std::size_t n,
                      uint64_t cap = uint64_t(1) << 24);

/// Uniform-over-type-class pushforward through the affine pair.
std::vector<double> omega_distribution(const JointType& key_type, const CodePair& codes,
                                       uint64_t cap = uint64_t(1) << 22);

struct DeltaStatistic {
  double raw = 0;      // scaled chi-square distance to uniform
  double starred = 0;  // min(1, raw)
};

DeltaStatistic delta_statistic(const JointType& key_type, const CodePair& codes,
                               uint64_t cap = uint64_t(1) << 22);
DeltaStatistic delta_statistic_of_omega(const std::vector<double>& omega);

/// Fraction of type-class members misdecoded after linear encoding.
double xi_statistic(const JointType& source_type, const CodePair& codes,
                    uint64_t cap = uint64_t(1) << 22);

struct ErrorBoundReport {
  double exact_pe = 0;
  double bound_rhs = 0;  // sum over types of Xi * 2^{-nD}
};

ErrorBoundReport error_bound_by_types(const CodePair& codes, const JointPmf& source_pmf,
                                      std::size_t n, uint64_t cap = uint64_t(1) << 16);

struct DivergenceBoundReport {
  double lemdiv_mid = 0;
  double bound_rhs = 0;
};

/// Divergence bound chain tail: the per-type intermediate
/// sum_t D(Omega_t||U) 2^{-nD} and the closed-form bound
/// (log2 e)(log2 |X1||X2|) n sum_t Delta*_t 2^{-nD}.
DivergenceBoundReport leakage_bound_rhs(const CodePair& codes, const JointPmf& key_pmf,
                                        std::size_t n, uint64_t cap = uint64_t(1) << 22);

LeakageReport leakage_chain_report(const SystemInstance& instance, uint64_t cap = uint64_t(1) << 24);

struct EncoderAuditReport {
  bool expectation_exact = false;  // E[Omega(y)] == 1/(M1 M2) for every y and type
  bool variance_bounded = false;   // variance bound holds for every y and type
  double max_variance = 0;
  double min_variance_slack = 0;  // min over (type, y) of bound - variance
  std::size_t types_checked = 0;
};

/// Full-ensemble enumeration over all (A1, b1, A2, b2) with both alphabets
/// equal to `spec`; exact integer arithmetic for the expectation check.
EncoderAuditReport encoder_expectation_audit(std::size_t n, std::size_t m1, std::size_t m2,
                                             const FieldSpec& spec,
                                             uint64_t ensemble_cap = uint64_t(1) << 24);

/// Success probability of the Bayes-optimal (posterior mode) adversary
/// observing the compressed ciphertexts.
double map_adversary_success(const SystemInstance& instance, uint64_t cap = uint64_t(1) << 24);

/// P*_{X} = P_max^n.
double source_uniformity(const JointPmf& source_pmf, std::size_t n);

}  // namespace secamp
