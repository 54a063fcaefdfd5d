#pragma once

#include "secamp/affine.hpp"
#include "secamp/prob.hpp"

namespace secamp {

/// The full system: correlated sources, correlated keys, per-node one-time
/// pad, affine compression of ciphertexts, joint sink decoding.
struct SystemInstance {
  JointPmf source_pmf;
  JointPmf key_pmf;
  std::size_t n = 0;
  CodePair codes;

  SystemInstance(JointPmf source, JointPmf key, std::size_t block, CodePair code_pair);
};

struct TrialRecord {
  SequencePair x;
  SequencePair k;
  FieldVec c_tilde1, c_tilde2;
  SequencePair x_hat;
  bool success = false;
  DecodeStatus decode_status = DecodeStatus::empty;
};

FieldVec encrypt(const FieldVec& x, const FieldVec& k, const FieldSpec& spec);
FieldVec decrypt(const FieldVec& c, const FieldVec& k, const FieldSpec& spec);

FieldVec compress_ciphertext(const AffineCode& code, const FieldVec& c);

/// Removes the compressed key share and runs the joint decoder.
SequencePair sink_decode(const SystemInstance& instance, const FieldVec& c_tilde1,
                         const FieldVec& c_tilde2, const SequencePair& k);

TrialRecord run_trial(const SystemInstance& instance, SplitMix64& rng);

struct BatchResult {
  uint64_t trials = 0;
  uint64_t errors = 0;
  double pe_hat = 0;
  double wilson_lo = 0;
  double wilson_hi = 1;
};

/// Monte Carlo p_e estimate; trial t draws from streams derived from
/// (master_seed, "trial", t), so batching order never matters.
BatchResult run_batch(const SystemInstance& instance, uint64_t trials, uint64_t master_seed);

/// Exact p_e by enumerating all source pairs, weighted by the sequence
/// probability. Error does not depend on the keys or the offsets b.
double exact_error_probability(const SystemInstance& instance, uint64_t cap = uint64_t(1) << 16);

/// 95% Wilson score interval for `errors` successes in `trials`.
std::pair<double, double> wilson_interval(uint64_t errors, uint64_t trials);

}  // namespace secamp
