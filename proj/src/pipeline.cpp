#include "secamp/pipeline.hpp"

#include <cmath>

namespace secamp {

SystemInstance::SystemInstance(JointPmf source, JointPmf key, std::size_t block, CodePair code_pair)
    : source_pmf(std::move(source)), key_pmf(std::move(key)), n(block), codes(std::move(code_pair)) {
  if (codes.code1.n() != n || codes.code2.n() != n)
    throw std::invalid_argument("SystemInstance: code block length mismatch");
  if (source_pmf.dim1() != codes.code1.spec().order() ||
      source_pmf.dim2() != codes.code2.spec().order())
    throw std::invalid_argument("SystemInstance: source alphabet does not match field orders");
  if (key_pmf.dim1() != source_pmf.dim1() || key_pmf.dim2() != source_pmf.dim2())
    throw std::invalid_argument("SystemInstance: key alphabet does not match source alphabet");
}

FieldVec encrypt(const FieldVec& x, const FieldVec& k, const FieldSpec& spec) {
  return vec_add(x, k, spec);
}

FieldVec decrypt(const FieldVec& c, const FieldVec& k, const FieldSpec& spec) {
  return vec_sub(c, k, spec);
}

FieldVec compress_ciphertext(const AffineCode& code, const FieldVec& c) {
  return encode_affine(code, c);
}

SequencePair sink_decode(const SystemInstance& instance, const FieldVec& c_tilde1,
                         const FieldVec& c_tilde2, const SequencePair& k) {
  const FieldVec k_tilde1 = encode_affine(instance.codes.code1, k.seq1);
  const FieldVec k_tilde2 = encode_affine(instance.codes.code2, k.seq2);
  const FieldVec x_tilde1 = vec_sub(c_tilde1, k_tilde1, instance.codes.code1.spec());
  const FieldVec x_tilde2 = vec_sub(c_tilde2, k_tilde2, instance.codes.code2.spec());
  return min_entropy_decode(x_tilde1, x_tilde2, instance.codes).estimate;
}

TrialRecord run_trial(const SystemInstance& instance, SplitMix64& rng) {
  TrialRecord rec;
  rec.x = sample_iid(instance.source_pmf, instance.n, rng);
  rec.k = sample_iid(instance.key_pmf, instance.n, rng);
  const FieldSpec& f1 = instance.codes.code1.spec();
  const FieldSpec& f2 = instance.codes.code2.spec();
  const FieldVec c1 = encrypt(rec.x.seq1, rec.k.seq1, f1);
  const FieldVec c2 = encrypt(rec.x.seq2, rec.k.seq2, f2);
  rec.c_tilde1 = compress_ciphertext(instance.codes.code1, c1);
  rec.c_tilde2 = compress_ciphertext(instance.codes.code2, c2);

  // Sink-side recovery of the compressed source share is exact arithmetic.
  const FieldVec k_tilde1 = encode_affine(instance.codes.code1, rec.k.seq1);
  const FieldVec k_tilde2 = encode_affine(instance.codes.code2, rec.k.seq2);
  const FieldVec x_tilde1 = vec_sub(rec.c_tilde1, k_tilde1, f1);
  const FieldVec x_tilde2 = vec_sub(rec.c_tilde2, k_tilde2, f2);
  if (x_tilde1 != encode_linear(instance.codes.code1, rec.x.seq1) ||
      x_tilde2 != encode_linear(instance.codes.code2, rec.x.seq2))
    throw std::logic_error("run_trial: affine decomposition contract violated");

  const DecodeResult dec = min_entropy_decode(x_tilde1, x_tilde2, instance.codes);
  rec.x_hat = dec.estimate;
  rec.decode_status = dec.status;
  rec.success = (rec.x_hat == rec.x);
  return rec;
}

std::pair<double, double> wilson_interval(uint64_t errors, uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 95%
  const double nn = double(trials);
  const double p = double(errors) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2 * nn)) / denom;
  const double half = (z / denom) * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

BatchResult run_batch(const SystemInstance& instance, uint64_t trials, uint64_t master_seed) {
  if (trials < 1) throw std::invalid_argument("run_batch: trials must be >= 1");
  BatchResult res;
  res.trials = trials;
  for (uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng = derive_stream(master_seed, "trial", t);
    if (!run_trial(instance, rng).success) ++res.errors;
  }
  res.pe_hat = double(res.errors) / double(trials);
  std::tie(res.wilson_lo, res.wilson_hi) = wilson_interval(res.errors, trials);
  return res;
}

double exact_error_probability(const SystemInstance& instance, uint64_t cap) {
  const std::size_t p1 = instance.codes.code1.spec().order();
  const std::size_t p2 = instance.codes.code2.spec().order();
  const std::size_t n = instance.n;
  const double total = std::pow(double(p1), double(n)) * std::pow(double(p2), double(n));
  if (total > double(cap)) throw CapacityError("exact_error_probability: state space exceeds cap");

  double pe = 0;
  SequencePair x;
  x.seq1.assign(n, 0);
  x.seq2.assign(n, 0);
  auto advance = [n](FieldVec& v, std::size_t p) {
    std::size_t pos = 0;
    while (pos < n && ++v[pos] == p) v[pos++] = 0;
    return pos < n;
  };
  bool more1 = true;
  while (more1) {
    const FieldVec y1 = encode_linear(instance.codes.code1, x.seq1);
    std::fill(x.seq2.begin(), x.seq2.end(), 0);
    bool more2 = true;
    while (more2) {
      const double w = sequence_probability(instance.source_pmf, x);
      if (w > 0) {
        const FieldVec y2 = encode_linear(instance.codes.code2, x.seq2);
        const DecodeResult dec = min_entropy_decode(y1, y2, instance.codes);
        if (dec.estimate != x) pe += w;
      }
      more2 = advance(x.seq2, p2);
    }
    more1 = advance(x.seq1, p1);
  }
  return pe;
}

}  // namespace secamp
