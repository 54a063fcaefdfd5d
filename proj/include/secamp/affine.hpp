#pragma once

#include <iosfwd>
#include <string>

#include "secamp/field.hpp"
#include "secamp/rng.hpp"
#include "secamp/types.hpp"

namespace secamp {

struct InvalidRateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Linear map x -> xA together with the induced affine map k -> kA + b.
struct AffineCode {
  FieldMatrix a;   // n x m
  FieldVec b;      // length m

  std::size_t n() const { return a.rows(); }
  std::size_t m() const { return a.cols(); }
  const FieldSpec& spec() const { return a.spec(); }
};

struct CodePair {
  AffineCode code1;
  AffineCode code2;
};

struct RatePoint {
  double r1 = 0;  // bits/symbol
  double r2 = 0;
};

/// m_i = floor(n R_i / log2 |X_i|), with m_i = 0 rejected. m_i > n is
/// allowed: rates above log2 |X_i| simply produce an expanding map.
std::pair<std::size_t, std::size_t> rate_to_dims(std::size_t n, const RatePoint& rates,
                                                 const FieldSpec& spec1, const FieldSpec& spec2);

/// All entries of A and b drawn independently and uniformly from GF(p).
AffineCode random_affine(std::size_t n, std::size_t m, const FieldSpec& spec, SplitMix64& rng);

FieldVec encode_linear(const AffineCode& code, const FieldVec& x);
FieldVec encode_affine(const AffineCode& code, const FieldVec& k);

/// Checks encode_affine(x + k) == encode_linear(x) + encode_affine(k).
bool affine_structure_check(const AffineCode& code, const FieldVec& x, const FieldVec& k);

enum class DecodeStatus { unique, tie, empty };

struct DecodeResult {
  SequencePair estimate;
  DecodeStatus status = DecodeStatus::empty;
};

/// Minimum-entropy joint decoder: enumerates the preimage sets
/// {x : xA_i = y_i} via left-kernel cosets and returns the pair whose
/// joint type has smallest entropy. On a tie the lexicographically
/// smallest minimizer is returned and the status marks it.
DecodeResult min_entropy_decode(const FieldVec& y1, const FieldVec& y2, const CodePair& codes,
                                uint64_t pair_cap = uint64_t(1) << 24);

/// Text form: p n m / row-major A digits / b digits, one code per block.
std::string serialize_code(const AffineCode& code);
AffineCode deserialize_code(const std::string& text);

struct EncoderPropertyAudit {
  // Over the full ensemble of (A, b): for x != v the fraction of A with
  // xA = vA is p^-m; for any (s, y) the fraction of (A, b) with sA+b = y
  // is p^-m; for s != t and any y the joint fraction is p^-2m. All three
  // checked as exact integer ratios over every input choice.
  bool collision_ok = false;
  bool single_point_ok = false;
  bool pairwise_ok = false;
  double collision_fraction = 0;     // p^-m
  double single_point_fraction = 0;  // p^-m
  double pairwise_fraction = 0;      // p^-2m
};

/// Exhaustive enumeration of all p^{nm} matrices and p^m offsets.
EncoderPropertyAudit encoder_property_audit(std::size_t n, std::size_t m, const FieldSpec& spec,
                                            uint64_t cap = uint64_t(1) << 22);

}  // namespace secamp
