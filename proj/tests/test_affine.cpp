#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "secamp/affine.hpp"

using namespace secamp;

namespace {

AffineCode make_code(std::size_t n, std::size_t m, const FieldSpec& spec,
                     std::initializer_list<uint32_t> a_entries,
                     std::initializer_list<uint32_t> b_entries) {
  FieldMatrix a(n, m, spec);
  auto it = a_entries.begin();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) a.set(i, j, *it++);
  return {std::move(a), FieldVec(b_entries)};
}

double type_entropy_of_pair(const FieldVec& x1, const FieldVec& x2, std::size_t d2) {
  std::map<uint64_t, double> counts;
  for (std::size_t t = 0; t < x1.size(); ++t) counts[x1[t] * d2 + x2[t]] += 1.0;
  double h = 0;
  for (auto& [_, c] : counts) {
    const double q = c / double(x1.size());
    h -= q * std::log2(q);
  }
  return h;
}

}  // namespace

TEST_CASE("rate_to_dims") {
  FieldSpec f2(2), f3(3);
  CHECK(rate_to_dims(10, {0.5, 0.5}, f2, f2) == std::pair<std::size_t, std::size_t>{5, 5});
  CHECK(rate_to_dims(10, {1.0, 1.0}, f2, f2).first == 10);
  CHECK(rate_to_dims(7, {0.6, 0.6}, f3, f3).first == 2);  // floor(4.2 / log2 3)
  CHECK_THROWS_AS(rate_to_dims(2, {0.1, 0.5}, f2, f2), InvalidRateError);
  // expansion is allowed: R above log2 p gives m > n
  CHECK(rate_to_dims(6, {1.2, 1.2}, f2, f2).first == 7);
}

TEST_CASE("random_affine determinism and uniformity") {
  FieldSpec f2(2);
  SplitMix64 a(9), b(9);
  const AffineCode c1 = random_affine(3, 2, f2, a), c2 = random_affine(3, 2, f2, b);
  CHECK(c1.a == c2.a);
  CHECK(c1.b == c2.b);

  // GF(2), n=2, m=1: each of the 8 (A,b) outcomes near-uniform
  std::map<uint64_t, std::size_t> freq;
  SplitMix64 rng(10);
  const std::size_t samples = 100000;
  for (std::size_t t = 0; t < samples; ++t) {
    const AffineCode c = random_affine(2, 1, f2, rng);
    freq[c.a.at(0, 0) * 4 + c.a.at(1, 0) * 2 + c.b[0]] += 1;
  }
  CHECK(freq.size() == 8);
  for (auto& [_, count] : freq)
    CHECK(std::fabs(double(count) / samples - 0.125) < 0.01);
}

TEST_CASE("encoders") {
  FieldSpec f2(2);
  const AffineCode c = make_code(2, 2, f2, {1, 0, 1, 1}, {1, 0});
  CHECK(encode_linear(c, {1, 1}) == FieldVec{0, 1});
  CHECK(encode_affine(c, {0, 0}) == c.b);
  const AffineCode c0 = make_code(2, 2, f2, {1, 0, 1, 1}, {0, 0});
  CHECK(encode_affine(c0, {1, 1}) == encode_linear(c0, {1, 1}));
}

TEST_CASE("affine structure identity") {
  SplitMix64 rng(12);
  for (uint32_t p : {2u, 3u, 5u}) {
    FieldSpec f(p);
    for (int t = 0; t < 300; ++t) {
      const std::size_t n = 1 + rng.next_below(6), m = 1 + rng.next_below(n);
      const AffineCode code = random_affine(n, m, f, rng);
      FieldVec x(n), k(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = uint32_t(rng.next_below(p));
        k[i] = uint32_t(rng.next_below(p));
      }
      CHECK(affine_structure_check(code, x, k));
    }
  }
}

TEST_CASE("decode: identity codes always correct") {
  FieldSpec f2(2);
  const CodePair codes{{FieldMatrix::identity(3, f2), FieldVec(3, 0)},
                       {FieldMatrix::identity(3, f2), FieldVec(3, 0)}};
  const DecodeResult r = min_entropy_decode({1, 0, 1}, {0, 1, 1}, codes);
  CHECK(r.status == DecodeStatus::unique);
  CHECK(r.estimate.seq1 == FieldVec{1, 0, 1});
  CHECK(r.estimate.seq2 == FieldVec{0, 1, 1});
}

TEST_CASE("decode: zero pair has entropy-zero type") {
  FieldSpec f2(2);
  SplitMix64 rng(13);
  const CodePair codes{random_affine(4, 2, f2, rng), random_affine(4, 2, f2, rng)};
  const FieldVec y1 = encode_linear(codes.code1, {0, 0, 0, 0});
  const FieldVec y2 = encode_linear(codes.code2, {0, 0, 0, 0});
  const DecodeResult r = min_entropy_decode(y1, y2, codes);
  CHECK(r.estimate.seq1 == FieldVec(4, 0));
  CHECK(r.estimate.seq2 == FieldVec(4, 0));
}

TEST_CASE("decode agrees with brute-force argmin oracle") {
  FieldSpec f2(2);
  SplitMix64 rng(14);
  const std::size_t n = 4;
  const CodePair codes{random_affine(n, 3, f2, rng), random_affine(n, 3, f2, rng)};

  for (uint32_t input = 0; input < 256; ++input) {
    FieldVec x1(n), x2(n);
    for (std::size_t t = 0; t < n; ++t) {
      x1[t] = (input >> t) & 1;
      x2[t] = (input >> (t + n)) & 1;
    }
    const FieldVec y1 = encode_linear(codes.code1, x1);
    const FieldVec y2 = encode_linear(codes.code2, x2);
    const DecodeResult got = min_entropy_decode(y1, y2, codes);

    // independent oracle: scan all 256 pairs, filter to the preimages,
    // take min entropy with lexicographic tie-break
    double best_h = 1e9;
    SequencePair best;
    bool tie = false;
    for (uint32_t cand = 0; cand < 256; ++cand) {
      FieldVec c1(n), c2(n);
      for (std::size_t t = 0; t < n; ++t) {
        c1[t] = (cand >> t) & 1;
        c2[t] = (cand >> (t + n)) & 1;
      }
      if (encode_linear(codes.code1, c1) != y1 || encode_linear(codes.code2, c2) != y2) continue;
      const double h = type_entropy_of_pair(c1, c2, 2);
      const SequencePair sp{c1, c2};
      if (h < best_h - 1e-12) {
        best_h = h;
        best = sp;
        tie = false;
      } else if (h < best_h + 1e-12) {
        tie = true;
        if (sp.seq1 < best.seq1 || (sp.seq1 == best.seq1 && sp.seq2 < best.seq2)) best = sp;
      }
    }
    CHECK(got.estimate == best);
    CHECK((got.status == DecodeStatus::tie) == tie);
  }
}

TEST_CASE("serialization round trip") {
  FieldSpec f5(5);
  SplitMix64 rng(15);
  const AffineCode c = random_affine(4, 2, f5, rng);
  const AffineCode back = deserialize_code(serialize_code(c));
  CHECK(back.a == c.a);
  CHECK(back.b == c.b);
}

TEST_CASE("encoder property audit on small fields") {
  const EncoderPropertyAudit a2 = encoder_property_audit(2, 1, FieldSpec(2));
  CHECK(a2.collision_ok);
  CHECK(a2.single_point_ok);
  CHECK(a2.pairwise_ok);
  CHECK(a2.collision_fraction == doctest::Approx(0.5));
  CHECK(a2.pairwise_fraction == doctest::Approx(0.25));

  const EncoderPropertyAudit a3 = encoder_property_audit(2, 1, FieldSpec(3));
  CHECK(a3.collision_ok);
  CHECK(a3.single_point_ok);
  CHECK(a3.pairwise_ok);
}
