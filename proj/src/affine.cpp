#include "secamp/affine.hpp"

#include <cmath>
#include <sstream>

namespace secamp {

std::pair<std::size_t, std::size_t> rate_to_dims(std::size_t n, const RatePoint& rates,
                                                 const FieldSpec& spec1, const FieldSpec& spec2) {
  if (n < 1) throw std::invalid_argument("rate_to_dims: n must be >= 1");
  if (rates.r1 <= 0 || rates.r2 <= 0) throw InvalidRateError("rate_to_dims: rates must be positive");
  auto dim = [n](double r, const FieldSpec& spec) {
    const double bits = std::log2(double(spec.order()));
    const auto m = std::size_t(std::floor(double(n) * r / bits + 1e-12));
    if (m == 0) throw InvalidRateError("rate_to_dims: rate too small, m would be 0");
    return m;
  };
  return {dim(rates.r1, spec1), dim(rates.r2, spec2)};
}

AffineCode random_affine(std::size_t n, std::size_t m, const FieldSpec& spec, SplitMix64& rng) {
  if (m < 1 || n < 1) throw std::invalid_argument("random_affine: need n, m >= 1");
  FieldMatrix a(n, m, spec);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) a.set(i, j, uint32_t(rng.next_below(spec.order())));
  FieldVec b(m);
  for (std::size_t j = 0; j < m; ++j) b[j] = uint32_t(rng.next_below(spec.order()));
  return {std::move(a), std::move(b)};
}

FieldVec encode_linear(const AffineCode& code, const FieldVec& x) { return vec_mat_mul(x, code.a); }

FieldVec encode_affine(const AffineCode& code, const FieldVec& k) {
  return vec_add(vec_mat_mul(k, code.a), code.b, code.spec());
}

bool affine_structure_check(const AffineCode& code, const FieldVec& x, const FieldVec& k) {
  const FieldVec lhs = encode_affine(code, vec_add(x, k, code.spec()));
  const FieldVec rhs = vec_add(encode_linear(code, x), encode_affine(code, k), code.spec());
  return lhs == rhs;
}

namespace {

// Lists the full preimage {x : xA = y} as particular + span(kernel).
std::vector<FieldVec> enumerate_preimage(const AffineCode& code, const FieldVec& y, uint64_t cap) {
  const AffineSolution sol = solve_affine_system(code.a, y);
  if (!sol.particular) return {};
  const uint32_t p = code.spec().order();
  const std::size_t k = sol.kernel_basis.size();
  double size = std::pow(double(p), double(k));
  if (size > double(cap)) throw CapacityError("min_entropy_decode: preimage exceeds cap");

  std::vector<FieldVec> out;
  out.reserve(std::size_t(size));
  FieldVec coeff(k, 0);
  for (;;) {
    FieldVec v = *sol.particular;
    for (std::size_t i = 0; i < k; ++i) {
      if (coeff[i] == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = code.spec().add(v[j], code.spec().mul(coeff[i], sol.kernel_basis[i][j]));
    }
    out.push_back(std::move(v));
    std::size_t pos = 0;
    while (pos < k && ++coeff[pos] == p) coeff[pos++] = 0;
    if (pos == k) break;
  }
  return out;
}

// prod c^c over the joint type counts; min-entropy argmin = max of this,
// compared exactly in integers. n is small enough that the product fits
// 128 bits (n <= 30 guarded by the pair cap in practice).
unsigned __int128 type_weight(const std::vector<uint32_t>& counts) {
  unsigned __int128 w = 1;
  for (uint32_t c : counts) {
    for (uint32_t i = 0; i < c; ++i) w *= c;
  }
  return w;
}

bool lex_less(const SequencePair& a, const SequencePair& b) {
  if (a.seq1 != b.seq1) return a.seq1 < b.seq1;
  return a.seq2 < b.seq2;
}

}  // namespace

DecodeResult min_entropy_decode(const FieldVec& y1, const FieldVec& y2, const CodePair& codes,
                                uint64_t pair_cap) {
  if (codes.code1.n() != codes.code2.n())
    throw std::invalid_argument("min_entropy_decode: code pair has mismatched n");
  const std::size_t n = codes.code1.n();
  if (n > 30) throw CapacityError("min_entropy_decode: n too large for exact type comparison");

  const std::vector<FieldVec> pre1 = enumerate_preimage(codes.code1, y1, pair_cap);
  const std::vector<FieldVec> pre2 = enumerate_preimage(codes.code2, y2, pair_cap);
  DecodeResult res;
  if (pre1.empty() || pre2.empty()) {
    res.status = DecodeStatus::empty;
    res.estimate.seq1.assign(n, 0);
    res.estimate.seq2.assign(n, 0);
    return res;
  }
  if (double(pre1.size()) * double(pre2.size()) > double(pair_cap))
    throw CapacityError("min_entropy_decode: preimage pair count exceeds cap");

  const std::size_t d1 = codes.code1.spec().order(), d2 = codes.code2.spec().order();
  std::vector<uint32_t> counts(d1 * d2);
  unsigned __int128 best_w = 0;
  bool tie = false;
  for (const FieldVec& x1 : pre1) {
    for (const FieldVec& x2 : pre2) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t t = 0; t < n; ++t) ++counts[x1[t] * d2 + x2[t]];
      const unsigned __int128 w = type_weight(counts);
      if (w > best_w) {
        best_w = w;
        res.estimate = {x1, x2};
        tie = false;
      } else if (w == best_w) {
        tie = true;
        SequencePair cand{x1, x2};
        if (lex_less(cand, res.estimate)) res.estimate = std::move(cand);
      }
    }
  }
  res.status = tie ? DecodeStatus::tie : DecodeStatus::unique;
  return res;
}

std::string serialize_code(const AffineCode& code) {
  std::ostringstream os;
  os << code.spec().order() << ' ' << code.n() << ' ' << code.m() << '\n';
  for (std::size_t i = 0; i < code.n(); ++i) {
    for (std::size_t j = 0; j < code.m(); ++j) os << code.a.at(i, j) << (j + 1 == code.m() ? '\n' : ' ');
  }
  for (std::size_t j = 0; j < code.m(); ++j) os << code.b[j] << (j + 1 == code.m() ? '\n' : ' ');
  return os.str();
}

AffineCode deserialize_code(const std::string& text) {
  std::istringstream is(text);
  uint32_t p;
  std::size_t n, m;
  if (!(is >> p >> n >> m)) throw std::invalid_argument("deserialize_code: bad header");
  FieldSpec spec(p);
  FieldMatrix a(n, m, spec);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      uint32_t v;
      if (!(is >> v)) throw std::invalid_argument("deserialize_code: truncated matrix");
      a.set(i, j, v);
    }
  FieldVec b(m);
  for (std::size_t j = 0; j < m; ++j) {
    uint32_t v;
    if (!(is >> v)) throw std::invalid_argument("deserialize_code: truncated offset");
    b[j] = v % p;
  }
  return {std::move(a), std::move(b)};
}

EncoderPropertyAudit encoder_property_audit(std::size_t n, std::size_t m, const FieldSpec& spec,
                                            uint64_t cap) {
  const uint32_t p = spec.order();
  auto pw = [&](std::size_t e) {
    uint64_t v = 1;
    for (std::size_t i = 0; i < e; ++i) {
      if (v > cap / p) throw CapacityError("encoder_property_audit: ensemble exceeds cap");
      v *= p;
    }
    return v;
  };
  const uint64_t num_a = pw(n * m), num_b = pw(m), num_x = pw(n);
  if (num_a > cap / num_b || num_x > cap / num_x)
    throw CapacityError("encoder_property_audit: ensemble exceeds cap");

  auto nth_code = [&](uint64_t id) {
    FieldMatrix a(n, m, spec);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        a.set(i, j, uint32_t(id % p));
        id /= p;
      }
    return a;
  };
  auto nth_vec = [&](uint64_t id, std::size_t len) {
    FieldVec v(len);
    for (std::size_t j = 0; j < len; ++j) {
      v[j] = uint32_t(id % p);
      id /= p;
    }
    return v;
  };

  // Per matrix, the image of every input; per (matrix, offset), the affine
  // image, indexed as a base-p integer.
  std::vector<std::vector<uint64_t>> image(num_a, std::vector<uint64_t>(num_x));
  for (uint64_t ai = 0; ai < num_a; ++ai) {
    const FieldMatrix a = nth_code(ai);
    for (uint64_t xi = 0; xi < num_x; ++xi) {
      const FieldVec y = vec_mat_mul(nth_vec(xi, n), a);
      uint64_t idx = 0;
      for (std::size_t j = m; j-- > 0;) idx = idx * p + y[j];
      image[ai][xi] = idx;
    }
  }
  auto shift = [&](uint64_t yi, uint64_t bi) {
    uint64_t out = 0, mult = 1;
    for (std::size_t j = 0; j < m; ++j) {
      out += mult * ((yi % p + bi % p) % p);
      yi /= p;
      bi /= p;
      mult *= p;
    }
    return out;
  };

  EncoderPropertyAudit rep;
  rep.collision_ok = rep.single_point_ok = rep.pairwise_ok = true;
  rep.collision_fraction = rep.single_point_fraction = 1.0 / double(num_b);
  rep.pairwise_fraction = 1.0 / (double(num_b) * double(num_b));

  for (uint64_t xi = 0; xi < num_x; ++xi) {
    for (uint64_t vi = 0; vi < num_x; ++vi) {
      if (xi == vi) continue;
      uint64_t collisions = 0;
      for (uint64_t ai = 0; ai < num_a; ++ai)
        if (image[ai][xi] == image[ai][vi]) ++collisions;
      if (collisions * num_b != num_a) rep.collision_ok = false;
    }
  }
  for (uint64_t si = 0; si < num_x; ++si) {
    std::vector<uint64_t> hits(num_b, 0);
    for (uint64_t ai = 0; ai < num_a; ++ai)
      for (uint64_t bi = 0; bi < num_b; ++bi) ++hits[shift(image[ai][si], bi)];
    for (uint64_t y = 0; y < num_b; ++y)
      if (hits[y] * num_b != num_a * num_b) rep.single_point_ok = false;
  }
  for (uint64_t si = 0; si < num_x; ++si) {
    for (uint64_t ti = 0; ti < num_x; ++ti) {
      if (si == ti) continue;
      std::vector<uint64_t> hits(num_b, 0);
      for (uint64_t ai = 0; ai < num_a; ++ai) {
        if (image[ai][si] != image[ai][ti]) continue;
        for (uint64_t bi = 0; bi < num_b; ++bi) ++hits[shift(image[ai][si], bi)];
      }
      for (uint64_t y = 0; y < num_b; ++y)
        if (hits[y] * num_b * num_b != num_a * num_b) rep.pairwise_ok = false;
    }
  }
  return rep;
}

}  // namespace secamp
