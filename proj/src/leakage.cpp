#include "secamp/leakage.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace secamp {

namespace {

constexpr double kLog2E = 1.4426950408889634;  // log2(e)

uint64_t checked_pow(uint64_t base, std::size_t exp, uint64_t cap, const char* what) {
  uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > cap / base) throw CapacityError(std::string(what) + ": state space exceeds cap");
    v *= base;
  }
  return v;
}

// Iterates over all vectors in X^n in little-endian counting order.
bool advance_vec(FieldVec& v, uint32_t p) {
  std::size_t pos = 0;
  while (pos < v.size() && ++v[pos] == p) v[pos++] = 0;
  return pos < v.size();
}

double entropy_bits(const std::vector<double>& p) { return entropy_of(p); }

}  // namespace

OutputGroup::OutputGroup(uint32_t p1, std::size_t m1, uint32_t p2, std::size_t m2, uint64_t cap)
    : p1_(p1), p2_(p2), m1_(m1), m2_(m2) {
  size1_ = checked_pow(p1, m1, cap, "OutputGroup");
  size2_ = checked_pow(p2, m2, cap, "OutputGroup");
  if (size1_ > cap / size2_) throw CapacityError("OutputGroup: state space exceeds cap");
  size_ = size1_ * size2_;
}

uint64_t OutputGroup::index_of(const FieldVec& y1, const FieldVec& y2) const {
  uint64_t i1 = 0, i2 = 0;
  for (std::size_t j = 0; j < m1_; ++j) i1 = i1 * p1_ + y1[j];
  for (std::size_t j = 0; j < m2_; ++j) i2 = i2 * p2_ + y2[j];
  return i1 * size2_ + i2;
}

uint64_t OutputGroup::add(uint64_t a, uint64_t b) const {
  uint64_t a1 = a / size2_, a2 = a % size2_;
  uint64_t b1 = b / size2_, b2 = b % size2_;
  uint64_t r1 = 0, r2 = 0, mult = 1;
  for (std::size_t j = 0; j < m1_; ++j) {
    r1 += mult * ((a1 % p1_ + b1 % p1_) % p1_);
    a1 /= p1_;
    b1 /= p1_;
    mult *= p1_;
  }
  mult = 1;
  for (std::size_t j = 0; j < m2_; ++j) {
    r2 += mult * ((a2 % p2_ + b2 % p2_) % p2_);
    a2 /= p2_;
    b2 /= p2_;
    mult *= p2_;
  }
  return r1 * size2_ + r2;
}

uint64_t OutputGroup::sub(uint64_t a, uint64_t b) const {
  uint64_t a1 = a / size2_, a2 = a % size2_;
  uint64_t b1 = b / size2_, b2 = b % size2_;
  uint64_t r1 = 0, r2 = 0, mult = 1;
  for (std::size_t j = 0; j < m1_; ++j) {
    r1 += mult * ((a1 % p1_ + p1_ - b1 % p1_) % p1_);
    a1 /= p1_;
    b1 /= p1_;
    mult *= p1_;
  }
  mult = 1;
  for (std::size_t j = 0; j < m2_; ++j) {
    r2 += mult * ((a2 % p2_ + p2_ - b2 % p2_) % p2_);
    a2 /= p2_;
    b2 /= p2_;
    mult *= p2_;
  }
  return r1 * size2_ + r2;
}

namespace {

OutputGroup group_of(const CodePair& codes, uint64_t cap) {
  return OutputGroup(codes.code1.spec().order(), codes.code1.m(), codes.code2.spec().order(),
                     codes.code2.m(), cap);
}

// Pushforward of P^n through per-side encoders (affine or linear).
std::vector<double> pushforward(const CodePair& codes, const JointPmf& pmf, std::size_t n,
                                uint64_t cap, bool affine) {
  const uint32_t p1 = codes.code1.spec().order(), p2 = codes.code2.spec().order();
  const uint64_t s1 = checked_pow(p1, n, cap, "pushforward");
  const uint64_t s2 = checked_pow(p2, n, cap, "pushforward");
  if (s1 > cap / s2) throw CapacityError("pushforward: state space exceeds cap");
  const OutputGroup group = group_of(codes, cap);
  std::vector<double> out(group.size(), 0.0);

  SequencePair s;
  s.seq1.assign(n, 0);
  s.seq2.assign(n, 0);
  bool more1 = true;
  while (more1) {
    const FieldVec y1 = affine ? encode_affine(codes.code1, s.seq1) : encode_linear(codes.code1, s.seq1);
    std::fill(s.seq2.begin(), s.seq2.end(), 0);
    bool more2 = true;
    while (more2) {
      const double w = sequence_probability(pmf, s);
      if (w > 0) {
        const FieldVec y2 =
            affine ? encode_affine(codes.code2, s.seq2) : encode_linear(codes.code2, s.seq2);
        out[group.index_of(y1, y2)] += w;
      }
      more2 = advance_vec(s.seq2, p2);
    }
    more1 = advance_vec(s.seq1, p1);
  }
  return out;
}

}  // namespace

std::vector<double> compressed_key_distribution(const CodePair& codes, const JointPmf& key_pmf,
                                                std::size_t n, uint64_t cap) {
  return pushforward(codes, key_pmf, n, cap, /*affine=*/true);
}

std::vector<double> compressed_source_distribution(const CodePair& codes, const JointPmf& source_pmf,
                                                   std::size_t n, uint64_t cap) {
  return pushforward(codes, source_pmf, n, cap, /*affine=*/false);
}

double exact_leakage(const SystemInstance& instance, uint64_t cap) {
  const OutputGroup group = group_of(instance.codes, cap);
  const std::vector<double> pk = compressed_key_distribution(instance.codes, instance.key_pmf,
                                                             instance.n, cap);
  const std::vector<double> px = compressed_source_distribution(instance.codes, instance.source_pmf,
                                                                instance.n, cap);
  // Given X = x, Ctilde = phi_lin(x) + Ktilde, a bijection of Ktilde, so
  // H(Ctilde|X) = H(Ktilde) and Delta = H(Ctilde) - H(Ktilde).
  std::vector<double> pc(group.size(), 0.0);
  for (uint64_t xi = 0; xi < group.size(); ++xi) {
    if (px[xi] <= 0) continue;
    for (uint64_t ki = 0; ki < group.size(); ++ki) {
      if (pk[ki] <= 0) continue;
      pc[group.add(xi, ki)] += px[xi] * pk[ki];
    }
  }
  return std::max(0.0, entropy_bits(pc) - entropy_bits(pk));
}

double key_divergence(const CodePair& codes, const JointPmf& key_pmf, std::size_t n, uint64_t cap) {
  const OutputGroup group = group_of(codes, cap);
  const std::vector<double> pk = compressed_key_distribution(codes, key_pmf, n, cap);
  return std::max(0.0, std::log2(double(group.size())) - entropy_bits(pk));
}

std::vector<double> omega_distribution(const JointType& key_type, const CodePair& codes,
                                       uint64_t cap) {
  const OutputGroup group = group_of(codes, cap);
  std::vector<double> omega(group.size(), 0.0);
  uint64_t members = 0;
  for_each_in_type_class(key_type, cap, [&](const SequencePair& k) {
    const FieldVec y1 = encode_affine(codes.code1, k.seq1);
    const FieldVec y2 = encode_affine(codes.code2, k.seq2);
    omega[group.index_of(y1, y2)] += 1.0;
    ++members;
  });
  for (double& v : omega) v /= double(members);
  return omega;
}

DeltaStatistic delta_statistic_of_omega(const std::vector<double>& omega) {
  const double m = double(omega.size());
  double chi = 0;
  for (double v : omega) {
    const double d = v - 1.0 / m;
    chi += m * d * d;
  }
  return {chi, std::min(1.0, chi)};
}

DeltaStatistic delta_statistic(const JointType& key_type, const CodePair& codes, uint64_t cap) {
  return delta_statistic_of_omega(omega_distribution(key_type, codes, cap));
}

double xi_statistic(const JointType& source_type, const CodePair& codes, uint64_t cap) {
  uint64_t members = 0, errors = 0;
  for_each_in_type_class(source_type, cap, [&](const SequencePair& x) {
    const FieldVec y1 = encode_linear(codes.code1, x.seq1);
    const FieldVec y2 = encode_linear(codes.code2, x.seq2);
    if (min_entropy_decode(y1, y2, codes).estimate != x) ++errors;
    ++members;
  });
  return double(errors) / double(members);
}

ErrorBoundReport error_bound_by_types(const CodePair& codes, const JointPmf& source_pmf,
                                      std::size_t n, uint64_t cap) {
  const uint32_t p1 = codes.code1.spec().order(), p2 = codes.code2.spec().order();
  const uint64_t states = checked_pow(p1, n, cap, "error_bound_by_types") *
                          checked_pow(p2, n, cap, "error_bound_by_types");
  if (states > cap) throw CapacityError("error_bound_by_types: state space exceeds cap");

  // One pass over all source pairs, accumulating exact p_e and per-type
  // misdecode counts for the Xi statistics.
  struct TypeAcc {
    uint64_t members = 0;
    uint64_t errors = 0;
  };
  std::map<std::vector<uint64_t>, TypeAcc> per_type;
  double exact_pe = 0;

  SequencePair x;
  x.seq1.assign(n, 0);
  x.seq2.assign(n, 0);
  bool more1 = true;
  while (more1) {
    const FieldVec y1 = encode_linear(codes.code1, x.seq1);
    std::fill(x.seq2.begin(), x.seq2.end(), 0);
    bool more2 = true;
    while (more2) {
      const FieldVec y2 = encode_linear(codes.code2, x.seq2);
      const bool mis = (min_entropy_decode(y1, y2, codes).estimate != x);
      const JointType t = joint_type_of(x, p1, p2);
      TypeAcc& acc = per_type[t.flat()];
      ++acc.members;
      if (mis) {
        ++acc.errors;
        exact_pe += sequence_probability(source_pmf, x);
      }
      more2 = advance_vec(x.seq2, p2);
    }
    more1 = advance_vec(x.seq1, p1);
  }

  double bound = 0;
  for (const auto& [counts, acc] : per_type) {
    const JointType t(n, p1, p2, counts);
    const double xi = double(acc.errors) / double(acc.members);
    const double d = kl_divergence(t.as_pmf(), source_pmf);
    if (xi > 0 && !std::isinf(d)) bound += xi * std::exp2(-double(n) * d);
  }
  return {exact_pe, bound};
}

DivergenceBoundReport leakage_bound_rhs(const CodePair& codes, const JointPmf& key_pmf,
                                        std::size_t n, uint64_t cap) {
  const uint32_t p1 = codes.code1.spec().order(), p2 = codes.code2.spec().order();
  const OutputGroup group = group_of(codes, cap);
  const double log_alphabet = std::log2(double(p1) * double(p2));
  const std::vector<double> uniform(group.size(), 1.0 / double(group.size()));

  DivergenceBoundReport rep;
  for (const JointType& t : enumerate_joint_types(n, p1, p2)) {
    const double d = kl_divergence(t.as_pmf(), key_pmf);
    if (std::isinf(d)) continue;
    const double weight = std::exp2(-double(n) * d);
    const std::vector<double> omega = omega_distribution(t, codes, cap);
    rep.lemdiv_mid += kl_divergence(omega, uniform) * weight;
    rep.bound_rhs += delta_statistic_of_omega(omega).starred * weight;
  }
  rep.bound_rhs *= kLog2E * log_alphabet * double(n);
  return rep;
}

LeakageReport leakage_chain_report(const SystemInstance& instance, uint64_t cap) {
  LeakageReport rep;
  rep.n = instance.n;
  rep.m1 = instance.codes.code1.m();
  rep.m2 = instance.codes.code2.m();
  rep.exact_mi = exact_leakage(instance, cap);
  rep.key_divergence = key_divergence(instance.codes, instance.key_pmf, instance.n, cap);
  const DivergenceBoundReport div = leakage_bound_rhs(instance.codes, instance.key_pmf, instance.n, cap);
  rep.lemdiv_mid = div.lemdiv_mid;
  rep.bound_rhs = div.bound_rhs;
  return rep;
}

namespace {

AffineCode code_from_id(uint64_t id, std::size_t n, std::size_t m, const FieldSpec& spec) {
  const uint32_t p = spec.order();
  FieldMatrix a(n, m, spec);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      a.set(i, j, uint32_t(id % p));
      id /= p;
    }
  FieldVec b(m);
  for (std::size_t j = 0; j < m; ++j) {
    b[j] = uint32_t(id % p);
    id /= p;
  }
  return {std::move(a), std::move(b)};
}

}  // namespace

EncoderAuditReport encoder_expectation_audit(std::size_t n, std::size_t m1, std::size_t m2,
                                             const FieldSpec& spec, uint64_t ensemble_cap) {
  const uint32_t p = spec.order();
  const uint64_t e1 = checked_pow(p, (n + 1) * m1, ensemble_cap, "encoder_expectation_audit");
  const uint64_t e2 = checked_pow(p, (n + 1) * m2, ensemble_cap, "encoder_expectation_audit");
  if (e1 > ensemble_cap / e2) throw CapacityError("encoder_expectation_audit: ensemble exceeds cap");
  const uint64_t big_m1 = checked_pow(p, m1, ensemble_cap, "encoder_expectation_audit");
  const uint64_t big_m2 = checked_pow(p, m2, ensemble_cap, "encoder_expectation_audit");
  const uint64_t outputs = big_m1 * big_m2;

  std::vector<AffineCode> codes1, codes2;
  codes1.reserve(e1);
  codes2.reserve(e2);
  for (uint64_t id = 0; id < e1; ++id) codes1.push_back(code_from_id(id, n, m1, spec));
  for (uint64_t id = 0; id < e2; ++id) codes2.push_back(code_from_id(id, n, m2, spec));

  EncoderAuditReport rep;
  rep.expectation_exact = true;
  rep.variance_bounded = true;
  rep.min_variance_slack = std::numeric_limits<double>::infinity();

  const double r1 = double(m1) / double(n) * std::log2(double(p));
  const double r2 = double(m2) / double(n) * std::log2(double(p));
  const double poly = std::pow(double(n + 1), double(p) * double(p));

  for (const JointType& t : enumerate_joint_types(n, p, p)) {
    // Per-member encoded index, precomputed per side.
    std::vector<SequencePair> members;
    for_each_in_type_class(t, ensemble_cap, [&](const SequencePair& k) { members.push_back(k); });
    const uint64_t class_size = members.size();

    std::vector<std::vector<uint64_t>> enc1(e1, std::vector<uint64_t>(class_size));
    std::vector<std::vector<uint64_t>> enc2(e2, std::vector<uint64_t>(class_size));
    auto vec_index = [p](const FieldVec& v) {
      uint64_t idx = 0;
      for (uint32_t d : v) idx = idx * p + d;
      return idx;
    };
    for (uint64_t c = 0; c < e1; ++c)
      for (uint64_t s = 0; s < class_size; ++s)
        enc1[c][s] = vec_index(encode_affine(codes1[c], members[s].seq1));
    for (uint64_t c = 0; c < e2; ++c)
      for (uint64_t s = 0; s < class_size; ++s)
        enc2[c][s] = vec_index(encode_affine(codes2[c], members[s].seq2));

    std::vector<uint64_t> sum(outputs, 0), sumsq(outputs, 0);
    std::vector<uint64_t> count(outputs, 0);
    for (uint64_t c1 = 0; c1 < e1; ++c1) {
      for (uint64_t c2 = 0; c2 < e2; ++c2) {
        std::fill(count.begin(), count.end(), 0);
        for (uint64_t s = 0; s < class_size; ++s)
          ++count[enc1[c1][s] * big_m2 + enc2[c2][s]];
        for (uint64_t y = 0; y < outputs; ++y) {
          sum[y] += count[y];
          sumsq[y] += count[y] * count[y];
        }
      }
    }

    // E[Omega(y)] = sum / (E * |T|) must equal 1 / (M1 M2) exactly.
    const BigInt ensemble = BigInt(e1) * e2;
    for (uint64_t y = 0; y < outputs; ++y) {
      if (BigInt(sum[y]) * outputs != ensemble * class_size) rep.expectation_exact = false;
    }

    // Variance bound with R_i = (m_i / n) log2 p, so M_i = 2^{n R_i}.
    const JointPmf tp = t.as_pmf();
    const double h1 = entropy_of(tp.marginal1());
    const double h2 = entropy_of(tp.marginal2());
    const double h12 = entropy(tp);
    const double theta = std::exp2(-double(n) * (h1 - r1)) + std::exp2(-double(n) * (h2 - r2)) +
                         std::exp2(-double(n) * (h12 - (r1 + r2)));
    const double bound = poly / (double(big_m1) * big_m1 * double(big_m2) * big_m2) * theta;

    const double mean = 1.0 / double(outputs);
    for (uint64_t y = 0; y < outputs; ++y) {
      const double second = double(sumsq[y]) / (double(e1) * double(e2) * double(class_size) *
                                                double(class_size));
      const double var = second - mean * mean;
      rep.max_variance = std::max(rep.max_variance, var);
      rep.min_variance_slack = std::min(rep.min_variance_slack, bound - var);
      if (var > bound + 1e-12) rep.variance_bounded = false;
    }
    ++rep.types_checked;
  }
  return rep;
}

double map_adversary_success(const SystemInstance& instance, uint64_t cap) {
  const OutputGroup group = group_of(instance.codes, cap);
  const std::vector<double> pk = compressed_key_distribution(instance.codes, instance.key_pmf,
                                                             instance.n, cap);

  // For a fixed observable only the most probable source sequence in each
  // phi_lin fiber matters, so reduce sources to max-weight per fiber first.
  const uint32_t p1 = instance.codes.code1.spec().order();
  const uint32_t p2 = instance.codes.code2.spec().order();
  std::vector<double> max_weight(group.size(), 0.0);
  SequencePair x;
  x.seq1.assign(instance.n, 0);
  x.seq2.assign(instance.n, 0);
  bool more1 = true;
  while (more1) {
    const FieldVec y1 = encode_linear(instance.codes.code1, x.seq1);
    std::fill(x.seq2.begin(), x.seq2.end(), 0);
    bool more2 = true;
    while (more2) {
      const double w = sequence_probability(instance.source_pmf, x);
      if (w > 0) {
        const FieldVec y2 = encode_linear(instance.codes.code2, x.seq2);
        const uint64_t idx = group.index_of(y1, y2);
        max_weight[idx] = std::max(max_weight[idx], w);
      }
      more2 = advance_vec(x.seq2, p2);
    }
    more1 = advance_vec(x.seq1, p1);
  }

  double pc = 0;
  for (uint64_t c = 0; c < group.size(); ++c) {
    double best = 0;
    for (uint64_t xi = 0; xi < group.size(); ++xi) {
      if (max_weight[xi] <= 0) continue;
      best = std::max(best, max_weight[xi] * pk[group.sub(c, xi)]);
    }
    pc += best;
  }
  return pc;
}

double source_uniformity(const JointPmf& source_pmf, std::size_t n) {
  return std::pow(source_pmf.max_cell(), double(n));
}

}  // namespace secamp
