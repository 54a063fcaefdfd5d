#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace secamp {

/// Error thrown when operands belong to different fields.
struct FieldMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DivisionByZeroError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Prime field GF(p). Elements are stored as machine integers in [0, p),
/// reduced eagerly after every operation. Only small primes are needed
/// here, so trial division suffices as the primality check.
class FieldSpec {
 public:
  explicit FieldSpec(uint32_t p);

  uint32_t order() const { return p_; }

  uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % p_; }
  uint32_t sub(uint32_t a, uint32_t b) const { return (a + p_ - b) % p_; }
  uint32_t neg(uint32_t a) const { return (p_ - a) % p_; }
  uint32_t mul(uint32_t a, uint32_t b) const { return (a * b) % p_; }
  uint32_t inv(uint32_t a) const;

  bool operator==(const FieldSpec& o) const { return p_ == o.p_; }
  bool operator!=(const FieldSpec& o) const { return p_ != o.p_; }

 private:
  uint32_t p_;
};

/// A single element together with a reference to its field. Mostly used at
/// API boundaries; bulk code works on digit vectors with an explicit
/// FieldSpec to avoid per-element overhead.
class FieldElement {
 public:
  FieldElement(uint32_t value, const FieldSpec& spec);

  uint32_t value() const { return value_; }
  const FieldSpec& spec() const { return *spec_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement inverse() const;

  bool operator==(const FieldElement& o) const;

 private:
  void require_same_spec(const FieldElement& o) const;

  uint32_t value_;
  const FieldSpec* spec_;
};

/// Digit vector over GF(p); values in [0, p).
using FieldVec = std::vector<uint32_t>;

/// Dense row-major matrix over GF(p).
class FieldMatrix {
 public:
  FieldMatrix(std::size_t rows, std::size_t cols, const FieldSpec& spec);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldSpec& spec() const { return spec_; }

  uint32_t at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, uint32_t v);

  static FieldMatrix identity(std::size_t n, const FieldSpec& spec);

  bool operator==(const FieldMatrix& o) const;

 private:
  std::size_t rows_, cols_;
  FieldSpec spec_;
  std::vector<uint32_t> entries_;
};

/// Row-vector times matrix: x (length rows) * A -> length cols.
FieldVec vec_mat_mul(const FieldVec& x, const FieldMatrix& a);

FieldVec vec_add(const FieldVec& x, const FieldVec& y, const FieldSpec& spec);
FieldVec vec_sub(const FieldVec& x, const FieldVec& y, const FieldSpec& spec);

/// Solution of the left system xA = y.
///
/// `particular` is one solution (empty optional when the system is
/// inconsistent); `kernel_basis` spans the left kernel {v : vA = 0}, so the
/// full preimage is particular + span(kernel_basis) with p^(rows - rank A)
/// members. Gaussian elimination picks the first nonzero pivot in each
/// column, which keeps kernel bases reproducible across runs.
struct AffineSolution {
  std::optional<FieldVec> particular;
  std::vector<FieldVec> kernel_basis;
  std::size_t rank = 0;
};

AffineSolution solve_affine_system(const FieldMatrix& a, const FieldVec& y);

}  // namespace secamp
