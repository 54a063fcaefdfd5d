#include "secamp/field.hpp"

namespace secamp {

namespace {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

FieldSpec::FieldSpec(uint32_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("FieldSpec: order must be prime, got " + std::to_string(p));
}

uint32_t FieldSpec::inv(uint32_t a) const {
  if (a % p_ == 0) throw DivisionByZeroError("FieldSpec::inv: zero has no inverse");
  a %= p_;
  // p is tiny; brute-force scan.
  for (uint32_t b = 1; b < p_; ++b)
    if (mul(a, b) == 1) return b;
  throw std::logic_error("FieldSpec::inv: unreachable");
}

FieldElement::FieldElement(uint32_t value, const FieldSpec& spec) : value_(value % spec.order()), spec_(&spec) {}

void FieldElement::require_same_spec(const FieldElement& o) const {
  if (*spec_ != *o.spec_) throw FieldMismatchError("FieldElement: operands from different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_spec(o);
  return {spec_->add(value_, o.value_), *spec_};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_spec(o);
  return {spec_->sub(value_, o.value_), *spec_};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_spec(o);
  return {spec_->mul(value_, o.value_), *spec_};
}

FieldElement FieldElement::inverse() const { return {spec_->inv(value_), *spec_}; }

bool FieldElement::operator==(const FieldElement& o) const {
  return *spec_ == *o.spec_ && value_ == o.value_;
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, const FieldSpec& spec)
    : rows_(rows), cols_(cols), spec_(spec), entries_(rows * cols, 0) {}

void FieldMatrix::set(std::size_t r, std::size_t c, uint32_t v) {
  entries_[r * cols_ + c] = v % spec_.order();
}

FieldMatrix FieldMatrix::identity(std::size_t n, const FieldSpec& spec) {
  FieldMatrix m(n, n, spec);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

bool FieldMatrix::operator==(const FieldMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && spec_ == o.spec_ && entries_ == o.entries_;
}

FieldVec vec_mat_mul(const FieldVec& x, const FieldMatrix& a) {
  if (x.size() != a.rows())
    throw std::invalid_argument("vec_mat_mul: vector length does not match matrix rows");
  const FieldSpec& f = a.spec();
  FieldVec y(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j)
      y[j] = f.add(y[j], f.mul(x[i], a.at(i, j)));
  }
  return y;
}

FieldVec vec_add(const FieldVec& x, const FieldVec& y, const FieldSpec& spec) {
  if (x.size() != y.size()) throw std::invalid_argument("vec_add: length mismatch");
  FieldVec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = spec.add(x[i], y[i]);
  return z;
}

FieldVec vec_sub(const FieldVec& x, const FieldVec& y, const FieldSpec& spec) {
  if (x.size() != y.size()) throw std::invalid_argument("vec_sub: length mismatch");
  FieldVec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = spec.sub(x[i], y[i]);
  return z;
}

AffineSolution solve_affine_system(const FieldMatrix& a, const FieldVec& y) {
  if (y.size() != a.cols())
    throw std::invalid_argument("solve_affine_system: rhs length does not match matrix cols");
  const FieldSpec& f = a.spec();
  const std::size_t n = a.rows(), m = a.cols();

  // Work on the transposed system A^T x^T = y^T, augmented with y.
  // Columns of the work matrix are the n unknowns.
  std::vector<FieldVec> rows(m, FieldVec(n + 1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = a.at(j, i);
    rows[i][n] = y[i];
  }

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t piv = r;
    while (piv < m && rows[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(rows[r], rows[piv]);
    const uint32_t inv = f.inv(rows[r][c]);
    for (std::size_t j = c; j <= n; ++j) rows[r][j] = f.mul(rows[r][j], inv);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const uint32_t factor = rows[i][c];
      for (std::size_t j = c; j <= n; ++j)
        rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
    }
    pivot_col.push_back(c);
    ++r;
  }

  AffineSolution sol;
  sol.rank = pivot_col.size();

  // Inconsistent iff a zero row has nonzero rhs.
  for (std::size_t i = sol.rank; i < m; ++i)
    if (rows[i][n] != 0) {
      // Kernel basis is still well defined.
      break;
    }
  bool consistent = true;
  for (std::size_t i = sol.rank; i < m; ++i)
    if (rows[i][n] != 0) consistent = false;

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;

  if (consistent) {
    FieldVec x(n, 0);
    for (std::size_t i = 0; i < sol.rank; ++i) x[pivot_col[i]] = rows[i][n];
    sol.particular = std::move(x);
  }

  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    FieldVec v(n, 0);
    v[c] = 1;
    for (std::size_t i = 0; i < sol.rank; ++i)
      v[pivot_col[i]] = f.neg(rows[i][c]);
    sol.kernel_basis.push_back(std::move(v));
  }
  return sol;
}

}  // namespace secamp
