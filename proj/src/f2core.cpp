#include "vmlab/f2core.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace vmlab {

F2Vector F2Vector::from_bits(const std::vector<int>& bits) {
  F2Vector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) v.set(i, true);
  return v;
}

void F2Vector::xor_with(const F2Vector& other) {
  if (other.len_ != len_)
    throw std::invalid_argument("F2Vector::xor_with: length mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
}

bool F2Vector::dot(const F2Vector& other) const {
  if (other.len_ != len_)
    throw std::invalid_argument("F2Vector::dot: length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w)
    acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1;
}

std::size_t F2Vector::popcount() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

bool F2Vector::is_zero() const {
  for (std::uint64_t w : words_)
    if (w) return false;
  return true;
}

std::string F2Vector::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

F2Matrix F2Matrix::parse(const std::vector<std::string>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  F2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw std::invalid_argument("F2Matrix::parse: ragged rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (rows[i][j] == '1')
        m.set(i, j, true);
      else if (rows[i][j] != '0')
        throw std::invalid_argument("F2Matrix::parse: expected '0' or '1'");
    }
  }
  return m;
}

void F2Matrix::xor_row(std::size_t dst, std::size_t src) {
  std::uint64_t* d = words_.data() + dst * stride_;
  const std::uint64_t* s = words_.data() + src * stride_;
  for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void F2Matrix::xor_row_with(std::size_t dst, const F2Vector& v) {
  if (v.size() != cols_)
    throw std::invalid_argument("F2Matrix::xor_row_with: length mismatch");
  std::uint64_t* d = words_.data() + dst * stride_;
  auto src = v.words();
  for (std::size_t w = 0; w < stride_; ++w) d[w] ^= src[w];
}

void F2Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::uint64_t* pa = words_.data() + a * stride_;
  std::uint64_t* pb = words_.data() + b * stride_;
  for (std::size_t w = 0; w < stride_; ++w) std::swap(pa[w], pb[w]);
}

F2Vector F2Matrix::row(std::size_t i) const {
  F2Vector v(cols_);
  auto dst = v.words();
  auto src = row_words(i);
  for (std::size_t w = 0; w < stride_; ++w) dst[w] = src[w];
  return v;
}

F2Vector F2Matrix::column(std::size_t j) const {
  F2Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    if (get(i, j)) v.set(i, true);
  return v;
}

void F2Matrix::set_row(std::size_t i, const F2Vector& v) {
  if (v.size() != cols_)
    throw std::invalid_argument("F2Matrix::set_row: length mismatch");
  auto dst = row_words(i);
  auto src = v.words();
  for (std::size_t w = 0; w < stride_; ++w) dst[w] = src[w];
}

void F2Matrix::set_column(std::size_t j, const F2Vector& v) {
  if (v.size() != rows_)
    throw std::invalid_argument("F2Matrix::set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) set(i, j, v.get(i));
}

bool F2Matrix::operator==(const F2Matrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ &&
         words_ == other.words_;
}

bool F2Matrix::is_zero() const {
  for (std::uint64_t w : words_)
    if (w) return false;
  return true;
}

bool F2Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (get(i, j) != get(j, i)) return false;
  return true;
}

bool F2Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(rows_);
}

bool F2Matrix::is_unit_upper_triangular() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (!get(i, i)) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (get(i, j)) return false;
  }
  return true;
}

std::string F2Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) os << (get(i, j) ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

std::size_t rank(const F2Matrix& m) {
  F2Matrix a = m;
  std::size_t piv = 0;
  for (std::size_t col = 0; col < a.cols() && piv < a.rows(); ++col) {
    std::size_t r = piv;
    while (r < a.rows() && !a.get(r, col)) ++r;
    if (r == a.rows()) continue;
    a.swap_rows(piv, r);
    for (std::size_t i = piv + 1; i < a.rows(); ++i)
      if (a.get(i, col)) a.xor_row(i, piv);
    ++piv;
  }
  return piv;
}

F2Matrix transpose(const F2Matrix& m) {
  F2Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.get(i, j)) t.set(j, i, true);
  return t;
}

std::optional<F2Matrix> invert(const F2Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("invert: matrix is not square");
  const std::size_t n = m.rows();
  F2Matrix a = m;
  F2Matrix inv = F2Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t r = col;
    while (r < n && !a.get(r, col)) ++r;
    if (r == n) return std::nullopt;
    a.swap_rows(col, r);
    inv.swap_rows(col, r);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != col && a.get(i, col)) {
        a.xor_row(i, col);
        inv.xor_row(i, col);
      }
    }
  }
  return inv;
}

F2Matrix multiply(const F2Matrix& a, const F2Matrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("multiply: dimension mismatch");
  F2Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a.get(i, k)) out.xor_row_with(i, b.row(k));
  return out;
}

F2Vector multiply(const F2Matrix& a, const F2Vector& x) {
  if (a.cols() != x.size())
    throw std::invalid_argument("multiply: dimension mismatch");
  F2Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (a.row(i).dot(x)) out.set(i, true);
  return out;
}

F2Matrix add(const F2Matrix& a, const F2Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("add: dimension mismatch");
  F2Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) out.xor_row_with(i, b.row(i));
  return out;
}

F2Matrix tensor(const F2Matrix& a, const F2Matrix& b) {
  F2Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a.get(i, j)) continue;
      for (std::size_t ii = 0; ii < b.rows(); ++ii)
        for (std::size_t jj = 0; jj < b.cols(); ++jj)
          if (b.get(ii, jj))
            out.set(i * b.rows() + ii, j * b.cols() + jj, true);
    }
  return out;
}

F2Matrix off_diag(const F2Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("off_diag: matrix is not square");
  F2Matrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) out.set(i, i, false);
  return out;
}

std::optional<F2Matrix> solve_unit_upper_triangular(const F2Matrix& x,
                                                    const F2Matrix& z) {
  if (x.rows() != z.rows() || x.cols() != z.cols())
    throw std::invalid_argument(
        "solve_unit_upper_triangular: shape mismatch between x and z");
  const std::size_t r = x.cols();
  F2Matrix q = F2Matrix::identity(r);

  // Echelon basis of the columns of x seen so far. Each basis vector keeps
  // the combination of original column indices that produced it, so a
  // successful reduction of the target reads off the Q entries directly.
  struct BasisVec {
    F2Vector vec;
    F2Vector combo;  // length r, support within columns already processed
    std::size_t pivot;
  };
  std::vector<BasisVec> basis;

  auto reduce = [&](F2Vector v, F2Vector combo)
      -> std::pair<F2Vector, F2Vector> {
    for (const BasisVec& b : basis) {
      if (v.get(b.pivot)) {
        v.xor_with(b.vec);
        combo.xor_with(b.combo);
      }
    }
    return {std::move(v), std::move(combo)};
  };

  for (std::size_t k = 0; k < r; ++k) {
    // Need sum_{j<k} c_j x_j = z_k + x_k; free choices fall out as zeros
    // because the reduction only touches basis columns.
    F2Vector target = z.column(k);
    target.xor_with(x.column(k));
    auto [res, combo] = reduce(std::move(target), F2Vector(r));
    if (!res.is_zero()) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j)
      if (combo.get(j)) q.set(j, k, true);

    // Fold column k into the basis for later targets.
    F2Vector ck(r);
    ck.set(k, true);
    auto [vk, combok] = reduce(x.column(k), std::move(ck));
    if (!vk.is_zero()) {
      std::size_t p = 0;
      while (!vk.get(p)) ++p;
      basis.push_back({std::move(vk), std::move(combok), p});
    }
  }
  return q;
}

}  // namespace vmlab
