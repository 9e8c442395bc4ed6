#include "c0lab/exact.hpp"

#include "c0lab/errors.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace c0lab::exact {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix RationalMatrix::col(int c) const {
  RationalMatrix out(rows_, 1);
  for (int r = 0; r < rows_; ++r)
    out(r, 0) = (*this)(r, c);
  return out;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_)
    throw PreconditionViolated("rational matrix product: size mismatch");
  RationalMatrix out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (x == 0)
        continue;
      for (int j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0)
          out(i, j) += x * b(k, j);
    }
  return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i)
    out.data_[i] += b.data_[i];
  return out;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i)
    out.data_[i] -= b.data_[i];
  return out;
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& a) {
  RationalMatrix out = a;
  for (auto& x : out.data_)
    x *= s;
  return out;
}

RationalMatrix hconcat(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows())
    throw PreconditionViolated("hconcat: row mismatch");
  RationalMatrix out(a.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c)
      out(r, c) = a(r, c);
    for (int c = 0; c < b.cols(); ++c)
      out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

RationalMatrix rref(const RationalMatrix& in, std::vector<int>* pivots) {
  RationalMatrix a = in;
  std::vector<int> piv;
  int row = 0;
  for (int c = 0; c < a.cols() && row < a.rows(); ++c) {
    int p = row;
    while (p < a.rows() && a(p, c) == 0)
      ++p;
    if (p == a.rows())
      continue;
    if (p != row)
      for (int j = 0; j < a.cols(); ++j)
        std::swap(a(p, j), a(row, j));
    const Rational inv = 1 / a(row, c);
    for (int j = c; j < a.cols(); ++j)
      a(row, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, c) == 0)
        continue;
      const Rational f = a(i, c);
      for (int j = c; j < a.cols(); ++j)
        a(i, j) -= f * a(row, j);
    }
    piv.push_back(c);
    ++row;
  }
  if (pivots)
    *pivots = std::move(piv);
  return a;
}

int rank(const RationalMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0)
    return 0;
  std::vector<int> piv;
  rref(a, &piv);
  return static_cast<int>(piv.size());
}

RationalMatrix nullspace(const RationalMatrix& a) {
  std::vector<int> piv;
  RationalMatrix r = rref(a, &piv);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : piv)
    is_pivot[c] = true;
  const int nfree = a.cols() - static_cast<int>(piv.size());
  RationalMatrix out(a.cols(), nfree);
  int k = 0;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot[f])
      continue;
    out(f, k) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i)
      out(piv[i], k) = -r(static_cast<int>(i), f);
    ++k;
  }
  return out;
}

Rational determinant(RationalMatrix a) {
  if (a.rows() != a.cols())
    throw PreconditionViolated("determinant of a non-square matrix");
  const int n = a.rows();
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a(p, c) == 0)
      ++p;
    if (p == n)
      return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j)
        std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    const Rational inv = 1 / a(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (a(i, c) == 0)
        continue;
      const Rational f = a(i, c) * inv;
      for (int j = c; j < n; ++j)
        a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

RationalMatrix canonical_column_basis(const RationalMatrix& a) {
  std::vector<int> piv;
  RationalMatrix r = rref(a.transpose(), &piv);
  RationalMatrix out(a.rows(), static_cast<int>(piv.size()));
  for (int i = 0; i < out.cols(); ++i)
    for (int j = 0; j < a.rows(); ++j)
      out(j, i) = r(i, j);
  return out;
}

std::string subspace_key(const RationalMatrix& b) {
  std::ostringstream os;
  os << b.rows() << 'x' << b.cols() << ':';
  for (int c = 0; c < b.cols(); ++c)
    for (int r = 0; r < b.rows(); ++r)
      os << b(r, c) << ',';
  return os.str();
}

RationalMatrix nilpotent_operator(const std::vector<int>& block_sizes) {
  int n = 0;
  for (int d : block_sizes)
    n += d;
  RationalMatrix t(n, n);
  int offset = 0;
  for (int d : block_sizes) {
    for (int i = 1; i < d; ++i)
      t(offset + i, offset + i - 1) = 1;
    offset += d;
  }
  return t;
}

RationalMatrix krylov_span(const RationalMatrix& op, const RationalMatrix& seeds) {
  RationalMatrix basis(op.rows(), 0);
  for (int c = 0; c < seeds.cols(); ++c) {
    RationalMatrix v = seeds.col(c);
    for (int k = 0; k <= op.rows(); ++k) {
      RationalMatrix trial = hconcat(basis, v);
      if (rank(trial) == basis.cols())
        break;
      basis = canonical_column_basis(trial);
      v = op * v;
    }
  }
  return canonical_column_basis(basis);
}

std::vector<int> partition_from_ranks(const std::vector<int>& ranks) {
  // blocks of size >= k number ranks[k-1] - ranks[k]
  std::vector<int> at_least;
  for (std::size_t k = 1; k < ranks.size(); ++k)
    at_least.push_back(ranks[k - 1] - ranks[k]);
  std::vector<int> parts;
  const int count = at_least.empty() ? 0 : at_least.front();
  for (int n = 0; n < count; ++n) {
    int size = 0;
    for (int c : at_least)
      if (c > n)
        ++size;
    parts.push_back(size);
  }
  return parts;
}

std::vector<int> restriction_partition(const RationalMatrix& op, const RationalMatrix& basis) {
  std::vector<int> ranks{rank(basis)};
  RationalMatrix img = basis;
  while (ranks.back() > 0) {
    img = op * img;
    int r = rank(img);
    if (r == ranks.back())
      throw NotAnnihilated("operator is not nilpotent on the subspace");
    ranks.push_back(r);
  }
  return partition_from_ranks(ranks);
}

std::vector<int> compression_partition(const RationalMatrix& op, const RationalMatrix& basis) {
  const int dim_m = rank(basis);
  std::vector<int> ranks{op.rows() - dim_m};
  RationalMatrix power = RationalMatrix::identity(op.rows());
  while (ranks.back() > 0) {
    power = op * power;
    int r = rank(hconcat(power, basis)) - dim_m;
    if (r == ranks.back())
      throw NotAnnihilated("compression is not nilpotent");
    ranks.push_back(r);
  }
  return partition_from_ranks(ranks);
}

std::vector<RationalMatrix> commutant_basis(const RationalMatrix& op) {
  const int n = op.rows();
  // unknown X(i, j) at index i * n + j; equation (XT - TX)(r, c) = 0.
  RationalMatrix sys(n * n, n * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int eq = r * n + c;
      for (int k = 0; k < n; ++k) {
        if (op(k, c) != 0)
          sys(eq, r * n + k) += op(k, c);
        if (op(r, k) != 0)
          sys(eq, k * n + c) -= op(r, k);
      }
    }
  RationalMatrix ns = nullspace(sys);
  std::vector<RationalMatrix> out;
  for (int b = 0; b < ns.cols(); ++b) {
    RationalMatrix x(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        x(i, j) = ns(i * n + j, b);
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<RationalMatrix> mapping_space(const std::vector<RationalMatrix>& commutant,
                                          const RationalMatrix& b1, const RationalMatrix& b2) {
  // rows of `ann` span the annihilator of span(b2)
  const RationalMatrix ann = nullspace(b2.transpose()).transpose();
  const int k = static_cast<int>(commutant.size());
  std::vector<RationalMatrix> images;
  images.reserve(k);
  for (const auto& x : commutant)
    images.push_back(ann * x * b1);
  const int eqs = ann.rows() * b1.cols();
  RationalMatrix sys(eqs, k);
  for (int i = 0; i < k; ++i)
    for (int r = 0; r < ann.rows(); ++r)
      for (int c = 0; c < b1.cols(); ++c)
        sys(r * b1.cols() + c, i) = images[i](r, c);
  RationalMatrix coeffs = nullspace(sys);
  std::vector<RationalMatrix> out;
  for (int j = 0; j < coeffs.cols(); ++j) {
    RationalMatrix x(commutant.front().rows(), commutant.front().cols());
    for (int i = 0; i < k; ++i)
      if (coeffs(i, j) != 0)
        x = x + coeffs(i, j) * commutant[i];
    out.push_back(std::move(x));
  }
  return out;
}

bool span_contains_invertible(const std::vector<RationalMatrix>& basis, std::uint64_t seed) {
  if (basis.empty())
    return false;
  const int n = basis.front().rows();
  const int k = static_cast<int>(basis.size());
  auto combo = [&](const std::vector<long>& t) {
    RationalMatrix x(n, n);
    for (int i = 0; i < k; ++i)
      if (t[i] != 0)
        x = x + Rational(t[i]) * basis[i];
    return x;
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coin(-1000, 1000);
  std::vector<long> t(k);
  for (int trial = 0; trial < 8; ++trial) {
    for (auto& v : t)
      v = coin(rng);
    if (determinant(combo(t)) != 0)
      return true;
  }
  // Exhaustive grid {0..n}^k: a nonzero polynomial of degree <= n in each
  // variable cannot vanish on all of it.
  std::fill(t.begin(), t.end(), 0);
  while (true) {
    if (determinant(combo(t)) != 0)
      return true;
    int i = 0;
    while (i < k && t[i] == n) {
      t[i] = 0;
      ++i;
    }
    if (i == k)
      return false;
    ++t[i];
  }
}

} // namespace c0lab::exact
