#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace c0lab::exact {

using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix over the rationals.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  RationalMatrix transpose() const;
  RationalMatrix col(int c) const;
  bool is_zero() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, const RationalMatrix& a);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix hconcat(const RationalMatrix& a, const RationalMatrix& b);

/// Reduced row echelon form; `pivots` receives the pivot columns.
RationalMatrix rref(const RationalMatrix& a, std::vector<int>* pivots = nullptr);
int rank(const RationalMatrix& a);
/// Basis of {x : a x = 0} as columns.
RationalMatrix nullspace(const RationalMatrix& a);
Rational determinant(RationalMatrix a);

/// Basis (columns) of the column space, in canonical form: two matrices span
/// the same space iff their canonical bases are equal.
RationalMatrix canonical_column_basis(const RationalMatrix& a);
std::string subspace_key(const RationalMatrix& canonical_basis);

/// Direct sum of lower nilpotent Jordan blocks S(z^{d_i}) in monomial bases.
RationalMatrix nilpotent_operator(const std::vector<int>& block_sizes);

/// The span of T^k x over all k and all seed columns.
RationalMatrix krylov_span(const RationalMatrix& op, const RationalMatrix& seeds);

/// Block-size partition (non-increasing) from the rank sequence
/// r_0 = dim, r_1, r_2, ... of powers of a nilpotent operator.
std::vector<int> partition_from_ranks(const std::vector<int>& ranks);

/// Jordan block sizes at 0 of T restricted to the invariant subspace spanned
/// by the columns of `basis`.
std::vector<int> restriction_partition(const RationalMatrix& op, const RationalMatrix& basis);
/// Jordan block sizes at 0 of the compression of T to the orthogonal
/// complement of span(basis) (equivalently, of the quotient operator).
std::vector<int> compression_partition(const RationalMatrix& op, const RationalMatrix& basis);

/// Basis of the commutant {X : X T = T X}.
std::vector<RationalMatrix> commutant_basis(const RationalMatrix& op);

/// Basis of {X in span(commutant) : X span(b1) contained in span(b2)}.
std::vector<RationalMatrix> mapping_space(const std::vector<RationalMatrix>& commutant,
                                          const RationalMatrix& b1, const RationalMatrix& b2);

/// Whether some element of span(basis) is invertible. Decided exactly: the
/// determinant of a generic combination is a polynomial of degree n in the
/// coefficients, so a nonzero evaluation proves invertibility and vanishing on
/// a full grid {0..n}^k proves the polynomial is identically zero.
bool span_contains_invertible(const std::vector<RationalMatrix>& basis, std::uint64_t seed = 1);

} // namespace c0lab::exact
