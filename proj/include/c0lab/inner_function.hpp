#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace c0lab {

using Complex = std::complex<double>;

/// Two zero points closer than this are the same zero.
inline constexpr double kZeroMatchTol = 1e-9;
/// Distinct zeros of one function must be at least this far apart.
inline constexpr double kZeroSeparation = 1e-7;
/// Zeros must satisfy |a| <= 1 - kDiscMargin.
inline constexpr double kDiscMargin = 1e-9;
inline constexpr int kMaxDegree = 64;

struct BlaschkeZero {
  Complex point;
  int mult = 1;
};

/// Finite Blaschke product prod_i ((z - a_i) / (1 - conj(a_i) z))^{m_i},
/// normalized with unimodular constant 1. The empty product is the constant 1.
///
/// Zeros are stored sorted lexicographically on (re, im); inputs whose points
/// agree to within kZeroMatchTol are merged.
class InnerFunction {
public:
  InnerFunction() = default;
  explicit InnerFunction(std::vector<BlaschkeZero> zeros);

  /// z^d.
  static InnerFunction z_power(int d);
  /// b_a^mult.
  static InnerFunction factor(Complex a, int mult = 1);

  std::span<const BlaschkeZero> zeros() const { return zeros_; }
  int degree() const { return degree_; }
  bool is_one() const { return zeros_.empty(); }
  /// True when every zero sits at the origin (theta = z^d).
  bool is_z_power() const;
  int multiplicity_at(Complex a) const;

  /// Zero points repeated by multiplicity, in storage order.
  std::vector<Complex> zero_sequence() const;

  /// Value at w, |w| < 1. Throws OutsideDisc otherwise.
  Complex operator()(Complex w) const;

  std::string to_string() const;

  friend bool operator==(const InnerFunction& u, const InnerFunction& v);

private:
  std::vector<BlaschkeZero> zeros_;
  int degree_ = 0;
};

bool divides(const InnerFunction& u, const InnerFunction& v);
InnerFunction gcd(const InnerFunction& u, const InnerFunction& v);
InnerFunction lcm(const InnerFunction& u, const InnerFunction& v);
/// v / u. Throws NotADivisor unless u | v.
InnerFunction quotient(const InnerFunction& v, const InnerFunction& u);
/// Multiset union of zeros.
InnerFunction operator*(const InnerFunction& u, const InnerFunction& v);
Complex evaluate(const InnerFunction& u, Complex w);

/// Every inner divisor of theta (the full divisor lattice).
std::vector<InnerFunction> divisors(const InnerFunction& theta);

} // namespace c0lab
