#include "c0lab/inner_function.hpp"

#include "c0lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace c0lab {

namespace {

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real())
    return a.real() < b.real();
  return a.imag() < b.imag();
}

// Index of the zero in `zs` matching `a`, or -1.
int find_match(std::span<const BlaschkeZero> zs, Complex a) {
  for (std::size_t i = 0; i < zs.size(); ++i)
    if (std::abs(zs[i].point - a) <= kZeroMatchTol)
      return static_cast<int>(i);
  return -1;
}

} // namespace

InnerFunction::InnerFunction(std::vector<BlaschkeZero> zeros) {
  for (const auto& z : zeros) {
    if (z.mult < 1)
      throw InvalidInnerFunction("zero multiplicity must be positive");
    if (!std::isfinite(z.point.real()) || !std::isfinite(z.point.imag()))
      throw InvalidInnerFunction("zero point is not finite");
    if (std::abs(z.point) > 1.0 - kDiscMargin)
      throw InvalidInnerFunction("zero outside the open unit disc");

    int hit = find_match(zeros_, z.point);
    if (hit >= 0) {
      zeros_[hit].mult += z.mult;
      continue;
    }
    for (const auto& other : zeros_)
      if (std::abs(other.point - z.point) < kZeroSeparation)
        throw InvalidInnerFunction("distinct zeros closer than the separation limit");
    zeros_.push_back(z);
  }
  std::sort(zeros_.begin(), zeros_.end(),
            [](const BlaschkeZero& a, const BlaschkeZero& b) { return lex_less(a.point, b.point); });
  degree_ = 0;
  for (const auto& z : zeros_)
    degree_ += z.mult;
  if (degree_ > kMaxDegree)
    throw InvalidInnerFunction("degree exceeds " + std::to_string(kMaxDegree));
}

InnerFunction InnerFunction::z_power(int d) {
  if (d < 0)
    throw InvalidInnerFunction("negative power");
  if (d == 0)
    return {};
  return InnerFunction({{Complex(0.0, 0.0), d}});
}

InnerFunction InnerFunction::factor(Complex a, int mult) {
  return InnerFunction({{a, mult}});
}

bool InnerFunction::is_z_power() const {
  return std::all_of(zeros_.begin(), zeros_.end(),
                     [](const BlaschkeZero& z) { return z.point == Complex(0.0, 0.0); });
}

int InnerFunction::multiplicity_at(Complex a) const {
  int i = find_match(zeros_, a);
  return i < 0 ? 0 : zeros_[i].mult;
}

std::vector<Complex> InnerFunction::zero_sequence() const {
  std::vector<Complex> out;
  out.reserve(degree_);
  for (const auto& z : zeros_)
    for (int k = 0; k < z.mult; ++k)
      out.push_back(z.point);
  return out;
}

Complex InnerFunction::operator()(Complex w) const {
  if (!(std::abs(w) < 1.0))
    throw OutsideDisc("evaluation point outside the open unit disc");
  Complex value(1.0, 0.0);
  for (const auto& z : zeros_) {
    Complex b = (w - z.point) / (1.0 - std::conj(z.point) * w);
    for (int k = 0; k < z.mult; ++k)
      value *= b;
  }
  return value;
}

std::string InnerFunction::to_string() const {
  if (zeros_.empty())
    return "1";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& z : zeros_) {
    if (!first)
      os << "*";
    first = false;
    if (z.point == Complex(0.0, 0.0))
      os << "z";
    else if (z.point.imag() == 0.0)
      os << "b(" << z.point.real() << ")";
    else
      os << "b(" << z.point.real() << (z.point.imag() < 0 ? "" : "+") << z.point.imag() << "i)";
    if (z.mult > 1)
      os << "^" << z.mult;
  }
  return os.str();
}

bool operator==(const InnerFunction& u, const InnerFunction& v) {
  if (u.degree_ != v.degree_ || u.zeros_.size() != v.zeros_.size())
    return false;
  for (const auto& z : u.zeros_)
    if (v.multiplicity_at(z.point) != z.mult)
      return false;
  return true;
}

bool divides(const InnerFunction& u, const InnerFunction& v) {
  for (const auto& z : u.zeros())
    if (v.multiplicity_at(z.point) < z.mult)
      return false;
  return true;
}

InnerFunction gcd(const InnerFunction& u, const InnerFunction& v) {
  std::vector<BlaschkeZero> out;
  for (const auto& z : u.zeros()) {
    int m = std::min(z.mult, v.multiplicity_at(z.point));
    if (m > 0)
      out.push_back({z.point, m});
  }
  return InnerFunction(std::move(out));
}

InnerFunction lcm(const InnerFunction& u, const InnerFunction& v) {
  std::vector<BlaschkeZero> out;
  for (const auto& z : u.zeros())
    out.push_back({z.point, std::max(z.mult, v.multiplicity_at(z.point))});
  for (const auto& z : v.zeros())
    if (u.multiplicity_at(z.point) == 0)
      out.push_back(z);
  return InnerFunction(std::move(out));
}

InnerFunction quotient(const InnerFunction& v, const InnerFunction& u) {
  if (!divides(u, v))
    throw NotADivisor(u.to_string() + " does not divide " + v.to_string());
  std::vector<BlaschkeZero> out;
  for (const auto& z : v.zeros()) {
    int m = z.mult - u.multiplicity_at(z.point);
    if (m > 0)
      out.push_back({z.point, m});
  }
  return InnerFunction(std::move(out));
}

InnerFunction operator*(const InnerFunction& u, const InnerFunction& v) {
  std::vector<BlaschkeZero> all(u.zeros().begin(), u.zeros().end());
  all.insert(all.end(), v.zeros().begin(), v.zeros().end());
  return InnerFunction(std::move(all));
}

Complex evaluate(const InnerFunction& u, Complex w) { return u(w); }

std::vector<InnerFunction> divisors(const InnerFunction& theta) {
  std::vector<std::vector<BlaschkeZero>> acc{{}};
  for (const auto& z : theta.zeros()) {
    std::vector<std::vector<BlaschkeZero>> next;
    for (const auto& partial : acc)
      for (int k = 0; k <= z.mult; ++k) {
        auto p = partial;
        if (k > 0)
          p.push_back({z.point, k});
        next.push_back(std::move(p));
      }
    acc = std::move(next);
  }
  std::vector<InnerFunction> out;
  out.reserve(acc.size());
  for (auto& zs : acc)
    out.emplace_back(std::move(zs));
  return out;
}

} // namespace c0lab
