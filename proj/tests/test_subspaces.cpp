#include "c0lab/errors.hpp"
#include "c0lab/exact.hpp"
#include "c0lab/subspaces.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <random>
#include <set>

using namespace c0lab;

namespace {

Matrix unit_columns(int n, std::initializer_list<int> idx) {
  Matrix m = Matrix::Zero(n, static_cast<Eigen::Index>(idx.size()));
  int c = 0;
  for (int i : idx)
    m(i, c++) = 1.0;
  return m;
}

InnerFunction random_theta(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(1, max_degree), mult(1, 2);
  std::uniform_real_distribution<double> r(0.0, 0.85), arg(0.0, 6.283185307179586);
  std::vector<BlaschkeZero> zs;
  std::vector<Complex> pts;
  int total = 0;
  const int d = deg(rng);
  while (total < d) {
    const Complex a = std::polar(r(rng), arg(rng));
    bool close = false;
    for (auto p : pts)
      close = close || std::abs(p - a) < 0.05;
    if (close)
      continue;
    const int m = std::min(mult(rng), d - total);
    pts.push_back(a);
    zs.push_back({a, m});
    total += m;
  }
  return InnerFunction(zs);
}

} // namespace

TEST(Subspaces, BlockSubspaceExamples) {
  auto space = build_model_space(InnerFunction::z_power(3));
  const auto m = invariant_subspace_of_block(space, InnerFunction::z_power(1));
  EXPECT_EQ(m.dim(), 2);
  EXPECT_LE(principal_distance(m, span_of(m.ambient, unit_columns(3, {1, 2}))), 1e-14);
  EXPECT_EQ(invariant_subspace_of_block(space, InnerFunction()).dim(), 3);
  EXPECT_EQ(invariant_subspace_of_block(space, InnerFunction::z_power(3)).dim(), 0);
  EXPECT_LE(is_invariant(m).residual, 1e-12);
  EXPECT_THROW(invariant_subspace_of_block(space, InnerFunction::factor({0.5, 0.0})), NotADivisor);
}

TEST(Subspaces, InvarianceCheck) {
  auto amb = make_ambient(InnerFunction::z_power(2), 2);
  EXPECT_TRUE(is_invariant(zero_subspace(amb)).invariant);
  EXPECT_TRUE(is_invariant(full_subspace(amb)).invariant);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    Matrix v(4, 1);
    for (int i = 0; i < 4; ++i)
      v(i, 0) = Complex(g(rng), g(rng));
    const auto check = is_invariant(span_of(amb, v));
    EXPECT_FALSE(check.invariant);
    EXPECT_GT(check.residual, 1e-3);
  }
}

TEST(Subspaces, PrincipalDistanceExamples) {
  auto amb = make_ambient(InnerFunction::z_power(3), 1);
  const auto e0 = span_of(amb, unit_columns(3, {0}));
  const auto e1 = span_of(amb, unit_columns(3, {1}));
  EXPECT_EQ(principal_distance(e0, e0), 0.0);
  EXPECT_NEAR(principal_distance(e0, e1), 1.0, 1e-15);
  for (double t : {0.1, 0.7, 2.0, -1.2}) {
    Matrix v = Matrix::Zero(3, 1);
    v(0, 0) = std::cos(t);
    v(1, 0) = std::sin(t);
    EXPECT_NEAR(principal_distance(e0, span_of(amb, v)), std::abs(std::sin(t)), 1e-14);
  }
  auto other = make_ambient(InnerFunction::z_power(3), 2);
  EXPECT_THROW(principal_distance(e0, zero_subspace(other)), AmbientMismatch);
}

TEST(Subspaces, PrincipalDistanceIsAMetric) {
  auto amb = make_ambient(InnerFunction::z_power(2), 3);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  auto random_span = [&](int k) {
    Matrix v(6, k);
    for (int i = 0; i < v.size(); ++i)
      v.data()[i] = Complex(g(rng), g(rng));
    return span_of(amb, v);
  };
  for (int t = 0; t < 50; ++t) {
    const auto a = random_span(2), b = random_span(2), c = random_span(3);
    const double ab = principal_distance(a, b), bc = principal_distance(b, c),
                 ac = principal_distance(a, c);
    EXPECT_NEAR(ab, principal_distance(b, a), 1e-14);
    EXPECT_LE(ac, ab + bc + 1e-10);
    EXPECT_NEAR(principal_distance(a, a), 0.0, 1e-14);
  }
}

TEST(Subspaces, ImageClosureExamples) {
  auto space = build_model_space(InnerFunction::z_power(1) * InnerFunction::factor({0.4, 0.2}, 2));
  auto amb = std::make_shared<const AmbientSpace>(space, 1);
  const auto full = full_subspace(amb);
  const int n = amb->total_dim();
  EXPECT_LE(principal_distance(image_closure(Matrix::Identity(n, n), full), full), 1e-14);
  EXPECT_EQ(image_closure(Matrix::Zero(n, n), full).dim(), 0);
  for (const auto& phi : divisors(space->theta())) {
    const auto img = image_closure(functional_calculus(*space, phi), full);
    EXPECT_LE(principal_distance(img, invariant_subspace_of_block(space, phi)), 1e-8);
  }
}

TEST(Subspaces, OrthocomplementExamples) {
  auto amb = make_ambient(InnerFunction::z_power(2), 1);
  EXPECT_EQ(orthocomplement(full_subspace(amb)).dim(), 0);
  const auto e1 = span_of(amb, unit_columns(2, {1}));
  EXPECT_LE(principal_distance(orthocomplement(span_of(amb, unit_columns(2, {0}))), e1), 1e-15);
  auto amb3 = make_ambient(InnerFunction::factor({0.3, 0.0}, 2), 3);
  Matrix v = Matrix::Random(6, 2);
  const auto m = span_of(amb3, v);
  const auto c = orthocomplement(m);
  Matrix both(6, 6);
  both << m.frame, c.frame;
  EXPECT_EQ(linalg::numerical_rank(both).rank, 6);
}

// ran phi(S) = ker (theta/phi)(S) for every divisor.
TEST(Subspaces, RangeEqualsKernelOverDivisorLattice) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto theta = random_theta(rng, 6);
    auto space = build_model_space(theta);
    auto amb = std::make_shared<const AmbientSpace>(space, 1);
    for (const auto& phi : divisors(theta)) {
      const auto ran = invariant_subspace_of_block(space, phi);
      const Matrix k = linalg::orthonormal_kernel(functional_calculus(*space, quotient(theta, phi)));
      EXPECT_LE(principal_distance(ran, span_of(amb, k)), 1e-8) << theta.to_string();
    }
  }
}

// Brute force over exact spans of small integer vectors: every invariant
// subspace of the nilpotent block is z^k H^2 - z^d H^2.
TEST(Subspaces, NilpotentLatticeIsAChain) {
  using exact::RationalMatrix;
  for (int d = 1; d <= 4; ++d) {
    const auto op = exact::nilpotent_operator({d});
    std::vector<RationalMatrix> vecs;
    const int range = 1;
    std::vector<int> x(d, -range);
    while (true) {
      RationalMatrix v(d, 1);
      bool nonzero = false;
      for (int i = 0; i < d; ++i) {
        v(i, 0) = x[i];
        nonzero = nonzero || x[i] != 0;
      }
      if (nonzero)
        vecs.push_back(v);
      int i = 0;
      while (i < d && x[i] == range)
        x[i++] = -range;
      if (i == d)
        break;
      ++x[i];
    }
    std::set<std::string> invariant;
    auto consider = [&](const RationalMatrix& cols) {
      const auto basis = exact::canonical_column_basis(cols);
      if (exact::rank(exact::hconcat(basis, op * basis)) == basis.cols())
        invariant.insert(exact::subspace_key(basis));
    };
    const int n = static_cast<int>(vecs.size());
    for (int i = 0; i < n; ++i) {
      consider(vecs[i]);
      for (int j = i + 1; j < n; ++j) {
        consider(exact::hconcat(vecs[i], vecs[j]));
        if (d <= 3)
          for (int k = j + 1; k < n; ++k)
            consider(exact::hconcat(exact::hconcat(vecs[i], vecs[j]), vecs[k]));
      }
    }
    if (d == 4) {
      // Triples of 0/1 vectors, and the whole space.
      std::vector<RationalMatrix> bits;
      for (const auto& v : vecs) {
        bool ok = true;
        for (int i = 0; i < d; ++i)
          ok = ok && v(i, 0) >= 0;
        if (ok)
          bits.push_back(v);
      }
      const int m = static_cast<int>(bits.size());
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          for (int k = j + 1; k < m; ++k)
            consider(exact::hconcat(exact::hconcat(bits[i], bits[j]), bits[k]));
      consider(RationalMatrix::identity(4));
    }
    std::set<std::string> chain;
    for (int k = 1; k <= d; ++k) {
      RationalMatrix b(d, d - k + 1);
      for (int c = 0; c < d - k + 1; ++c)
        b(k - 1 + c, c) = 1;
      chain.insert(exact::subspace_key(exact::canonical_column_basis(b)));
    }
    EXPECT_EQ(invariant, chain) << "d = " << d;

    // The floating block subspaces are the same chain.
    auto space = build_model_space(InnerFunction::z_power(d));
    for (int k = 0; k < d; ++k) {
      const auto m = invariant_subspace_of_block(space, InnerFunction::z_power(k));
      auto amb = m.ambient;
      EXPECT_LE(principal_distance(m, span_of(amb, Matrix::Identity(d, d).rightCols(d - k))), 1e-14);
    }
  }
}

// Distinct zeros: invariant subspaces are spans of eigenvectors, one per
// divisor.
TEST(Subspaces, DistinctZerosLatticeMatchesDivisors) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> r(0.0, 0.8), arg(0.0, 6.283185307179586);
  for (int t = 0; t < 10; ++t) {
    const int d = 1 + t % 4;
    std::vector<BlaschkeZero> zs;
    while (static_cast<int>(zs.size()) < d) {
      const Complex a = std::polar(r(rng), arg(rng));
      bool close = false;
      for (const auto& z : zs)
        close = close || std::abs(z.point - a) < 0.1;
      if (!close)
        zs.push_back({a, 1});
    }
    const InnerFunction theta(zs);
    auto space = build_model_space(theta);
    auto amb = std::make_shared<const AmbientSpace>(space, 1);
    Eigen::ComplexEigenSolver<Matrix> es(space->shift_matrix());
    const Matrix vecs = es.eigenvectors();
    const auto ds = divisors(theta);
    ASSERT_EQ(ds.size(), std::size_t(1) << d);
    std::vector<SubspaceFrame> from_divisors;
    for (const auto& phi : ds)
      from_divisors.push_back(invariant_subspace_of_block(space, phi));
    for (std::size_t i = 0; i < from_divisors.size(); ++i)
      for (std::size_t j = i + 1; j < from_divisors.size(); ++j)
        EXPECT_GT(principal_distance(from_divisors[i], from_divisors[j]), 0.1);
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      Matrix cols(d, 0);
      for (int i = 0; i < d; ++i)
        if (mask & (1u << i)) {
          cols.conservativeResize(d, cols.cols() + 1);
          cols.col(cols.cols() - 1) = vecs.col(i);
        }
      const auto m = span_of(amb, cols);
      int matches = 0;
      for (const auto& f : from_divisors)
        matches += principal_distance(m, f) < 1e-8 ? 1 : 0;
      EXPECT_EQ(matches, 1);
    }
  }
}

TEST(Subspaces, CyclicSubspaceIsInvariant) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    auto amb = make_ambient(random_theta(rng, 4), 1 + t % 3);
    Vector v(amb->total_dim());
    for (int i = 0; i < v.size(); ++i)
      v(i) = Complex(g(rng), g(rng));
    const auto m = cyclic_subspace(amb, {v});
    EXPECT_TRUE(is_invariant(m).invariant);
    EXPECT_LE((m.frame.adjoint() * m.frame - Matrix::Identity(m.dim(), m.dim())).norm(), 1e-12);
    // A generic vector generates a copy of H(theta).
    EXPECT_EQ(m.dim(), amb->block_dim());
  }
}

TEST(Subspaces, BlockDirectSum) {
  auto amb = make_ambient(InnerFunction::z_power(3), 3);
  const auto m = block_direct_sum(
      amb, {InnerFunction(), InnerFunction::z_power(2), InnerFunction::z_power(3)});
  EXPECT_EQ(m.dim(), 3 + 1 + 0);
  EXPECT_TRUE(is_invariant(m).invariant);
  EXPECT_THROW(block_direct_sum(amb, {InnerFunction()}), AmbientMismatch);
}
