#include "c0lab/quasiaffine.hpp"

#include "c0lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace c0lab {

WeightSchedule::WeightSchedule(ScheduleKind kind, std::vector<double> values)
    : kind_(kind), values_(std::move(values)) {
  for (double c : values_)
    if (!(c > 0.0) || !std::isfinite(c))
      throw PreconditionViolated("schedule weights must be positive and finite");
}

WeightSchedule WeightSchedule::factorial(int length) {
  std::vector<double> v(std::max(length, 0));
  double f = 1.0;
  for (int n = 0; n < length; ++n) {
    f *= n + 1;
    v[n] = 1.0 / f;
  }
  return {ScheduleKind::factorial, std::move(v)};
}

WeightSchedule WeightSchedule::polynomial(int length, double alpha) {
  std::vector<double> v(std::max(length, 0));
  for (int n = 0; n < length; ++n)
    v[n] = std::pow(n + 1.0, -alpha);
  return {ScheduleKind::polynomial, std::move(v)};
}

WeightSchedule WeightSchedule::custom(std::vector<double> values) {
  return {ScheduleKind::custom, std::move(values)};
}

double WeightSchedule::operator[](int n) const {
  if (n < 0 || n >= size())
    throw TruncationTooSmall("weight schedule materialized to " + std::to_string(size()) +
                             " entries, index " + std::to_string(n) + " requested");
  return values_[n];
}

double WeightSchedule::min_weight(int count) const {
  double m = std::numeric_limits<double>::infinity();
  for (int n = 0; n < count; ++n)
    m = std::min(m, (*this)[n]);
  return m;
}

double WeightSchedule::condition(int m) const {
  double s = 0.0;
  for (int n = 0; n < m; ++n) {
    const double t = 1.0 / ((n + 1) * (*this)[n]);
    s += t * t;
  }
  return (m + 1) * (*this)[m] * std::sqrt(s);
}

std::vector<double> WeightSchedule::condition_sequence() const {
  std::vector<double> k;
  for (int m = 0; m < size(); ++m)
    k.push_back(condition(m));
  return k;
}

std::string to_string(ScheduleKind kind) {
  switch (kind) {
  case ScheduleKind::factorial:
    return "factorial";
  case ScheduleKind::polynomial:
    return "polynomial";
  case ScheduleKind::custom:
    return "custom";
  }
  return "custom";
}

int cantor_pair(int row, int col) { return (row + col) * (row + col + 1) / 2 + col; }

std::array<int, 2> cantor_unpair(int index) {
  int w = 0;
  while ((w + 1) * (w + 2) / 2 <= index)
    ++w;
  const int col = index - w * (w + 1) / 2;
  return {w - col, col};
}

namespace {

double intertwining_residual(const Matrix& x, const Matrix& t) {
  return linalg::op_norm(x * t - t * x);
}

void require(bool ok, const std::string& clause) {
  if (!ok)
    throw HypothesisViolated("hypothesis violated: " + clause);
}

} // namespace

ModelVector solve_norm_preserving(const ModelSpace& space, const InnerFunction& phi,
                                  const InnerFunction& psi, const ModelVector& g) {
  const auto& theta = space.theta();
  require(divides(phi, theta), "phi | theta");
  require(divides(psi, theta), "psi | theta");
  const InnerFunction domain_gen = quotient(theta, phi);
  require(divides(domain_gen, psi), "(theta/phi) | psi");
  if (g.coords.size() != space.dim())
    throw AmbientMismatch("vector length does not match dim H(theta)");
  const double scale = std::max(1.0, g.norm());
  const Matrix pg = range_projector(space, psi);
  const double outside = (g.coords - pg * g.coords).norm();
  if (outside > kSolverTol * scale) {
    std::ostringstream os;
    os << "g is not in psi H^2 - theta H^2 (distance " << outside << ")";
    throw NotInSubspace(os.str());
  }
  const InnerFunction omega = quotient(psi, domain_gen);
  const Matrix w = functional_calculus(space, omega);

  const Matrix domain = linalg::leading_left_singular_vectors(functional_calculus(space, domain_gen),
                                                              phi.degree());
  const Vector f0 = domain * linalg::lstsq(w * domain, g.coords);
  const Vector f = submodel_projector(space, omega) * f0;

  const double residual = (w * f - g.coords).norm();
  const double defect = std::abs(f.norm() - g.norm());
  if (residual > kSolverTol * scale || defect > kSolverTol * scale) {
    std::ostringstream os;
    os << "norm-preserving solve failed: residual " << residual << ", norm defect " << defect;
    throw IllConditioned(os.str());
  }
  return {&space, f};
}

QuasiaffinityRecord build_X(const ModelSpace& space, int copies,
                            const std::vector<InnerFunction>& omega_list,
                            const WeightSchedule& schedule) {
  if (copies < 1)
    throw HypothesisViolated("build_X needs at least one copy");
  if (static_cast<int>(omega_list.size()) != copies)
    throw HypothesisViolated("omega list length must equal the number of copies");
  for (const auto& w : omega_list)
    require(divides(w, space.theta()), "omega_n | theta");
  const int d = space.dim();
  const int total = (copies + 1) * d;
  Matrix x = Matrix::Zero(total, total);
  x.topLeftCorner(d, d).setIdentity();
  for (int n = 0; n < copies; ++n) {
    x.block(0, (n + 1) * d, d, d) = functional_calculus(space, omega_list[n]) / double(n + 1);
    x.block((n + 1) * d, (n + 1) * d, d, d) = schedule[n] * Matrix::Identity(d, d);
  }
  QuasiaffinityRecord rec;
  rec.omega_list = omega_list;
  rec.schedule = schedule;
  rec.intertwining_residual =
      intertwining_residual(x, linalg::block_diagonal(space.shift_matrix(), copies + 1));
  rec.sigma_min = linalg::sigma_min(x);
  const double norm = linalg::op_norm(x);
  if (rec.intertwining_residual > kIntertwineTol * std::max(1.0, norm)) {
    std::ostringstream os;
    os << "X intertwining residual " << rec.intertwining_residual << " above gate";
    throw IllConditioned(os.str());
  }
  rec.matrix = std::move(x);
  return rec;
}

std::vector<InnerFunction> density_weights(const InnerFunction& theta,
                                           const std::vector<InnerFunction>& phi_list,
                                           const InnerFunction& psi1, const InnerFunction& psi2) {
  require(divides(psi2, psi1), "(i) psi2 | psi1");
  require(divides(psi1, theta), "(ii) psi1 | theta");
  std::vector<InnerFunction> omega;
  for (std::size_t n = 0; n < phi_list.size(); ++n) {
    require(divides(phi_list[n], theta), "(ii) phi_n | theta");
    if (n + 1 < phi_list.size())
      require(divides(phi_list[n + 1], phi_list[n]), "(iii) phi_{n+1} | phi_n");
    const auto gen = quotient(theta, phi_list[n]);
    require(divides(gen, psi2), "(iv) (theta/phi_n) | psi2");
    omega.push_back(quotient(psi2, gen));
  }
  return omega;
}

DensityResult density_sweep(const ModelSpace& space, int copies,
                            const std::vector<InnerFunction>& phi_list, const InnerFunction& psi1,
                            const InnerFunction& psi2, const Vector& target,
                            const WeightSchedule& schedule) {
  if (copies < 2)
    throw TruncationTooSmall("density sweep needs at least two copies");
  if (static_cast<int>(phi_list.size()) != copies)
    throw HypothesisViolated("phi list length must equal the number of copies");
  const auto& theta = space.theta();
  const auto omega = density_weights(theta, phi_list, psi1, psi2);
  const int d = space.dim();
  if (target.size() != (copies + 1) * d)
    throw AmbientMismatch("target length does not match H(theta) plus copies");

  const Vector g = target.head(d);
  auto f = [&](int n) { return target.segment((n + 1) * d, d); };
  const double gate = kSolverTol * std::max(1.0, target.norm());
  require((g - range_projector(space, psi2) * g).norm() <= gate, "G in psi2 H^2 - theta H^2");
  for (int n = 0; n < copies; ++n) {
    const Matrix p = range_projector(space, quotient(theta, phi_list[n]));
    require((f(n) - p * f(n)).norm() <= gate, "F_n in (theta/phi_n) H^2 - theta H^2");
  }

  DensityResult out;
  out.x = build_X(space, copies, omega, schedule);
  const Matrix& x = out.x.matrix;
  std::vector<Matrix> w;
  for (const auto& o : omega)
    w.push_back(functional_calculus(space, o));

  std::vector<double> tail(copies + 1, 0.0);
  for (int n = copies - 1; n >= 0; --n)
    tail[n] = tail[n + 1] + f(n).squaredNorm();
  const double f_norm = std::sqrt(tail[0]);

  Vector running = g;
  double weight_sum = 0.0;
  for (int m = 1; m < copies; ++m) {
    const double cw = 1.0 / (m * schedule[m - 1]);
    running -= w[m - 1] * f(m - 1) * cw;
    weight_sum += cw * cw;

    const ModelVector rhs{&space, double(m + 1) * running};
    const ModelVector h = solve_norm_preserving(space, phi_list[m], psi2, rhs);
    Vector arg = Vector::Zero(x.cols());
    for (int n = 0; n < m; ++n)
      arg.segment((n + 1) * d, d) = f(n) / schedule[n];
    arg.segment((m + 1) * d, d) = h.coords;

    SweepRow row;
    row.m = m;
    row.residual = (target - x * arg).norm();
    row.bound = (m + 1) * schedule[m] * (g.norm() + f_norm * std::sqrt(weight_sum)) +
                std::sqrt(tail[m]);
    row.sigma_min = linalg::sigma_min(x.topLeftCorner((m + 2) * d, (m + 2) * d));
    row.intertwine = out.x.intertwining_residual;
    out.rows.push_back(row);
  }
  return out;
}

QuasiaffinityRecord build_Y_main(const AmbientSpacePtr& ambient, const JordanModel& phi,
                                 const JordanModel& psi, const JordanModel& tau,
                                 const WeightSchedule& schedule) {
  const int copies = ambient->copies();
  if (copies < 2)
    throw TruncationTooSmall("build_Y_main needs at least two copies");
  if (!ambient->is_uniform_jordan())
    throw PreconditionViolated("build_Y_main needs a uniform Jordan ambient");
  const std::size_t len = std::max(psi.size(), tau.size());
  for (std::size_t n = 0; n < len; ++n)
    if (!divides(tau.part(n), psi.part(n)))
      throw DivisibilityFailure("tau_" + std::to_string(n) + " = " + tau.part(n).to_string() +
                                " does not divide psi_" + std::to_string(n) + " = " +
                                psi.part(n).to_string());

  const auto& space = ambient->block();
  const auto& theta = space.theta();
  const int d = space.dim();
  const int f_count = (copies + 1) / 2;
  const int g_count = copies / 2;

  QuasiaffinityRecord rec;
  rec.schedule = schedule;
  std::vector<std::vector<int>> slots(g_count);
  for (int j = 0; j < f_count; ++j) {
    const auto [row, col] = cantor_unpair(j);
    if (row >= g_count)
      continue;
    rec.pairing.push_back({j, row, col});
    slots[row].push_back(j);
  }

  // Reordered copy list: block by block, then untouched f copies.
  std::vector<int> order;
  std::vector<bool> used(copies, false);
  std::vector<Matrix> blocks;
  for (int n = 0; n < g_count; ++n) {
    order.push_back(2 * n + 1);
    used[2 * n + 1] = true;
    std::vector<InnerFunction> omega;
    for (int j : slots[n]) {
      order.push_back(2 * j);
      used[2 * j] = true;
      const auto base = quotient(theta, phi.part(j));
      const auto t = tau.part(n);
      if (phi.part(j).is_one()) {
        // f_j ranges over the zero summand, so the weight is free; theta(S) = 0
        // keeps the copy decoupled.
        omega.push_back(theta);
      } else if (divides(base, t)) {
        omega.push_back(quotient(t, base));
      } else {
        omega.push_back(quotient(lcm(t, base), base));
        ++rec.fallback_weights;
      }
    }
    rec.omega_list.insert(rec.omega_list.end(), omega.begin(), omega.end());
    if (omega.empty()) {
      blocks.push_back(Matrix::Identity(d, d));
      continue;
    }
    Matrix xn = build_X(space, static_cast<int>(omega.size()), omega, schedule).matrix;
    xn /= linalg::op_norm(xn);
    blocks.push_back(std::move(xn));
  }
  for (int c = 0; c < copies; ++c)
    if (!used[c]) {
      order.push_back(c);
      blocks.push_back(Matrix::Identity(d, d));
    }

  const int total = ambient->total_dim();
  Matrix diag = Matrix::Zero(total, total);
  int at = 0;
  for (const auto& b : blocks) {
    diag.block(at, at, b.rows(), b.cols()) = b;
    at += static_cast<int>(b.rows());
  }
  Matrix v = Matrix::Zero(total, total);
  for (int pos = 0; pos < copies; ++pos)
    v.block(pos * d, order[pos] * d, d, d).setIdentity();

  rec.matrix = v.adjoint() * diag * v;
  rec.intertwining_residual = intertwining_residual(rec.matrix, ambient->operator_matrix());
  rec.sigma_min = linalg::sigma_min(rec.matrix);
  if (rec.intertwining_residual > kIntertwineTol * std::max(1.0, linalg::op_norm(rec.matrix))) {
    std::ostringstream os;
    os << "Y intertwining residual " << rec.intertwining_residual << " above gate";
    throw IllConditioned(os.str());
  }
  return rec;
}

Matrix compression_intertwiner(const AmbientSpace& ambient1, const SubspaceFrame& m1,
                               const AmbientSpace& ambient2, const SubspaceFrame& m2,
                               const Matrix& x) {
  const Matrix& t1 = ambient1.operator_matrix();
  const Matrix& t2 = ambient2.operator_matrix();
  if (x.rows() != t2.rows() || x.cols() != t1.rows())
    throw PreconditionViolated("X has the wrong shape");
  const double scale = std::max(1.0, linalg::op_norm(x));
  const double inter = linalg::op_norm(x * t1 - t2 * x);
  if (inter > 1e-9 * scale)
    throw PreconditionViolated("X does not intertwine (residual " + std::to_string(inter) + ")");
  const SubspaceFrame image = image_closure(x, m1);
  const double gap = linalg::op_norm(image.projector() - m2.projector());
  if (gap > 1e-6)
    throw PreconditionViolated("closure of X M1 is not M2 (distance " + std::to_string(gap) + ")");

  const Matrix q1 = linalg::orthonormal_complement(m1.frame);
  const Matrix q2 = linalg::orthonormal_complement(m2.frame);
  const Matrix a = q2.adjoint() * x * q1;
  if (a.size() == 0)
    return a;
  const Matrix c1 = q1.adjoint() * t1 * q1;
  const Matrix c2 = q2.adjoint() * t2 * q2;
  const double defect = linalg::op_norm(a * c1 - c2 * a);
  if (defect > 1e-8 * scale)
    throw PreconditionViolated("compression intertwining defect " + std::to_string(defect));
  if (linalg::numerical_rank(a).rank != a.rows())
    throw PreconditionViolated("compression intertwiner is not onto");
  return a;
}

} // namespace c0lab
