#include "kritz/assembly.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>

#include "kritz/errors.hpp"

namespace kritz {

namespace {

constexpr std::size_t kChunk = 4096;

// Seed salt for the frozen assembly quadrature stream.
constexpr std::uint64_t kFixedQuadratureSalt = 0x665ed0f1u;

}  // namespace

QuadraticForm assemble(const ProblemSpec& problem, const KernelSpec& kernel,
                       std::span<const Point2> centers,
                       const QuadratureSet& quad) {
  const auto n = static_cast<Eigen::Index>(centers.size());
  if (n == 0) throw std::invalid_argument("assemble: empty center set");
  if (quad.interior.empty() && quad.boundary.empty()) {
    throw std::invalid_argument("assemble: empty quadrature set");
  }
  if (!quad.neumann.empty() && !problem.g_neumann) {
    throw std::invalid_argument(
        "assemble: Neumann quadrature given but the problem has no flux data");
  }

  QuadraticForm form;
  form.A = Matrix::Zero(n, n);
  form.ell = Vector::Zero(n);

  Matrix phi, gx, gy;
  PointList pts;
  pts.reserve(kChunk);

  for (std::size_t start = 0; start < quad.interior.size(); start += kChunk) {
    const auto m = static_cast<Eigen::Index>(
        std::min(kChunk, quad.interior.size() - start));
    pts.clear();
    Vector wk(m), wr(m), wf(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& [p, w] = quad.interior[start + i];
      pts.push_back(p);
      wk(i) = w * problem.kappa(p);
      wr(i) = w * problem.rho(p);
      wf(i) = w * problem.f(p);
    }
    kernel_tableau(kernel, pts, centers, &phi, &gx, &gy);
    const Matrix gxw = (gx.array().colwise() * wk.array()).matrix();
    const Matrix gyw = (gy.array().colwise() * wk.array()).matrix();
    form.A.noalias() += gx.transpose() * gxw;
    form.A.noalias() += gy.transpose() * gyw;
    if (wr.cwiseAbs().maxCoeff() > 0.0) {
      const Matrix phir = (phi.array().colwise() * wr.array()).matrix();
      form.A.noalias() += phi.transpose() * phir;
    }
    form.ell.noalias() += phi.transpose() * wf;
  }

  for (std::size_t start = 0; start < quad.boundary.size(); start += kChunk) {
    const auto m = static_cast<Eigen::Index>(
        std::min(kChunk, quad.boundary.size() - start));
    pts.clear();
    Vector w(m), wg(m), nx(m), ny(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const BoundarySample& s = quad.boundary[start + i];
      pts.push_back(s.point);
      w(i) = s.weight;
      wg(i) = s.weight * problem.g_dirichlet(s.point);
      nx(i) = s.normal.x();
      ny(i) = s.normal.y();
    }
    kernel_tableau(kernel, pts, centers, &phi, &gx, &gy);
    const Matrix gn = ((gx.array().colwise() * nx.array()) +
                       (gy.array().colwise() * ny.array()))
                          .matrix();
    const Matrix phiw = (phi.array().colwise() * w.array()).matrix();
    const Matrix cross = gn.transpose() * phiw;  // (grad k_i . n) k_j terms
    form.A.noalias() -= cross;
    form.A.noalias() -= cross.transpose();
    form.A.noalias() += problem.penalty * (phi.transpose() * phiw);
    form.ell.noalias() -= gn.transpose() * wg;
    form.ell.noalias() += problem.penalty * (phi.transpose() * wg);
  }

  for (std::size_t start = 0; start < quad.neumann.size(); start += kChunk) {
    const auto m = static_cast<Eigen::Index>(
        std::min(kChunk, quad.neumann.size() - start));
    pts.clear();
    Vector wg(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const BoundarySample& s = quad.neumann[start + i];
      pts.push_back(s.point);
      wg(i) = s.weight * problem.g_neumann(s.point);
    }
    kernel_tableau(kernel, pts, centers, &phi, nullptr, nullptr);
    form.ell.noalias() += phi.transpose() * wg;
  }

  // remove quadrature round-off asymmetry
  form.A = (0.5 * (form.A + form.A.transpose())).eval();
  return form;
}

double energy_value(const QuadraticForm& form, const Vector& beta) {
  if (beta.size() != form.ell.size()) {
    throw std::invalid_argument("energy_value: dimension mismatch");
  }
  return 0.5 * beta.dot(form.A * beta) - beta.dot(form.ell);
}

Vector energy_gradient(const QuadraticForm& form, const Vector& beta) {
  if (beta.size() != form.ell.size()) {
    throw std::invalid_argument("energy_gradient: dimension mismatch");
  }
  return form.A * beta - form.ell;
}

BatchSizes default_batch_sizes(int n_centers) {
  return {std::max(4 * n_centers, 1024), std::max(n_centers, 256)};
}

QuadratureSet sample_quadrature(const Domain& domain, BatchSizes sizes,
                                Rng& rng) {
  QuadratureSet quad;
  quad.interior = sample_interior(domain, sizes.interior, rng);
  quad.boundary = sample_boundary(domain, sizes.boundary, rng);
  return quad;
}

QuadraticForm mc_batch(const ProblemSpec& problem, const KernelSpec& kernel,
                       std::span<const Point2> centers, BatchSizes sizes,
                       Rng& rng, bool warn_undersampled) {
  if (sizes.interior < 1 || sizes.boundary < 1) {
    throw std::invalid_argument("mc_batch: batch sizes must be >= 1");
  }
  const int n = static_cast<int>(centers.size());
  if (warn_undersampled && sizes.interior < n) {
    std::cerr << "warning: interior batch (" << sizes.interior
              << ") smaller than the center count (" << n
              << "); use more quadrature points than centers\n";
  }
  QuadratureSet quad = sample_quadrature(problem.domain, sizes, rng);
  return assemble(problem, kernel, centers, quad);
}

QuadratureSet fixed_quadrature(const Domain& domain, int interior_count,
                               int boundary_count, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kFixedQuadratureSalt));
  return sample_quadrature(domain, {interior_count, boundary_count}, rng);
}

QuadraticForm to_lagrange(const QuadraticForm& form,
                          const SpdFactor& kernel_factor) {
  QuadraticForm out;
  const Matrix KA = kernel_factor.solve(form.A);
  Matrix ALag = kernel_factor.solve(Matrix(KA.transpose()));
  out.A = 0.5 * (ALag + ALag.transpose());
  out.ell = kernel_factor.solve(form.ell);
  out.basis = BasisKind::Lagrange;
  return out;
}

}  // namespace kritz
