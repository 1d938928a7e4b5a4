#include "kritz/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "kritz/errors.hpp"

namespace kritz {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kSqrt5 = 2.23606797749979;

// Each profile provides phi(s) with s = shape * r, and the radial slope
// phi'(r) / r used to form gradients: grad_x phi = slope * (x - y).

struct Matern12Profile {
  static double value(double s) { return std::exp(-s); }
  static double slope(double s, double shape, double r) {
    if (r < kSingularRadius) {
      throw SingularEvaluationError(
          "matern12 gradient requested at a kernel center");
    }
    return -shape * std::exp(-s) / r;
  }
};

struct Matern32Profile {
  static double value(double s) { return (1.0 + kSqrt3 * s) * std::exp(-kSqrt3 * s); }
  static double slope(double s, double shape, double /*r*/) {
    return -3.0 * shape * shape * std::exp(-kSqrt3 * s);
  }
};

struct Matern52Profile {
  static double value(double s) {
    return (1.0 + kSqrt5 * s + (5.0 / 3.0) * s * s) * std::exp(-kSqrt5 * s);
  }
  static double slope(double s, double shape, double /*r*/) {
    return -(5.0 / 3.0) * shape * shape * (1.0 + kSqrt5 * s) * std::exp(-kSqrt5 * s);
  }
};

struct WendlandC2Profile {
  static double value(double s) {
    if (s >= 1.0) return 0.0;
    const double t = 1.0 - s;
    const double t2 = t * t;
    return t2 * t2 * (4.0 * s + 1.0);
  }
  static double slope(double s, double shape, double /*r*/) {
    if (s >= 1.0) return 0.0;
    const double t = 1.0 - s;
    return -20.0 * shape * shape * t * t * t;
  }
};

template <class F>
decltype(auto) dispatch(KernelFamily family, F&& f) {
  switch (family) {
    case KernelFamily::Matern12:
      return f(Matern12Profile{});
    case KernelFamily::Matern32:
      return f(Matern32Profile{});
    case KernelFamily::Matern52:
      return f(Matern52Profile{});
    case KernelFamily::WendlandC2:
      return f(WendlandC2Profile{});
  }
  throw std::invalid_argument("unknown kernel family");
}

void validate(const KernelSpec& spec) {
  if (!(spec.shape > 0.0) || !std::isfinite(spec.shape)) {
    throw std::invalid_argument("kernel shape parameter must be positive");
  }
}

template <class Profile>
void fill_tables(Profile, double shape, std::span<const Point2> points,
                 std::span<const Point2> centers, Matrix* values,
                 Matrix* grad_x, Matrix* grad_y) {
  const auto m = static_cast<Eigen::Index>(points.size());
  const auto n = static_cast<Eigen::Index>(centers.size());
  if (values) values->resize(m, n);
  if (grad_x) grad_x->resize(m, n);
  if (grad_y) grad_y->resize(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double cx = centers[j].x();
    const double cy = centers[j].y();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double dx = points[i].x() - cx;
      const double dy = points[i].y() - cy;
      const double r = std::sqrt(dx * dx + dy * dy);
      const double s = shape * r;
      if (values) (*values)(i, j) = Profile::value(s);
      if (grad_x) {
        const double g = Profile::slope(s, shape, r);
        (*grad_x)(i, j) = g * dx;
        (*grad_y)(i, j) = g * dy;
      }
    }
  }
}

}  // namespace

KernelFamily kernel_family_from_string(std::string_view name) {
  if (name == "matern12") return KernelFamily::Matern12;
  if (name == "matern32") return KernelFamily::Matern32;
  if (name == "matern52") return KernelFamily::Matern52;
  if (name == "wendland_c2") return KernelFamily::WendlandC2;
  throw std::invalid_argument("unknown kernel family: " + std::string(name));
}

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Matern12:
      return "matern12";
    case KernelFamily::Matern32:
      return "matern32";
    case KernelFamily::Matern52:
      return "matern52";
    case KernelFamily::WendlandC2:
      return "wendland_c2";
  }
  return "?";
}

double KernelSpec::fourier_decay_order() const {
  switch (family) {
    case KernelFamily::Matern12:
      return 1.5;
    case KernelFamily::Matern32:
      return 2.5;
    case KernelFamily::Matern52:
      return 3.5;
    case KernelFamily::WendlandC2:
      return 2.5;
  }
  return 0.0;
}

double kernel_eval(const KernelSpec& spec, const Point2& x, const Point2& y) {
  validate(spec);
  const double r = (x - y).norm();
  return dispatch(spec.family,
                  [&](auto profile) { return decltype(profile)::value(spec.shape * r); });
}

Point2 kernel_grad_x(const KernelSpec& spec, const Point2& x, const Point2& y) {
  validate(spec);
  const Point2 d = x - y;
  const double r = d.norm();
  // Smooth families have a well-defined zero gradient at the center; only
  // Matern12's profile rejects r below the singular radius.
  if (r == 0.0 && spec.family != KernelFamily::Matern12) {
    return Point2::Zero();
  }
  const double g = dispatch(spec.family, [&](auto profile) {
    return decltype(profile)::slope(spec.shape * r, spec.shape, r);
  });
  return g * d;
}

Matrix kernel_matrix(const KernelSpec& spec, std::span<const Point2> centers) {
  validate(spec);
  const auto n = static_cast<Eigen::Index>(centers.size());
  Matrix K(n, n);
  dispatch(spec.family, [&](auto profile) {
    for (Eigen::Index i = 0; i < n; ++i) {
      K(i, i) = decltype(profile)::value(0.0);
      for (Eigen::Index j = 0; j < i; ++j) {
        const double r = (centers[i] - centers[j]).norm();
        if (r < kSingularRadius) {
          throw DegenerateCentersError("duplicate centers in kernel matrix");
        }
        const double v = decltype(profile)::value(spec.shape * r);
        K(i, j) = v;
        K(j, i) = v;
      }
    }
  });
  return K;
}

void kernel_tableau(const KernelSpec& spec, std::span<const Point2> points,
                    std::span<const Point2> centers, Matrix* values,
                    Matrix* grad_x, Matrix* grad_y) {
  validate(spec);
  if ((grad_x == nullptr) != (grad_y == nullptr)) {
    throw std::invalid_argument("kernel_tableau: need both gradient tables or neither");
  }
  dispatch(spec.family, [&](auto profile) {
    fill_tables(profile, spec.shape, points, centers, values, grad_x, grad_y);
  });
}

}  // namespace kritz
