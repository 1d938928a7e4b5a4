#pragma once

#include <span>
#include <string>
#include <string_view>

#include "kritz/types.hpp"

namespace kritz {

enum class KernelFamily { Matern12, Matern32, Matern52, WendlandC2 };

KernelFamily kernel_family_from_string(std::string_view name);
std::string_view to_string(KernelFamily family);

/// Radial kernel k(x, y) = phi(shape * |x - y|), normalized so phi(0) = 1.
///
/// Closed forms (s = shape * r):
///   Matern12    phi = exp(-s)
///   Matern32    phi = (1 + sqrt(3) s) exp(-sqrt(3) s)
///   Matern52    phi = (1 + sqrt(5) s + (5/3) s^2) exp(-sqrt(5) s)
///   WendlandC2  phi = (1 - s)_+^4 (4 s + 1)      (compact support s < 1)
struct KernelSpec {
  KernelFamily family = KernelFamily::Matern32;
  double shape = 1.0;  ///< inverse length scale, must be > 0

  /// Algebraic Fourier-decay order of the kernel in two dimensions; this is
  /// the Sobolev smoothness of the associated native space.
  double fourier_decay_order() const;
};

/// Distances below this are treated as coincident points: Matern12 gradients
/// become a singular-evaluation error, center sets a degenerate-centers error.
inline constexpr double kSingularRadius = 1e-12;

double kernel_eval(const KernelSpec& spec, const Point2& x, const Point2& y);

/// Gradient of kernel_eval with respect to x. Odd under swapping x and y.
/// Matern12 has a kink at r = 0; evaluating there throws.
Point2 kernel_grad_x(const KernelSpec& spec, const Point2& x, const Point2& y);

/// Gram matrix K_ij = k(centers[i], centers[j]); symmetric, and positive
/// definite for the supported families. Throws DegenerateCentersError when
/// two centers are closer than kSingularRadius.
Matrix kernel_matrix(const KernelSpec& spec, std::span<const Point2> centers);

/// Batched evaluation against a fixed center set: fills values(i, j) =
/// k(points[i], centers[j]) and, when grad_x/grad_y are non-null, the two
/// Cartesian components of the gradient with respect to points[i]. All
/// requested tables are produced in a single pass over the point pairs.
void kernel_tableau(const KernelSpec& spec, std::span<const Point2> points,
                    std::span<const Point2> centers, Matrix* values,
                    Matrix* grad_x, Matrix* grad_y);

}  // namespace kritz
