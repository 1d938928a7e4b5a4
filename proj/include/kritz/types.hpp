#pragma once

#include <Eigen/Core>

#include <vector>

namespace kritz {

using Point2 = Eigen::Vector2d;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using PointList = std::vector<Point2>;

/// One weighted quadrature node in the interior of a domain.
using WeightedPoint = std::pair<Point2, double>;

}  // namespace kritz
