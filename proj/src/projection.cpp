#include "srl/projection.hpp"

#include <cmath>

#include "srl/errors.hpp"

namespace srl {

ProjectionFit projection_fit(const Matrix& x, const Vector& y, std::span<const std::size_t> columns) {
  if (x.rows() != y.size()) throw InvalidArgument("projection_fit: x and y row counts differ");
  const auto k = static_cast<Eigen::Index>(columns.size());
  if (k == 0) return {y.squaredNorm(), 0.0};
  if (k > x.rows()) {
    throw DegenerateModel("projection_fit: subset of size " + std::to_string(k) +
                          " exceeds n = " + std::to_string(x.rows()));
  }
  Matrix xd(x.rows(), k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const auto j = static_cast<Eigen::Index>(columns[static_cast<std::size_t>(c)]);
    if (j >= x.cols()) throw InvalidArgument("projection_fit: column index out of range");
    xd.col(c) = x.col(j);
  }
  const double scale = xd.norm();
  Eigen::HouseholderQR<Matrix> qr(xd);
  const auto& packed = qr.matrixQR();
  for (Eigen::Index c = 0; c < k; ++c) {
    if (!(std::abs(packed(c, c)) >= 1e-10 * scale)) {
      throw DegenerateModel("projection_fit: rank-deficient design subset");
    }
  }
  const Vector qty = qr.householderQ().transpose() * y;
  return {qty.tail(x.rows() - k).squaredNorm(), qty.head(k).squaredNorm()};
}

ProjectionFit projection_fit(const Matrix& x, const Vector& y, const SupportSet& d) {
  return projection_fit(x, y, d.indices());
}

}  // namespace srl
