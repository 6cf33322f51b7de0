#include "vhseg/integral.hpp"

namespace vhseg {
namespace {

template <typename Transform>
IntegralImage accumulate(const GrayImage& img, Transform&& f) {
  const Eigen::Index h = img.rows();
  const Eigen::Index w = img.cols();
  IntegralImage ii;
  ii.table.resize(h + 1, w + 1);
  ii.table.row(0).setZero();
  ii.table.col(0).setZero();
  for (Eigen::Index y = 0; y < h; ++y) {
    std::int64_t row_sum = 0;
    for (Eigen::Index x = 0; x < w; ++x) {
      row_sum += f(img(y, x));
      ii.table(y + 1, x + 1) = ii.table(y, x + 1) + row_sum;
    }
  }
  return ii;
}

}  // namespace

IntegralImage integral_image(const GrayImage& img) {
  return accumulate(img, [](std::uint8_t v) { return std::int64_t(v); });
}

IntegralImage integral_image_squared(const GrayImage& img) {
  return accumulate(img, [](std::uint8_t v) { return std::int64_t(v) * v; });
}

}  // namespace vhseg
