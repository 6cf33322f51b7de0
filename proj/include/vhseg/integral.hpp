#pragma once

#include <cstdint>

#include "vhseg/types.hpp"

namespace vhseg {

// Summed-area table over a W x H image. The table has W+1 columns and H+1
// rows; table(y, x) is the sum of all pixels in [0,x) x [0,y), so the first
// row and column are zero and the table is monotone along both axes.
struct IntegralImage {
  Raster<std::int64_t> table;

  int width() const { return static_cast<int>(table.cols()) - 1; }
  int height() const { return static_cast<int>(table.rows()) - 1; }

  // Sum over the half-open rectangle [x1,x2) x [y1,y2) in four lookups.
  std::int64_t rect_sum(int x1, int y1, int x2, int y2) const {
    return table(y2, x2) - table(y1, x2) - table(y2, x1) + table(y1, x1);
  }
};

IntegralImage integral_image(const GrayImage& img);

// Same cumulative table over the squared pixel values; used for per-window
// variance normalization.
IntegralImage integral_image_squared(const GrayImage& img);

}  // namespace vhseg
