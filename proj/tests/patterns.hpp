#pragma once

#include <algorithm>

#include "vhseg/types.hpp"

namespace testpat {

// The 24x24 quadrant pattern data/test_cascade.json is tuned to:
// mean 130, variance 4500, every stump clears its threshold with margin.
inline vhseg::GrayImage quadrant_pattern() {
  vhseg::GrayImage p(24, 24);
  p.topLeftCorner(12, 12).setConstant(220);
  p.topRightCorner(12, 12).setConstant(160);
  p.bottomLeftCorner(12, 12).setConstant(100);
  p.bottomRightCorner(12, 12).setConstant(40);
  return p;
}

inline double iou(const vhseg::FaceBox& a, const vhseg::FaceBox& b) {
  const int ix1 = std::max(a.x1, b.x1), iy1 = std::max(a.y1, b.y1);
  const int ix2 = std::min(a.x2, b.x2), iy2 = std::min(a.y2, b.y2);
  const double inter =
      double(std::max(0, ix2 - ix1)) * double(std::max(0, iy2 - iy1));
  const double uni =
      double(a.width()) * a.height() + double(b.width()) * b.height() - inter;
  return uni > 0 ? inter / uni : 0.0;
}

}  // namespace testpat
