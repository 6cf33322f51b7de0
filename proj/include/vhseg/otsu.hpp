#pragma once

#include <cstdint>

#include "vhseg/types.hpp"

namespace vhseg {

// Gray-level distribution: bins[v] = number of pixels with intensity v.
using Histogram = Eigen::Array<std::int64_t, 256, 1>;

Histogram histogram(const GrayImage& img);

// Otsu threshold: the smallest t in [0,255] maximizing the between-class
// variance sigma_b^2(t) = w0 * w1 * (mu0 - mu1)^2, where class 0 holds the
// intensities below t and class 1 the rest. A class with zero mass makes
// sigma_b^2(t) zero, so a histogram concentrated on one level yields t = 0.
//
// Throws EmptyHistogram when the histogram holds no pixels.
int otsu_threshold(const Histogram& hist);

// out(x,y) = 0 if img(x,y) < threshold, else 1.
BinaryImage binarize(const GrayImage& img, int threshold);

}  // namespace vhseg
