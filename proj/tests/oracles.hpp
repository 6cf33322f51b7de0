#pragma once

#include <cstdint>

#include "vhseg/otsu.hpp"
#include "vhseg/types.hpp"

// Independent reference implementations the fast paths are checked against.
namespace oracle {

// Exhaustive Otsu: recomputes both class statistics from scratch for every
// candidate threshold instead of maintaining running sums. The between-class
// variance is evaluated with the same double expression as the library so
// the argmax comparison is exact.
inline int otsu_brute_force(const vhseg::Histogram& hist) {
  int best_t = 0;
  double best = -1.0;
  for (int t = 0; t < 256; ++t) {
    std::int64_t w0 = 0, s0 = 0, w1 = 0, s1 = 0;
    for (int v = 0; v < t; ++v) {
      w0 += hist[v];
      s0 += std::int64_t(v) * hist[v];
    }
    for (int v = t; v < 256; ++v) {
      w1 += hist[v];
      s1 += std::int64_t(v) * hist[v];
    }
    double sb2 = 0.0;
    if (w0 > 0 && w1 > 0) {
      const double mu0 = double(s0) / double(w0);
      const double mu1 = double(s1) / double(w1);
      const double d = mu0 - mu1;
      sb2 = double(w0) * double(w1) * d * d;
    }
    if (sb2 > best) {
      best = sb2;
      best_t = t;
    }
  }
  return best_t;
}

inline std::int64_t naive_rect_sum(const vhseg::GrayImage& img, int x1, int y1, int x2,
                                   int y2) {
  std::int64_t acc = 0;
  for (int y = y1; y < y2; ++y) {
    for (int x = x1; x < x2; ++x) acc += img(y, x);
  }
  return acc;
}

inline std::int64_t naive_rect_sum_squared(const vhseg::GrayImage& img, int x1, int y1,
                                           int x2, int y2) {
  std::int64_t acc = 0;
  for (int y = y1; y < y2; ++y) {
    for (int x = x1; x < x2; ++x) acc += std::int64_t(img(y, x)) * img(y, x);
  }
  return acc;
}

}  // namespace oracle
