#include "vhseg/otsu.hpp"

namespace vhseg {

Histogram histogram(const GrayImage& img) {
  Histogram h = Histogram::Zero();
  const std::uint8_t* p = img.data();
  const Eigen::Index n = img.size();
  for (Eigen::Index i = 0; i < n; ++i) ++h[p[i]];
  return h;
}

int otsu_threshold(const Histogram& hist) {
  const std::int64_t total = hist.sum();
  if (total == 0) throw EmptyHistogram("otsu: histogram holds no pixels");

  std::int64_t sum_all = 0;
  for (int v = 0; v < 256; ++v) sum_all += std::int64_t(v) * hist[v];

  // Single pass over t with cumulative class-0 mass. Class 0 is {v < t}, so
  // sigma_b^2(0) = 0 and the initial best of -1 makes t = 0 the starting
  // argmax; the strict > keeps the smallest t on ties.
  std::int64_t w0 = 0;
  std::int64_t s0 = 0;
  int best_t = 0;
  double best = -1.0;
  for (int t = 0; t < 256; ++t) {
    if (t > 0) {
      w0 += hist[t - 1];
      s0 += std::int64_t(t - 1) * hist[t - 1];
    }
    const std::int64_t w1 = total - w0;
    const std::int64_t s1 = sum_all - s0;
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

BinaryImage binarize(const GrayImage& img, int threshold) {
  return (img.cast<int>() >= threshold).cast<std::uint8_t>();
}

}  // namespace vhseg
