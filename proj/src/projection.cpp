#include "vhseg/projection.hpp"

#include <stdexcept>
#include <string>

namespace vhseg {
namespace {

// Indices whose profile value reaches border_fraction * max(profile) count as
// face. Throws NoFaceFound when the profile is empty or all zero.
double border_threshold(const ProjectionProfile& profile, const VhParams& params) {
  if (profile.values.size() == 0) throw NoFaceFound("projection profile is empty");
  const std::int64_t max = profile.values.maxCoeff();
  if (max == 0) throw NoFaceFound("projection profile is all zero");
  return params.border_fraction * double(max);
}

}  // namespace

ProjectionProfile vertical_projection(const BinaryImage& bin) {
  ProjectionProfile p;
  p.axis = Axis::Vertical;
  p.values = bin.cast<std::int64_t>().rowwise().sum();
  return p;
}

ProjectionProfile horizontal_projection(const BinaryImage& bin, int y_begin, int y_end) {
  if (y_begin < 0 || y_begin >= y_end || y_end > bin.rows()) {
    throw InvalidRange("horizontal projection: bad row range [" +
                       std::to_string(y_begin) + ", " + std::to_string(y_end) + ")");
  }
  ProjectionProfile p;
  p.axis = Axis::Horizontal;
  p.values = bin.middleRows(y_begin, y_end - y_begin)
                 .cast<std::int64_t>()
                 .colwise()
                 .sum()
                 .transpose();
  return p;
}

int find_top_border(const ProjectionProfile& profile, const VhParams& params) {
  if (profile.axis != Axis::Vertical) {
    throw std::invalid_argument("find_top_border expects a per-row profile");
  }
  const double threshold = border_threshold(profile, params);
  const Eigen::Index n = profile.values.size();
  Eigen::Index run = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (double(profile.values[i]) >= threshold) {
      if (++run >= params.min_run) return static_cast<int>(i - run + 1);
    } else {
      run = 0;
    }
  }
  throw NoFaceFound("no run of " + std::to_string(params.min_run) +
                    " rows reaches the border threshold");
}

std::pair<int, int> find_horizontal_limits(const ProjectionProfile& profile,
                                           const VhParams& params) {
  if (profile.axis != Axis::Horizontal) {
    throw std::invalid_argument("find_horizontal_limits expects a per-column profile");
  }
  const double threshold = border_threshold(profile, params);
  const Eigen::Index n = profile.values.size();
  Eigen::Index first = -1;
  Eigen::Index last = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (double(profile.values[i]) >= threshold) {
      if (first < 0) first = i;
      last = i;
    }
  }
  // first >= 0 is guaranteed: max(profile) itself reaches the threshold.
  const int x1 = static_cast<int>(first);
  const int x2 = static_cast<int>(last) + 1;
  if (x2 - x1 < 2) {
    throw DegenerateWidth("face width " + std::to_string(x2 - x1) + " is below 2 columns");
  }
  return {x1, x2};
}

int compute_bottom(int y1, int x1, int x2, int image_height, const VhParams& params) {
  const int width = x2 - x1;
  if (width <= 0) throw std::invalid_argument("compute_bottom requires x2 > x1");
  // round-half-up of width * num / den in integer arithmetic
  const long long rise =
      (2LL * width * params.aspect_num + params.aspect_den) / (2LL * params.aspect_den);
  const int y2 = static_cast<int>(std::min<long long>(image_height, y1 + rise));
  if (y2 <= y1) {
    throw DegenerateBox("bottom border clipped to " + std::to_string(y2) +
                        " does not lie below y1 = " + std::to_string(y1));
  }
  return y2;
}

FaceBox segment_face(const GrayImage& img, const VhParams& params) {
  const Histogram hist = histogram(img);
  if ((hist > 0).count() <= 1) {
    throw NoFaceFound("image is uniform");
  }
  const int threshold = otsu_threshold(hist);
  const BinaryImage bin = binarize(img, threshold);

  const ProjectionProfile vertical = vertical_projection(bin);
  const int y1 = find_top_border(vertical, params);

  // The band spans half the distance from the top border to the image bottom.
  const int band = (static_cast<int>(img.rows()) - y1) / 2;
  if (band < 1) throw NoFaceFound("face band below the top border is empty");

  const ProjectionProfile horizontal = horizontal_projection(bin, y1, y1 + band);
  const auto [x1, x2] = find_horizontal_limits(horizontal, params);

  const int y2 = compute_bottom(y1, x1, x2, static_cast<int>(img.rows()), params);
  return FaceBox{x1, y1, x2, y2};
}

}  // namespace vhseg
