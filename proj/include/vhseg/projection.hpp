#pragma once

#include <cstdint>
#include <utility>

#include "vhseg/otsu.hpp"
#include "vhseg/types.hpp"

namespace vhseg {

// Knobs of the projection-profile detector. The aspect ratio fixes the face
// height as 13/9 of its width; the border threshold and run length decide
// when a profile entry counts as part of the face.
struct VhParams {
  double border_fraction = 0.10;  // entry is "face" when >= fraction * max(profile)
  int min_run = 2;                // consecutive qualifying rows needed for a border
  int aspect_num = 13;            // face height / width
  int aspect_den = 9;
};

enum class Axis { Vertical, Horizontal };

// Foreground counts per row (Vertical) or per column (Horizontal).
struct ProjectionProfile {
  Axis axis = Axis::Vertical;
  Eigen::Array<std::int64_t, Eigen::Dynamic, 1> values;
};

// values[y] = number of 1-pixels in row y.
ProjectionProfile vertical_projection(const BinaryImage& bin);

// values[x] = number of 1-pixels in column x, restricted to rows
// [y_begin, y_end). Throws InvalidRange unless 0 <= y_begin < y_end <= height.
ProjectionProfile horizontal_projection(const BinaryImage& bin, int y_begin, int y_end);

// First row starting a run of at least min_run entries that reach
// border_fraction * max(profile). Throws NoFaceFound when the profile is all
// zero or no qualifying run exists.
int find_top_border(const ProjectionProfile& profile, const VhParams& params = {});

// (x1, x2) with x1 the first column reaching the border threshold and x2 one
// past the last. Throws NoFaceFound on an all-zero profile and
// DegenerateWidth when x2 - x1 < 2.
std::pair<int, int> find_horizontal_limits(const ProjectionProfile& profile,
                                           const VhParams& params = {});

// y2 = min(image_height, y1 + round((x2 - x1) * aspect)), rounding half up.
// Throws DegenerateBox when clipping would leave y2 <= y1.
int compute_bottom(int y1, int x1, int x2, int image_height, const VhParams& params = {});

// Full detection pipeline: Otsu threshold, binarize, locate the top border in
// the vertical profile, take the band from y1 spanning half the remaining
// height, locate the horizontal limits there, and place the bottom border via
// the aspect ratio. Uniform images are rejected up front.
//
// Returns at most one face per image. Throws NoFaceFound or DegenerateWidth.
FaceBox segment_face(const GrayImage& img, const VhParams& params = {});

}  // namespace vhseg
