#pragma once

#include <string>
#include <vector>

#include "vhseg/integral.hpp"
#include "vhseg/types.hpp"

namespace vhseg {

// Weighted rectangle of a Haar-like feature, in base-window coordinates.
struct HaarRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  double weight = 0.0;
};

// 2-4 weighted rectangles inside the base window; the weights carry both
// signs so a flat patch scores zero.
struct HaarFeature {
  std::vector<HaarRect> rects;
};

// Decision stump over one feature: emits `left` when the normalized feature
// value falls below `threshold`, `right` otherwise.
struct Stump {
  HaarFeature feature;
  double threshold = 0.0;
  double left = 0.0;
  double right = 0.0;
};

// One rejection stage: the stump outputs are summed and compared against the
// stage threshold.
struct Stage {
  double threshold = 0.0;
  std::vector<Stump> stumps;
};

struct Cascade {
  int base_width = 24;
  int base_height = 24;
  std::vector<Stage> stages;
};

// Checks the structural invariants: at least one stage, 2-4 rects per
// feature, every rect inside the base window, and mixed-sign weights.
// Throws ValidationError.
void validate_cascade(const Cascade& cascade);

// Reads the JSON cascade format:
//
//   { "base_window": [24,24],
//     "stages": [ { "threshold": number,
//                   "stumps": [ { "feature": { "rects": [
//                                   {"x":int,"y":int,"w":int,"h":int,"weight":number}, ... ] },
//                                 "threshold": number,
//                                 "left": number, "right": number } ] } ] }
//
// Unknown top-level keys are rejected. Throws FileNotFound, ParseError,
// ValidationError.
Cascade parse_cascade(const std::string& path);
Cascade parse_cascade_text(const std::string& text);

struct WindowResult {
  bool accepted = false;
  double score = 0.0;  // accumulated stage margin (stage sum minus threshold)
};

// Evaluates the cascade on the window whose top-left corner is (x, y) and
// whose size is the base window scaled by `scale` (>= 1). Feature rectangles
// are scaled by rounding their endpoints, negative weights are rebalanced so
// the rounded rectangle areas cancel, and feature values are normalized by
// the window's pixel standard deviation times its area. Zero-variance
// windows are rejected outright.
//
// `sums` and `squares` are the integral images of the pixels and of their
// squares. Throws WindowOutOfBounds when the scaled window does not fit.
WindowResult evaluate_window(const IntegralImage& sums, const IntegralImage& squares,
                             const Cascade& cascade, int x, int y, double scale);

struct Detection {
  FaceBox box;
  double score = 0.0;
  int neighbors = 1;  // raw hits merged into this detection
};

struct DetectParams {
  double scale_step = 1.1;  // ratio between consecutive window scales, > 1
  int stride = 1;           // window step in pixels, >= 1
  int min_neighbors = 3;    // raw hits required to keep a detection, >= 1
};

// Slides the scaled window over every position and scale, merges raw hits
// whose boxes overlap with IoU >= 0.5 (merged box = per-coordinate mean,
// score = mean member score), and drops groups smaller than min_neighbors.
// The result is sorted by descending neighbors, then score, then box
// coordinates, so identical inputs give identical output.
std::vector<Detection> detect_multiscale(const GrayImage& img, const Cascade& cascade,
                                         const DetectParams& params = {});

}  // namespace vhseg
