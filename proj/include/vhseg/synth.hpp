#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "vhseg/bench.hpp"
#include "vhseg/types.hpp"

namespace vhseg {

// Parameters of the synthetic face generator: an elliptical warm "face" on a
// cooler background, both with Gaussian pixel noise. VIS images additionally
// get a left-to-right illumination gradient whose amplitude depends on the
// illumination tag (AR none, IR low, NA high).
struct SynthParams {
  int width = 320;
  int height = 240;
  int center_x = 160;  // face ellipse center
  int center_y = 108;
  int axis_x = 54;     // ellipse semi-axes
  int axis_y = 74;
  double face_mean = 200.0;
  double face_sigma = 8.0;
  double bg_mean = 60.0;
  double bg_sigma = 8.0;
  std::uint64_t seed = 0;
  Spectrum spectrum = Spectrum::TH;
  Illumination illumination = Illumination::AR;
  double gradient_low = 12.0;   // VIS gradient amplitude under IR
  double gradient_high = 28.0;  // VIS gradient amplitude under NA
};

// Validates the generator invariants: the ellipse keeps a 2-pixel margin to
// the frame and the face/background means are separated by at least four
// combined standard deviations (sigma_face + sigma_bg). Throws InvalidParams.
void validate(const SynthParams& params);

// Renders the image and its annotation. Deterministic: the same params and
// seed reproduce the output byte for byte. The landmark boxes sit at fixed
// anatomical fractions of the ellipse (brows at 32% of its height, eyes at
// 40%, lips at 75%) and max_extent is the ellipse bounding box extended 15%
// downward, clipped to the frame. Throws InvalidParams.
std::pair<GrayImage, GroundTruth> generate_face(const SynthParams& params);

// Copy of `img` with the one-pixel border of `box` painted at intensity 255;
// everything else is untouched. Throws BoxOutOfBounds.
GrayImage render_overlay(const GrayImage& img, const FaceBox& box);

// Writes `count` generated images (PGM) with their ground-truth files and a
// manifest.json into `dir`, creating it if needed. A pinned spectrum or
// illumination applies to every image; an unpinned axis cycles through its
// values. Per-image seeds are derived from `seed`. Returns the manifest path.
std::string generate_dataset(const std::string& dir, int count, std::uint64_t seed,
                             std::optional<Spectrum> spectrum = {},
                             std::optional<Illumination> illumination = {},
                             const SynthParams& base = {});

}  // namespace vhseg
