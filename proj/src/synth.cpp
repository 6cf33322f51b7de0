#include "vhseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "vhseg/image_io.hpp"

namespace vhseg {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double to_unit(std::uint64_t z) {
  return (double(z >> 11) + 0.5) * 0x1.0p-53;
}

// Counter-based standard normal: pixel `index` under `seed` always gets the
// same draw, independent of evaluation order.
double gauss(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t z1 = splitmix64(seed ^ splitmix64(index + 1));
  const std::uint64_t z2 = splitmix64(z1);
  const double u1 = to_unit(z1);
  const double u2 = to_unit(z2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint8_t clamp_pixel(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

FaceBox clip_box(FaceBox b, int w, int h) {
  b.x1 = std::clamp(b.x1, 0, w);
  b.x2 = std::clamp(b.x2, 0, w);
  b.y1 = std::clamp(b.y1, 0, h);
  b.y2 = std::clamp(b.y2, 0, h);
  return b;
}

// Landmark box centered at a fraction of the ellipse height.
FaceBox landmark(int cx, int top, int bh, double cy_frac, double cx_off, int half_w,
                 int half_h) {
  const int y = top + int(std::lround(cy_frac * bh));
  const int x = cx + int(std::lround(cx_off));
  return FaceBox{x - half_w, y - half_h, x + half_w + 1, y + half_h + 1};
}

}  // namespace

void validate(const SynthParams& p) {
  if (p.width < 1 || p.height < 1) throw InvalidParams("frame must be at least 1x1");
  if (p.axis_x < 1 || p.axis_y < 1) throw InvalidParams("ellipse axes must be positive");
  if (p.face_sigma < 0.0 || p.bg_sigma < 0.0) throw InvalidParams("sigma must be non-negative");
  if (p.center_x - p.axis_x < 2 || p.center_x + p.axis_x > p.width - 3 ||
      p.center_y - p.axis_y < 2 || p.center_y + p.axis_y > p.height - 3) {
    throw InvalidParams("ellipse must keep a 2-pixel margin inside the frame");
  }
  if (p.face_mean - p.bg_mean < 4.0 * (p.face_sigma + p.bg_sigma)) {
    throw InvalidParams("face and background means must differ by at least 4*(sigma_face+sigma_bg)");
  }
}

std::pair<GrayImage, GroundTruth> generate_face(const SynthParams& p) {
  validate(p);
  const int w = p.width, h = p.height;
  const std::int64_t ax = p.axis_x, ay = p.axis_y;
  const std::int64_t ax2 = ax * ax, ay2 = ay * ay;

  double grad_amp = 0.0;
  if (p.spectrum == Spectrum::VIS) {
    if (p.illumination == Illumination::IR) grad_amp = p.gradient_low;
    if (p.illumination == Illumination::NA) grad_amp = p.gradient_high;
  }

  GrayImage img(h, w);
  for (int y = 0; y < h; ++y) {
    const std::int64_t dy = y - p.center_y;
    for (int x = 0; x < w; ++x) {
      const std::int64_t dx = x - p.center_x;
      const bool inside = dx * dx * ay2 + dy * dy * ax2 <= ax2 * ay2;
      const double mean = inside ? p.face_mean : p.bg_mean;
      const double sigma = inside ? p.face_sigma : p.bg_sigma;
      const double shade = w > 1 ? grad_amp * double(x) / double(w - 1) : 0.0;
      const std::uint64_t index = std::uint64_t(y) * std::uint64_t(w) + std::uint64_t(x);
      img(y, x) = clamp_pixel(mean + shade + sigma * gauss(p.seed, index));
    }
  }

  const int top = p.center_y - p.axis_y;
  const int bh = 2 * p.axis_y + 1;
  const int eye_hw = std::max(1, int(std::lround(0.14 * ax)));
  const int eye_hh = std::max(1, int(std::lround(0.05 * bh)));
  const int lip_hw = std::max(1, int(std::lround(0.25 * ax)));

  GroundTruth gt;
  gt.brows = landmark(p.center_x, top, bh, 0.32, 0.0,
                      std::max(1, int(std::lround(0.55 * ax))),
                      std::max(1, int(std::lround(0.04 * bh))));
  gt.left_eye = landmark(p.center_x, top, bh, 0.40, -0.38 * ax, eye_hw, eye_hh);
  gt.right_eye = landmark(p.center_x, top, bh, 0.40, 0.38 * ax, eye_hw, eye_hh);
  gt.lips = landmark(p.center_x, top, bh, 0.75, 0.0, lip_hw, eye_hh);
  gt.max_extent = clip_box(FaceBox{p.center_x - p.axis_x, top, p.center_x + p.axis_x + 1,
                                   top + bh + int(std::lround(0.15 * bh))},
                           w, h);
  return {std::move(img), gt};
}

GrayImage render_overlay(const GrayImage& img, const FaceBox& box) {
  const int w = static_cast<int>(img.cols());
  const int h = static_cast<int>(img.rows());
  if (!box.valid_within(w, h)) {
    std::ostringstream msg;
    msg << "box [" << box.x1 << "," << box.y1 << ")x[" << box.x2 << "," << box.y2
        << ") does not fit a " << w << "x" << h << " image";
    throw BoxOutOfBounds(msg.str());
  }
  GrayImage out = img;
  const int bw = box.width(), bh = box.height();
  out.row(box.y1).segment(box.x1, bw).setConstant(255);
  out.row(box.y2 - 1).segment(box.x1, bw).setConstant(255);
  out.col(box.x1).segment(box.y1, bh).setConstant(255);
  out.col(box.x2 - 1).segment(box.y1, bh).setConstant(255);
  return out;
}

std::string generate_dataset(const std::string& dir, int count, std::uint64_t seed,
                             std::optional<Spectrum> spectrum,
                             std::optional<Illumination> illumination,
                             const SynthParams& base) {
  if (count < 1) throw InvalidParams("dataset needs at least one image");
  validate(base);
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  const Spectrum spectra[] = {Spectrum::TH, Spectrum::VIS};
  const Illumination illums[] = {Illumination::AR, Illumination::IR, Illumination::NA};

  DatasetManifest manifest;
  for (int i = 0; i < count; ++i) {
    SynthParams p = base;
    p.spectrum = spectrum ? *spectrum : spectra[(i / 3) % 2];
    p.illumination = illumination ? *illumination : illums[i % 3];
    p.seed = splitmix64(seed ^ (std::uint64_t(i) * 0x9E3779B97F4A7C15ULL + 1));

    std::ostringstream stem;
    stem << "face_" << std::setw(4) << std::setfill('0') << i;
    const std::string image_name = stem.str() + ".pgm";
    const std::string gt_name = stem.str() + ".gt.json";

    const auto [img, gt] = generate_face(p);
    save_image(img, (fs::path(dir) / image_name).string());
    save_ground_truth(gt, (fs::path(dir) / gt_name).string());

    ManifestEntry e;
    e.image = image_name;
    e.spectrum = p.spectrum;
    e.illumination = p.illumination;
    e.ground_truth = gt_name;
    manifest.push_back(std::move(e));
  }

  const std::string manifest_path = (fs::path(dir) / "manifest.json").string();
  save_manifest(manifest, manifest_path);
  return manifest_path;
}

}  // namespace vhseg
