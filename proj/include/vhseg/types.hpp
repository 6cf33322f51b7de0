#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>

namespace vhseg {

// Dense row-major raster; element (y, x) is row y, column x, so a raster of
// width W and height H has H rows and W columns and data()[y * W + x] scans
// rows top to bottom.
template <typename Scalar>
using Raster = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// 8-bit single-channel image, intensities in [0,255].
using GrayImage = Raster<std::uint8_t>;

// Same layout as GrayImage but every element is 0 or 1; 1 is the hot
// (foreground) class.
using BinaryImage = Raster<std::uint8_t>;

// Half-open rectangle [x1,x2) x [y1,y2) in pixel coordinates.
struct FaceBox {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  int width() const { return x2 - x1; }
  int height() const { return y2 - y1; }

  bool valid_within(int image_width, int image_height) const {
    return 0 <= x1 && x1 < x2 && x2 <= image_width && 0 <= y1 && y1 < y2 &&
           y2 <= image_height;
  }

  // True when `inner` lies entirely inside this box.
  bool contains(const FaceBox& inner) const {
    return x1 <= inner.x1 && inner.x2 <= x2 && y1 <= inner.y1 && inner.y2 <= y2;
  }

  bool operator==(const FaceBox&) const = default;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// imaging
struct FileNotFound : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };
struct CorruptFile : Error { using Error::Error; };
struct EmptyHistogram : Error { using Error::Error; };

// detection
struct NoFaceFound : Error { using Error::Error; };
struct InvalidRange : Error { using Error::Error; };
struct DegenerateWidth : Error { using Error::Error; };
struct DegenerateBox : Error { using Error::Error; };

// cascade
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct WindowOutOfBounds : Error { using Error::Error; };

// benchmark
struct EmptyResults : Error { using Error::Error; };
struct EmptyDurations : Error { using Error::Error; };
struct ManifestError : Error { using Error::Error; };

// synthesis
struct InvalidParams : Error { using Error::Error; };
struct BoxOutOfBounds : Error { using Error::Error; };

}  // namespace vhseg
