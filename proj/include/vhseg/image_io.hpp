#pragma once

#include <iosfwd>
#include <string>

#include "vhseg/types.hpp"

namespace vhseg {

// Loads a grayscale image from a PGM (P5 binary or P2 ASCII, maxval <= 255)
// or an 8-bit grayscale PNG file. The format is detected from the file
// content, not the extension. Pixel values are returned exactly as stored;
// color or 16-bit inputs are rejected with UnsupportedFormat rather than
// converted.
//
// Throws FileNotFound, UnsupportedFormat, CorruptFile.
GrayImage load_image(const std::string& path);

// Writes `img` as binary PGM (P5) for a ".pgm"/".pnm" extension or as an
// 8-bit grayscale PNG for ".png". The PGM header is a single
// whitespace-separated "P5 <w> <h> 255" line followed by the binary payload.
void save_image(const GrayImage& img, const std::string& path);

// Stream-level codecs, used by the path-based functions above.
GrayImage decode_pgm(std::istream& in);
void encode_pgm(const GrayImage& img, std::ostream& out);
GrayImage decode_png(const std::string& bytes);
std::string encode_png(const GrayImage& img);

}  // namespace vhseg
