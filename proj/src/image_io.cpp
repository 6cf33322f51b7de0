#include "vhseg/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace vhseg {
namespace {

constexpr long kMaxDim = 1 << 20;

// Reads one PNM header token, skipping whitespace and '#' comments. For P5
// the single whitespace byte terminating the maxval token is consumed here,
// which leaves the stream positioned at the first payload byte.
std::string next_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF && (std::isspace(static_cast<unsigned char>(c)) || c == '#')) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    }
    c = in.get();
  }
  while (c != EOF && !std::isspace(static_cast<unsigned char>(c))) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  return tok;
}

long parse_pnm_int(std::istream& in, const char* what) {
  const std::string tok = next_token(in);
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) {
        return std::isdigit(c);
      })) {
    throw CorruptFile(std::string("pgm: bad or missing ") + what);
  }
  if (tok.size() > 9) throw CorruptFile(std::string("pgm: ") + what + " out of range");
  return std::stol(tok);
}

struct PngReadState {
  const unsigned char* data = nullptr;
  std::size_t size = 0;
  std::size_t pos = 0;
};

extern "C" void png_mem_read(png_structp png, png_bytep out, png_size_t n) {
  auto* s = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (s->pos + n > s->size) png_error(png, "read past end of buffer");
  std::memcpy(out, s->data + s->pos, n);
  s->pos += n;
}

extern "C" void png_mem_write(png_structp png, png_bytep data, png_size_t n) {
  auto* buf = static_cast<std::string*>(png_get_io_ptr(png));
  buf->append(reinterpret_cast<const char*>(data), n);
}

extern "C" void png_mem_flush(png_structp) {}

extern "C" void png_quiet_warning(png_structp, png_const_charp) {}

extern "C" void png_quiet_error(png_structp png, png_const_charp) {
  png_longjmp(png, 1);
}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;

  PngReader() {
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_quiet_error,
                                 png_quiet_warning);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) throw Error("png: failed to initialize reader");
  }
  ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
  PngReader(const PngReader&) = delete;
  PngReader& operator=(const PngReader&) = delete;
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;

  PngWriter() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_quiet_error,
                                  png_quiet_warning);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) throw Error("png: failed to initialize writer");
  }
  ~PngWriter() { png_destroy_write_struct(&png, &info); }
  PngWriter(const PngWriter&) = delete;
  PngWriter& operator=(const PngWriter&) = delete;
};

std::string lowercase_extension(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

}  // namespace

GrayImage decode_pgm(std::istream& in) {
  const std::string magic = next_token(in);
  if (magic.empty()) throw CorruptFile("pgm: missing magic");
  if (magic != "P5" && magic != "P2") {
    throw UnsupportedFormat("pgm: unsupported magic '" + magic + "'");
  }
  const long w = parse_pnm_int(in, "width");
  const long h = parse_pnm_int(in, "height");
  if (w < 1 || h < 1 || w > kMaxDim || h > kMaxDim) {
    throw CorruptFile("pgm: bad dimensions");
  }
  const long maxval = parse_pnm_int(in, "maxval");
  if (maxval > 255) throw UnsupportedFormat("pgm: maxval > 255 is not supported");
  if (maxval < 1) throw CorruptFile("pgm: maxval < 1");

  GrayImage img(h, w);
  const long n = w * h;
  if (magic == "P5") {
    in.read(reinterpret_cast<char*>(img.data()), n);
    if (in.gcount() != n) throw CorruptFile("pgm: truncated pixel data");
  } else {
    for (long i = 0; i < n; ++i) {
      const long v = parse_pnm_int(in, "pixel value");
      if (v > maxval) throw CorruptFile("pgm: pixel value exceeds maxval");
      img.data()[i] = static_cast<std::uint8_t>(v);
    }
  }
  if ((img > static_cast<std::uint8_t>(maxval)).any()) {
    throw CorruptFile("pgm: pixel value exceeds maxval");
  }
  return img;
}

void encode_pgm(const GrayImage& img, std::ostream& out) {
  out << "P5\n" << img.cols() << ' ' << img.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data()),
            static_cast<std::streamsize>(img.size()));
}

GrayImage decode_png(const std::string& bytes) {
  PngReader r;
  PngReadState state{reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), 0};

  if (setjmp(png_jmpbuf(r.png))) {
    throw CorruptFile("png: corrupt or truncated file");
  }
  png_set_read_fn(r.png, &state, png_mem_read);
  png_read_info(r.png, r.info);

  const png_uint_32 w = png_get_image_width(r.png, r.info);
  const png_uint_32 h = png_get_image_height(r.png, r.info);
  const int color = png_get_color_type(r.png, r.info);
  const int depth = png_get_bit_depth(r.png, r.info);
  if (color != PNG_COLOR_TYPE_GRAY) {
    throw UnsupportedFormat("png: only grayscale images are supported");
  }
  if (depth != 8) {
    throw UnsupportedFormat("png: only 8-bit depth is supported");
  }
  if (w < 1 || h < 1 || w > kMaxDim || h > kMaxDim) {
    throw CorruptFile("png: bad dimensions");
  }

  GrayImage img(h, w);
  std::vector<png_bytep> rows(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = img.data() + std::size_t(y) * w;

  if (setjmp(png_jmpbuf(r.png))) {
    throw CorruptFile("png: corrupt or truncated file");
  }
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);
  return img;
}

std::string encode_png(const GrayImage& img) {
  PngWriter w;
  std::string buf;
  std::vector<png_bytep> rows(img.rows());
  for (Eigen::Index y = 0; y < img.rows(); ++y) {
    rows[y] = const_cast<png_bytep>(img.data() + y * img.cols());
  }

  if (setjmp(png_jmpbuf(w.png))) {
    throw Error("png: encoding failed");
  }
  png_set_write_fn(w.png, &buf, png_mem_write, png_mem_flush);
  png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(img.cols()),
               static_cast<png_uint_32>(img.rows()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);
  png_write_image(w.png, rows.data());
  png_write_end(w.png, w.info);
  return buf;
}

GrayImage load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || !std::filesystem::is_regular_file(path)) {
    throw FileNotFound("cannot open image file: " + path);
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (bytes.size() >= 8 &&
      png_sig_cmp(reinterpret_cast<const unsigned char*>(bytes.data()), 0, 8) == 0) {
    return decode_png(bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P') {
    const char kind = bytes[1];
    if (kind == '2' || kind == '5') {
      std::istringstream s(bytes);
      return decode_pgm(s);
    }
    if (kind >= '1' && kind <= '7') {
      throw UnsupportedFormat("color or bitmap PNM is not supported: " + path);
    }
  }
  throw UnsupportedFormat("unrecognized image format: " + path);
}

void save_image(const GrayImage& img, const std::string& path) {
  const std::string ext = lowercase_extension(path);
  if (ext == ".pgm" || ext == ".pnm") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    encode_pgm(img, out);
    if (!out) throw Error("write failed: " + path);
  } else if (ext == ".png") {
    const std::string bytes = encode_png(img);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed: " + path);
  } else {
    throw UnsupportedFormat("cannot infer output format from extension: " + path);
  }
}

}  // namespace vhseg
