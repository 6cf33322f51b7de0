#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "vhseg/image_io.hpp"
#include "vhseg/otsu.hpp"

using namespace vhseg;

namespace {
const std::string kData = VHSEG_DATA_DIR;

GrayImage random_image(std::mt19937& rng, int max_dim = 64) {
  std::uniform_int_distribution<int> dim(1, max_dim);
  std::uniform_int_distribution<int> val(0, 255);
  GrayImage img(dim(rng), dim(rng));
  for (Eigen::Index i = 0; i < img.size(); ++i) img.data()[i] = std::uint8_t(val(rng));
  return img;
}
}  // namespace

TEST_CASE("decode_pgm reads binary P5") {
  const char px[] = {0, char(128), char(255), 7};
  std::istringstream in(std::string("P5\n2 2\n255\n") + std::string(px, 4));
  const GrayImage img = decode_pgm(in);
  REQUIRE(img.rows() == 2);
  REQUIRE(img.cols() == 2);
  CHECK(img(0, 0) == 0);
  CHECK(img(0, 1) == 128);
  CHECK(img(1, 0) == 255);
  CHECK(img(1, 1) == 7);
}

TEST_CASE("decode_pgm reads ASCII P2") {
  std::istringstream in("P2 1 1 255 42");
  const GrayImage img = decode_pgm(in);
  REQUIRE(img.rows() == 1);
  REQUIRE(img.cols() == 1);
  CHECK(img(0, 0) == 42);
}

TEST_CASE("decode_pgm handles comments and low maxval") {
  std::istringstream in("P2 # a comment\n2 1 # sizes\n9\n3 9");
  const GrayImage img = decode_pgm(in);
  CHECK(img(0, 0) == 3);
  CHECK(img(0, 1) == 9);
}

TEST_CASE("decode_pgm rejects bad input") {
  auto decode = [](const std::string& s) {
    std::istringstream in(s);
    return decode_pgm(in);
  };
  CHECK_THROWS_AS(decode("P3 1 1 255 1 2 3"), UnsupportedFormat);
  CHECK_THROWS_AS(decode("P5 1 1 65535 ab"), UnsupportedFormat);
  CHECK_THROWS_AS(decode("P5 0 1 255 "), CorruptFile);
  CHECK_THROWS_AS(decode("P5 2 2 255 ab"), CorruptFile);   // truncated payload
  CHECK_THROWS_AS(decode("P2 1 1 100 101"), CorruptFile);  // value above maxval
  CHECK_THROWS_AS(decode("P2 1 1 0 0"), CorruptFile);
  CHECK_THROWS_AS(decode(""), CorruptFile);
}

TEST_CASE("pgm round trip") {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    const GrayImage img = random_image(rng);
    std::stringstream buf;
    encode_pgm(img, buf);
    const GrayImage back = decode_pgm(buf);
    REQUIRE(back.rows() == img.rows());
    REQUIRE(back.cols() == img.cols());
    CHECK((back == img).all());
  }
}

TEST_CASE("png round trip") {
  std::mt19937 rng(12);
  for (int i = 0; i < 20; ++i) {
    const GrayImage img = random_image(rng, 48);
    const GrayImage back = decode_png(encode_png(img));
    REQUIRE(back.rows() == img.rows());
    REQUIRE(back.cols() == img.cols());
    CHECK((back == img).all());
  }
}

TEST_CASE("png decoding is strict about format") {
  const GrayImage g8 = load_image(kData + "/gray8.png");
  REQUIRE(g8.rows() == 2);
  REQUIRE(g8.cols() == 3);
  CHECK(g8(0, 0) == 0);
  CHECK(g8(0, 1) == 128);
  CHECK(g8(0, 2) == 255);
  CHECK(g8(1, 0) == 7);
  CHECK(g8(1, 1) == 42);
  CHECK(g8(1, 2) == 99);

  CHECK_THROWS_AS(load_image(kData + "/gray16.png"), UnsupportedFormat);
  CHECK_THROWS_AS(load_image(kData + "/rgb8.png"), UnsupportedFormat);
  CHECK_THROWS_AS(decode_png("not a png"), CorruptFile);
}

TEST_CASE("load_image sniffs content and reports missing files") {
  CHECK_THROWS_AS(load_image(kData + "/no_such_file.pgm"), FileNotFound);
  const GrayImage blob = load_image(kData + "/blob.pgm");
  CHECK(blob.cols() == 90);
  CHECK(blob.rows() == 120);
  CHECK(blob(0, 0) == 20);
  CHECK(blob(20, 30) == 200);
}

TEST_CASE("save_image dispatches on extension") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "vhseg_io_test";
  fs::create_directories(dir);
  std::mt19937 rng(13);
  const GrayImage img = random_image(rng, 32);

  for (const char* name : {"a.pgm", "a.pnm", "a.png", "UPPER.PGM"}) {
    const std::string path = (dir / name).string();
    save_image(img, path);
    const GrayImage back = load_image(path);
    CHECK((back == img).all());
  }
  CHECK_THROWS_AS(save_image(img, (dir / "a.bmp").string()), UnsupportedFormat);
  fs::remove_all(dir);
}

TEST_CASE("histogram counts every pixel") {
  GrayImage img(1, 3);
  img << 5, 5, 9;
  const Histogram h = histogram(img);
  CHECK(h[5] == 2);
  CHECK(h[9] == 1);
  CHECK(h.sum() == 3);

  const Histogram zeros = histogram(GrayImage::Zero(4, 4));
  CHECK(zeros[0] == 16);
  CHECK(zeros.sum() == 16);
}

TEST_CASE("histogram mass equals pixel count") {
  std::mt19937 rng(7);
  GrayImage img(64, 64);
  std::uniform_int_distribution<int> val(0, 255);
  for (Eigen::Index i = 0; i < img.size(); ++i) img.data()[i] = std::uint8_t(val(rng));
  CHECK(histogram(img).sum() == 4096);
}

TEST_CASE("otsu_threshold edge cases") {
  Histogram h = Histogram::Zero();
  CHECK_THROWS_AS(otsu_threshold(h), EmptyHistogram);

  h[7] = 100;  // single level: no split has two nonempty classes
  CHECK(otsu_threshold(h) == 0);

  Histogram two = Histogram::Zero();
  two[50] = 100;
  two[200] = 100;  // variance is maximal and constant on (50,200]; smallest wins
  CHECK(otsu_threshold(two) == 51);
}

TEST_CASE("otsu_threshold matches the exhaustive oracle") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> count(0, 1000);
  for (int i = 0; i < 200; ++i) {
    Histogram h = Histogram::Zero();
    for (int v = 0; v < 256; ++v) h[v] = count(rng);
    CHECK(otsu_threshold(h) == oracle::otsu_brute_force(h));
  }
}

TEST_CASE("otsu_threshold is invariant under power-of-two scaling") {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> count(0, 4000);
  for (int i = 0; i < 200; ++i) {
    Histogram h = Histogram::Zero();
    for (int v = 0; v < 256; ++v) h[v] = count(rng);
    const int t = otsu_threshold(h);
    CHECK(otsu_threshold((h * 2).eval()) == t);
    CHECK(otsu_threshold((h * 16).eval()) == t);
  }
}

TEST_CASE("binarize splits at the threshold") {
  GrayImage img(1, 2);
  img << 10, 200;
  const BinaryImage b = binarize(img, 100);
  CHECK(b(0, 0) == 0);
  CHECK(b(0, 1) == 1);

  GrayImage at(1, 1);
  at << 100;
  CHECK(binarize(at, 100)(0, 0) == 1);  // threshold value is foreground

  const BinaryImage all = binarize(img, 0);
  CHECK((all == 1).all());
}

TEST_CASE("binarize conserves the histogram tail") {
  std::mt19937 rng(44);
  std::uniform_int_distribution<int> tdist(0, 255);
  for (int i = 0; i < 50; ++i) {
    const GrayImage img = random_image(rng);
    const Histogram h = histogram(img);
    const int t = tdist(rng);
    std::int64_t tail = 0;
    for (int v = t; v < 256; ++v) tail += h[v];
    CHECK(binarize(img, t).cast<std::int64_t>().sum() == tail);
  }
}
