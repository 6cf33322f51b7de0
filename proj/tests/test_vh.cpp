#include <doctest.h>

#include <random>
#include <string>

#include "vhseg/image_io.hpp"
#include "vhseg/projection.hpp"

using namespace vhseg;

namespace {
const std::string kData = VHSEG_DATA_DIR;

ProjectionProfile make_profile(Axis axis, std::initializer_list<std::int64_t> vals) {
  ProjectionProfile p;
  p.axis = axis;
  p.values.resize(Eigen::Index(vals.size()));
  Eigen::Index i = 0;
  for (std::int64_t v : vals) p.values[i++] = v;
  return p;
}

// Flat background with one brighter rectangular block; every pipeline stage
// is predictable by hand on these.
GrayImage block_image(int w, int h, const FaceBox& block, std::uint8_t bg = 20,
                      std::uint8_t fg = 200) {
  GrayImage img = GrayImage::Constant(h, w, bg);
  img.block(block.y1, block.x1, block.height(), block.width()).setConstant(fg);
  return img;
}
}  // namespace

TEST_CASE("vertical_projection counts per row") {
  BinaryImage bin(2, 3);
  bin << 1, 0, 1, 0, 0, 0;
  const ProjectionProfile p = vertical_projection(bin);
  CHECK(p.axis == Axis::Vertical);
  REQUIRE(p.values.size() == 2);
  CHECK(p.values[0] == 2);
  CHECK(p.values[1] == 0);
}

TEST_CASE("horizontal_projection counts per column over a band") {
  BinaryImage bin(3, 3);
  bin << 1, 0, 1, 0, 1, 0, 1, 1, 1;
  const ProjectionProfile full = horizontal_projection(bin, 0, 3);
  CHECK(full.axis == Axis::Horizontal);
  CHECK(full.values[0] == 2);
  CHECK(full.values[1] == 2);
  CHECK(full.values[2] == 2);

  const ProjectionProfile band = horizontal_projection(bin, 0, 1);
  CHECK(band.values[0] == 1);
  CHECK(band.values[1] == 0);
  CHECK(band.values[2] == 1);

  CHECK_THROWS_AS(horizontal_projection(bin, -1, 2), InvalidRange);
  CHECK_THROWS_AS(horizontal_projection(bin, 0, 4), InvalidRange);
  CHECK_THROWS_AS(horizontal_projection(bin, 2, 2), InvalidRange);
}

TEST_CASE("projections conserve the foreground mass") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> dim(1, 40);
  std::bernoulli_distribution bit(0.3);
  for (int i = 0; i < 100; ++i) {
    BinaryImage bin(dim(rng), dim(rng));
    for (Eigen::Index k = 0; k < bin.size(); ++k) bin.data()[k] = bit(rng) ? 1 : 0;
    const std::int64_t total = bin.cast<std::int64_t>().sum();
    CHECK(vertical_projection(bin).values.sum() == total);
    CHECK(horizontal_projection(bin, 0, int(bin.rows())).values.sum() == total);
  }
}

TEST_CASE("find_top_border wants a sustained run") {
  CHECK(find_top_border(make_profile(Axis::Vertical, {0, 0, 5, 9, 9, 9})) == 2);
  // a single qualifying row is ignored; the first run of two counts
  CHECK(find_top_border(make_profile(Axis::Vertical,
                                     {0, 0, 0, 0, 0, 9, 0, 0, 0, 0, 8, 8, 8})) == 10);
  CHECK_THROWS_AS(find_top_border(make_profile(Axis::Vertical, {0, 0, 0})), NoFaceFound);
  CHECK_THROWS_AS(find_top_border(make_profile(Axis::Vertical, {})), NoFaceFound);
  CHECK_THROWS_AS(find_top_border(make_profile(Axis::Vertical, {9, 0, 9, 0})), NoFaceFound);
  CHECK_THROWS_AS(find_top_border(make_profile(Axis::Horizontal, {9, 9})),
                  std::invalid_argument);
}

TEST_CASE("find_horizontal_limits brackets the face") {
  const auto [x1, x2] = find_horizontal_limits(make_profile(Axis::Horizontal, {0, 0, 7, 7, 7, 0}));
  CHECK(x1 == 2);
  CHECK(x2 == 5);
  CHECK_THROWS_AS(find_horizontal_limits(make_profile(Axis::Horizontal, {0, 9, 0})),
                  DegenerateWidth);
  CHECK_THROWS_AS(find_horizontal_limits(make_profile(Axis::Horizontal, {0, 0})),
                  NoFaceFound);
  CHECK_THROWS_AS(find_horizontal_limits(make_profile(Axis::Vertical, {1, 1})),
                  std::invalid_argument);
}

TEST_CASE("compute_bottom applies the 13/9 aspect ratio") {
  CHECK(compute_bottom(20, 30, 60, 120) == 63);   // 20 + round(30 * 13/9)
  CHECK(compute_bottom(100, 30, 60, 120) == 120); // clipped to the image
  CHECK(compute_bottom(0, 0, 9, 100) == 13);      // exact multiple
  CHECK(compute_bottom(0, 0, 3, 100) == 4);       // 4.33 rounds down
  CHECK_THROWS_AS(compute_bottom(120, 0, 2, 120), DegenerateBox);
  CHECK_THROWS_AS(compute_bottom(0, 5, 5, 100), std::invalid_argument);
}

TEST_CASE("segment_face reproduces the hand trace") {
  const FaceBox expected{30, 20, 60, 63};

  const GrayImage img = block_image(90, 120, FaceBox{30, 20, 60, 80});
  CHECK(segment_face(img) == expected);

  const GrayImage from_disk = load_image(kData + "/blob.pgm");
  CHECK(segment_face(from_disk) == expected);
}

TEST_CASE("segment_face rejects featureless images") {
  CHECK_THROWS_AS(segment_face(GrayImage::Constant(50, 50, 77)), NoFaceFound);
  CHECK_THROWS_AS(segment_face(GrayImage()), NoFaceFound);
}

TEST_CASE("segment_face is translation equivariant on block scenes") {
  std::mt19937 rng(22);
  const int W = 160, H = 160;
  std::uniform_int_distribution<int> bw(8, 40), bh(8, 40);
  for (int i = 0; i < 100; ++i) {
    const int w = bw(rng), h = bh(rng);
    std::uniform_int_distribution<int> px(0, W - w - 9), py(0, H - h - 9);
    std::uniform_int_distribution<int> shift(0, 8);
    const int x = px(rng), y = py(rng);
    const int dx = shift(rng), dy = shift(rng);

    const FaceBox a = segment_face(block_image(W, H, FaceBox{x, y, x + w, y + h}));
    const FaceBox b =
        segment_face(block_image(W, H, FaceBox{x + dx, y + dy, x + dx + w, y + dy + h}));
    CHECK(b.x1 == a.x1 + dx);
    CHECK(b.x2 == a.x2 + dx);
    CHECK(b.y1 == a.y1 + dy);
    // bottoms agree up to clipping: same width, so the same rise
    const long long rise = (2LL * a.width() * 13 + 9) / (2 * 9);
    CHECK(a.y2 == std::min<long long>(H, a.y1 + rise));
    CHECK(b.y2 == std::min<long long>(H, b.y1 + rise));
  }
}

TEST_CASE("segment_face box is valid and obeys the aspect law") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> dim(60, 200), bw(6, 30);
  for (int i = 0; i < 100; ++i) {
    const int W = dim(rng), H = dim(rng);
    const int w = bw(rng), h = bw(rng);
    std::uniform_int_distribution<int> px(1, W - w - 2), py(1, H - h - 2);
    const int x = px(rng), y = py(rng);
    const FaceBox box = segment_face(block_image(W, H, FaceBox{x, y, x + w, y + h}));
    CHECK(box.valid_within(W, H));
    const long long rise = (2LL * box.width() * 13 + 9) / (2 * 9);
    if (box.y1 + rise <= H) CHECK(box.y2 - box.y1 == rise);
  }
}
