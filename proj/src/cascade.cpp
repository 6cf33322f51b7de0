#include "vhseg/cascade.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace vhseg {
namespace {

using nlohmann::json;

Cascade cascade_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("cascade: top level must be an object");
  for (const auto& item : j.items()) {
    if (item.key() != "base_window" && item.key() != "stages") {
      throw ParseError("cascade: unknown top-level key '" + item.key() + "'");
    }
  }
  Cascade c;
  try {
    const auto& bw = j.at("base_window");
    if (!bw.is_array() || bw.size() != 2) {
      throw ParseError("cascade: base_window must be [width, height]");
    }
    c.base_width = bw.at(0).get<int>();
    c.base_height = bw.at(1).get<int>();

    for (const auto& js : j.at("stages")) {
      Stage stage;
      stage.threshold = js.at("threshold").get<double>();
      for (const auto& jt : js.at("stumps")) {
        Stump stump;
        stump.threshold = jt.at("threshold").get<double>();
        stump.left = jt.at("left").get<double>();
        stump.right = jt.at("right").get<double>();
        for (const auto& jr : jt.at("feature").at("rects")) {
          HaarRect r;
          r.x = jr.at("x").get<int>();
          r.y = jr.at("y").get<int>();
          r.w = jr.at("w").get<int>();
          r.h = jr.at("h").get<int>();
          r.weight = jr.at("weight").get<double>();
          stump.feature.rects.push_back(r);
        }
        stage.stumps.push_back(std::move(stump));
      }
      c.stages.push_back(std::move(stage));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("cascade: ") + e.what());
  }
  validate_cascade(c);
  return c;
}

struct ScaledRect {
  int x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  double weight = 0.0;
};

struct ScaledStump {
  std::vector<ScaledRect> rects;
  double threshold = 0.0, left = 0.0, right = 0.0;
};

struct ScaledStage {
  double threshold = 0.0;
  std::vector<ScaledStump> stumps;
};

struct ScaledCascade {
  int win_w = 0, win_h = 0;
  std::vector<ScaledStage> stages;
};

int scale_round(double v) { return static_cast<int>(std::lround(v)); }

// Scales rectangle endpoints by rounding; endpoint scaling is monotone, so
// the scaled rects stay inside the scaled window. Negative weights are then
// rebalanced so the weighted rectangle areas still cancel and a flat patch
// scores zero.
ScaledCascade scale_cascade(const Cascade& c, double scale) {
  ScaledCascade sc;
  sc.win_w = scale_round(c.base_width * scale);
  sc.win_h = scale_round(c.base_height * scale);
  for (const Stage& stage : c.stages) {
    ScaledStage ss;
    ss.threshold = stage.threshold;
    for (const Stump& stump : stage.stumps) {
      ScaledStump st;
      st.threshold = stump.threshold;
      st.left = stump.left;
      st.right = stump.right;
      double positive = 0.0;
      double negative = 0.0;
      for (const HaarRect& r : stump.feature.rects) {
        ScaledRect s;
        s.x1 = scale_round(r.x * scale);
        s.y1 = scale_round(r.y * scale);
        s.x2 = scale_round((r.x + r.w) * scale);
        s.y2 = scale_round((r.y + r.h) * scale);
        s.weight = r.weight;
        const double area = double(s.x2 - s.x1) * double(s.y2 - s.y1);
        if (r.weight > 0) {
          positive += r.weight * area;
        } else {
          negative -= r.weight * area;
        }
        st.rects.push_back(s);
      }
      if (negative > 0) {
        const double k = positive / negative;
        for (ScaledRect& s : st.rects) {
          if (s.weight < 0) s.weight *= k;
        }
      }
      ss.stumps.push_back(std::move(st));
    }
    sc.stages.push_back(std::move(ss));
  }
  return sc;
}

WindowResult evaluate_scaled(const IntegralImage& sums, const IntegralImage& squares,
                             const ScaledCascade& sc, int x0, int y0) {
  const double n = double(sc.win_w) * double(sc.win_h);
  const double s = double(sums.rect_sum(x0, y0, x0 + sc.win_w, y0 + sc.win_h));
  const double s2 = double(squares.rect_sum(x0, y0, x0 + sc.win_w, y0 + sc.win_h));
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  if (!(var > 0.0)) return {false, 0.0};  // flat window
  const double inv_norm = 1.0 / (std::sqrt(var) * n);

  double score = 0.0;
  for (const ScaledStage& stage : sc.stages) {
    double sum = 0.0;
    for (const ScaledStump& stump : stage.stumps) {
      double raw = 0.0;
      for (const ScaledRect& r : stump.rects) {
        raw += r.weight *
               double(sums.rect_sum(x0 + r.x1, y0 + r.y1, x0 + r.x2, y0 + r.y2));
      }
      sum += raw * inv_norm < stump.threshold ? stump.left : stump.right;
    }
    score += sum - stage.threshold;
    if (sum < stage.threshold) return {false, score};
  }
  return {true, score};
}

double iou(const FaceBox& a, const FaceBox& b) {
  const int ix1 = std::max(a.x1, b.x1);
  const int iy1 = std::max(a.y1, b.y1);
  const int ix2 = std::min(a.x2, b.x2);
  const int iy2 = std::min(a.y2, b.y2);
  const long long iw = std::max(0, ix2 - ix1);
  const long long ih = std::max(0, iy2 - iy1);
  const long long inter = iw * ih;
  const long long uni = static_cast<long long>(a.width()) * a.height() +
                        static_cast<long long>(b.width()) * b.height() - inter;
  return uni > 0 ? double(inter) / double(uni) : 0.0;
}

}  // namespace

void validate_cascade(const Cascade& cascade) {
  if (cascade.base_width < 1 || cascade.base_height < 1) {
    throw ValidationError("cascade: base window must be at least 1x1");
  }
  if (cascade.stages.empty()) {
    throw ValidationError("cascade: at least one stage is required");
  }
  for (std::size_t si = 0; si < cascade.stages.size(); ++si) {
    const Stage& stage = cascade.stages[si];
    const std::string where = "cascade stage " + std::to_string(si);
    if (stage.stumps.empty()) throw ValidationError(where + ": no stumps");
    for (const Stump& stump : stage.stumps) {
      const auto& rects = stump.feature.rects;
      if (rects.size() < 2 || rects.size() > 4) {
        throw ValidationError(where + ": feature must have 2-4 rects, has " +
                              std::to_string(rects.size()));
      }
      bool any_positive = false;
      bool any_negative = false;
      for (const HaarRect& r : rects) {
        if (r.w < 1 || r.h < 1 || r.x < 0 || r.y < 0 ||
            r.x + r.w > cascade.base_width || r.y + r.h > cascade.base_height) {
          throw ValidationError(where + ": feature rect outside the base window");
        }
        any_positive = any_positive || r.weight > 0;
        any_negative = any_negative || r.weight < 0;
      }
      if (!any_positive || !any_negative) {
        throw ValidationError(where + ": feature weights must carry both signs");
      }
    }
  }
}

Cascade parse_cascade(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open cascade file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_cascade_text(buf.str());
}

Cascade parse_cascade_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("cascade: ") + e.what());
  }
  return cascade_from_json(j);
}

WindowResult evaluate_window(const IntegralImage& sums, const IntegralImage& squares,
                             const Cascade& cascade, int x, int y, double scale) {
  if (scale < 1.0) throw std::invalid_argument("evaluate_window requires scale >= 1");
  const ScaledCascade sc = scale_cascade(cascade, scale);
  if (x < 0 || y < 0 || x + sc.win_w > sums.width() || y + sc.win_h > sums.height()) {
    throw WindowOutOfBounds("window " + std::to_string(sc.win_w) + "x" +
                            std::to_string(sc.win_h) + " at (" + std::to_string(x) +
                            ", " + std::to_string(y) + ") exceeds the image");
  }
  return evaluate_scaled(sums, squares, sc, x, y);
}

std::vector<Detection> detect_multiscale(const GrayImage& img, const Cascade& cascade,
                                         const DetectParams& params) {
  if (params.scale_step <= 1.0) throw std::invalid_argument("scale_step must be > 1");
  if (params.stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (params.min_neighbors < 1) throw std::invalid_argument("min_neighbors must be >= 1");

  const int w = static_cast<int>(img.cols());
  const int h = static_cast<int>(img.rows());
  const IntegralImage sums = integral_image(img);
  const IntegralImage squares = integral_image_squared(img);

  struct RawHit {
    FaceBox box;
    double score = 0.0;
  };
  std::vector<RawHit> hits;
  for (double scale = 1.0;; scale *= params.scale_step) {
    const ScaledCascade sc = scale_cascade(cascade, scale);
    if (sc.win_w > w || sc.win_h > h) break;
    for (int y = 0; y + sc.win_h <= h; y += params.stride) {
      for (int x = 0; x + sc.win_w <= w; x += params.stride) {
        const WindowResult r = evaluate_scaled(sums, squares, sc, x, y);
        if (r.accepted) {
          hits.push_back({FaceBox{x, y, x + sc.win_w, y + sc.win_h}, r.score});
        }
      }
    }
  }

  // Merge raw hits whose boxes overlap with IoU >= 0.5 (transitive closure).
  std::vector<std::size_t> parent(hits.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (std::size_t i = 0; i < hits.size(); ++i) {
    for (std::size_t j = i + 1; j < hits.size(); ++j) {
      if (iou(hits[i].box, hits[j].box) >= 0.5) {
        parent[find(j)] = find(i);
      }
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < hits.size(); ++i) groups[find(i)].push_back(i);

  std::vector<Detection> detections;
  for (const auto& [root, members] : groups) {
    if (static_cast<int>(members.size()) < params.min_neighbors) continue;
    double x1 = 0, y1 = 0, x2 = 0, y2 = 0, score = 0;
    for (std::size_t i : members) {
      x1 += hits[i].box.x1;
      y1 += hits[i].box.y1;
      x2 += hits[i].box.x2;
      y2 += hits[i].box.y2;
      score += hits[i].score;
    }
    const double n = double(members.size());
    Detection d;
    d.box = FaceBox{scale_round(x1 / n), scale_round(y1 / n), scale_round(x2 / n),
                    scale_round(y2 / n)};
    d.score = score / n;
    d.neighbors = static_cast<int>(members.size());
    detections.push_back(d);
  }

  std::sort(detections.begin(), detections.end(), [](const Detection& a, const Detection& b) {
    if (a.neighbors != b.neighbors) return a.neighbors > b.neighbors;
    if (a.score != b.score) return a.score > b.score;
    return std::tie(a.box.y1, a.box.x1, a.box.y2, a.box.x2) <
           std::tie(b.box.y1, b.box.x1, b.box.y2, b.box.x2);
  });
  return detections;
}

}  // namespace vhseg
