#include "vhseg/bench.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "vhseg/image_io.hpp"

namespace vhseg {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::optional<Spectrum> spectrum_from_string(const std::string& s) {
  if (s == "VIS") return Spectrum::VIS;
  if (s == "TH") return Spectrum::TH;
  return {};
}

std::optional<Illumination> illumination_from_string(const std::string& s) {
  if (s == "AR") return Illumination::AR;
  if (s == "IR") return Illumination::IR;
  if (s == "NA") return Illumination::NA;
  return {};
}

std::optional<DetectorKind> detector_from_string(const std::string& s) {
  if (s == "VH") return DetectorKind::VH;
  if (s == "VJ") return DetectorKind::VJ;
  return {};
}

ordered_json box_to_json(const FaceBox& b) {
  ordered_json j;
  j["x1"] = b.x1;
  j["y1"] = b.y1;
  j["x2"] = b.x2;
  j["y2"] = b.y2;
  return j;
}

FaceBox box_from_json(const json& j) {
  return FaceBox{j.at("x1").get<int>(), j.at("y1").get<int>(), j.at("x2").get<int>(),
                 j.at("y2").get<int>()};
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError(std::string("cannot open ") + what + ": " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string to_string(Spectrum s) { return s == Spectrum::VIS ? "VIS" : "TH"; }

std::string to_string(Illumination i) {
  switch (i) {
    case Illumination::AR: return "AR";
    case Illumination::IR: return "IR";
    default: return "NA";
  }
}

std::string to_string(DetectorKind d) { return d == DetectorKind::VH ? "VH" : "VJ"; }

Spectrum parse_spectrum(const std::string& s) {
  if (auto v = spectrum_from_string(s)) return *v;
  throw ManifestError("unknown spectrum '" + s + "' (expected VIS or TH)");
}

Illumination parse_illumination(const std::string& s) {
  if (auto v = illumination_from_string(s)) return *v;
  throw ManifestError("unknown illumination '" + s + "' (expected AR, IR or NA)");
}

bool evaluate_detection(const FaceBox& box, const GroundTruth& gt) {
  return box.contains(gt.brows) && box.contains(gt.left_eye) &&
         box.contains(gt.right_eye) && box.contains(gt.lips) &&
         gt.max_extent.contains(box);
}

double sdr(const std::vector<bool>& results) {
  if (results.empty()) throw EmptyResults("sdr over an empty result list");
  const auto correct = std::count(results.begin(), results.end(), true);
  return 100.0 * double(correct) / double(results.size());
}

TimingStats timing_stats(const std::vector<double>& durations_s) {
  if (durations_s.empty()) throw EmptyDurations("no durations to aggregate");
  TimingStats st;
  st.n = static_cast<int>(durations_s.size());
  for (double d : durations_s) {
    if (!(d > 0.0)) throw std::invalid_argument("durations must be positive");
    st.total_s += d;
  }
  st.mean_ms = st.total_s * 1000.0 / st.n;
  if (st.n > 1) {
    double acc = 0.0;
    for (double d : durations_s) {
      const double diff = d * 1000.0 - st.mean_ms;
      acc += diff * diff;
    }
    st.var_ms2 = acc / (st.n - 1);
  }
  return st;
}

DatasetManifest load_manifest(const std::string& path) {
  const std::string text = read_file(path, "manifest");
  const std::filesystem::path base = std::filesystem::path(path).parent_path();

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ManifestError(std::string("manifest: ") + e.what());
  }
  if (!j.is_array()) throw ManifestError("manifest: top level must be an array");

  auto resolve = [&base](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).string();
  };

  DatasetManifest manifest;
  try {
    for (const auto& je : j) {
      ManifestEntry e;
      e.image = resolve(je.at("image").get<std::string>());
      e.spectrum = parse_spectrum(je.at("spectrum").get<std::string>());
      e.illumination = parse_illumination(je.at("illumination").get<std::string>());
      e.ground_truth = resolve(je.at("ground_truth").get<std::string>());
      manifest.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw ManifestError(std::string("manifest: ") + e.what());
  }
  return manifest;
}

void save_manifest(const DatasetManifest& manifest, const std::string& path) {
  ordered_json j = ordered_json::array();
  for (const ManifestEntry& e : manifest) {
    ordered_json je;
    je["image"] = e.image;
    je["spectrum"] = to_string(e.spectrum);
    je["illumination"] = to_string(e.illumination);
    je["ground_truth"] = e.ground_truth;
    j.push_back(std::move(je));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

GroundTruth load_ground_truth(const std::string& path) {
  const std::string text = read_file(path, "ground truth");
  GroundTruth gt;
  try {
    const json j = json::parse(text);
    const auto& mi = j.at("must_include");
    gt.brows = box_from_json(mi.at("brows"));
    gt.left_eye = box_from_json(mi.at("left_eye"));
    gt.right_eye = box_from_json(mi.at("right_eye"));
    gt.lips = box_from_json(mi.at("lips"));
    gt.max_extent = box_from_json(j.at("max_extent"));
  } catch (const json::exception& e) {
    throw ManifestError("ground truth " + path + ": " + e.what());
  }
  for (const FaceBox* b : {&gt.brows, &gt.left_eye, &gt.right_eye, &gt.lips}) {
    if (!(b->x1 < b->x2 && b->y1 < b->y2) || !gt.max_extent.contains(*b)) {
      throw ManifestError("ground truth " + path +
                          ": landmark boxes must be well-formed and inside max_extent");
    }
  }
  return gt;
}

void save_ground_truth(const GroundTruth& gt, const std::string& path) {
  ordered_json j;
  j["must_include"]["brows"] = box_to_json(gt.brows);
  j["must_include"]["left_eye"] = box_to_json(gt.left_eye);
  j["must_include"]["right_eye"] = box_to_json(gt.right_eye);
  j["must_include"]["lips"] = box_to_json(gt.lips);
  j["max_extent"] = box_to_json(gt.max_extent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

BenchmarkReport run_benchmark(const DatasetManifest& manifest, const DetectorSet& detectors) {
  if (manifest.empty()) throw ManifestError("manifest is empty");
  if (!detectors.vh && !detectors.vj) {
    throw std::invalid_argument("run_benchmark: no detector selected");
  }

  using Key = std::tuple<DetectorKind, Spectrum, Illumination>;
  struct Group {
    std::vector<bool> results;
    std::vector<double> durations;
  };
  std::map<Key, Group> groups;
  using clock = std::chrono::steady_clock;

  for (const ManifestEntry& entry : manifest) {
    GrayImage img;
    try {
      img = load_image(entry.image);
    } catch (const Error& e) {
      throw ManifestError("cannot load image " + entry.image + ": " + e.what());
    }
    const GroundTruth gt = load_ground_truth(entry.ground_truth);
    const int w = static_cast<int>(img.cols());
    const int h = static_cast<int>(img.rows());
    for (const FaceBox* b :
         {&gt.brows, &gt.left_eye, &gt.right_eye, &gt.lips, &gt.max_extent}) {
      if (!b->valid_within(w, h)) {
        throw ManifestError("ground truth " + entry.ground_truth +
                            ": box outside image bounds");
      }
    }

    // Detection only is timed; image and annotation I/O stay outside.
    if (detectors.vh) {
      std::optional<FaceBox> box;
      const auto t0 = clock::now();
      try {
        box = segment_face(img, *detectors.vh);
      } catch (const Error&) {
        box.reset();
      }
      const auto t1 = clock::now();
      Group& g = groups[{DetectorKind::VH, entry.spectrum, entry.illumination}];
      g.results.push_back(box.has_value() && evaluate_detection(*box, gt));
      g.durations.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    if (detectors.vj) {
      std::vector<Detection> dets;
      const auto t0 = clock::now();
      try {
        dets = detect_multiscale(img, detectors.vj->cascade, detectors.vj->params);
      } catch (const Error&) {
        dets.clear();
      }
      const auto t1 = clock::now();
      Group& g = groups[{DetectorKind::VJ, entry.spectrum, entry.illumination}];
      g.results.push_back(!dets.empty() && evaluate_detection(dets.front().box, gt));
      g.durations.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
  }

  BenchmarkReport report;
  for (const auto& [key, group] : groups) {
    BenchRow row;
    row.detector = std::get<0>(key);
    row.spectrum = std::get<1>(key);
    row.illumination = std::get<2>(key);
    row.n_images = static_cast<int>(group.results.size());
    row.sdr_percent = sdr(group.results);
    row.timing = timing_stats(group.durations);
    report.rows.push_back(row);
  }
  return report;
}

std::string report_to_json(const BenchmarkReport& report) {
  ordered_json rows = ordered_json::array();
  for (const BenchRow& r : report.rows) {
    ordered_json j;
    j["detector"] = to_string(r.detector);
    j["spectrum"] = to_string(r.spectrum);
    j["illumination"] = to_string(r.illumination);
    j["n_images"] = r.n_images;
    j["sdr_percent"] = r.sdr_percent;
    j["timing"]["total_s"] = r.timing.total_s;
    j["timing"]["mean_ms"] = r.timing.mean_ms;
    j["timing"]["var_ms2"] = r.timing.var_ms2;
    j["timing"]["n"] = r.timing.n;
    rows.push_back(std::move(j));
  }
  ordered_json j;
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

BenchmarkReport report_from_json(const std::string& json_text) {
  BenchmarkReport report;
  try {
    const json j = json::parse(json_text);
    for (const auto& jr : j.at("rows")) {
      BenchRow r;
      const auto det = detector_from_string(jr.at("detector").get<std::string>());
      const auto spec = spectrum_from_string(jr.at("spectrum").get<std::string>());
      const auto illum = illumination_from_string(jr.at("illumination").get<std::string>());
      if (!det || !spec || !illum) throw ParseError("report: unknown detector/spectrum/illumination");
      r.detector = *det;
      r.spectrum = *spec;
      r.illumination = *illum;
      r.n_images = jr.at("n_images").get<int>();
      r.sdr_percent = jr.at("sdr_percent").get<double>();
      const auto& jt = jr.at("timing");
      r.timing.total_s = jt.at("total_s").get<double>();
      r.timing.mean_ms = jt.at("mean_ms").get<double>();
      r.timing.var_ms2 = jt.at("var_ms2").get<double>();
      r.timing.n = jt.at("n").get<int>();
      report.rows.push_back(r);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return report;
}

std::string report_to_text(const BenchmarkReport& report) {
  const Spectrum spectra[] = {Spectrum::VIS, Spectrum::TH};
  const DetectorKind detectors[] = {DetectorKind::VH, DetectorKind::VJ};
  const Illumination illums[] = {Illumination::AR, Illumination::IR, Illumination::NA};

  auto find_row = [&report](DetectorKind d, Spectrum s, Illumination i) -> const BenchRow* {
    for (const BenchRow& r : report.rows) {
      if (r.detector == d && r.spectrum == s && r.illumination == i) return &r;
    }
    return nullptr;
  };
  auto any_for = [&](DetectorKind d, Spectrum s) {
    for (Illumination i : illums) {
      if (find_row(d, s, i)) return true;
    }
    return false;
  };

  std::ostringstream out;
  out << std::fixed;

  out << "Successful detection rate [%]\n";
  out << "  " << std::left << std::setw(10) << "" << std::right;
  for (Illumination i : illums) out << std::setw(10) << to_string(i);
  out << '\n';
  for (Spectrum s : spectra) {
    for (DetectorKind d : detectors) {
      if (!any_for(d, s)) continue;
      out << "  " << std::left << std::setw(5) << to_string(s) << std::setw(5)
          << to_string(d) << std::right;
      for (Illumination i : illums) {
        if (const BenchRow* r = find_row(d, s, i)) {
          out << std::setw(10) << std::setprecision(2) << r->sdr_percent;
        } else {
          out << std::setw(10) << "-";
        }
      }
      out << '\n';
    }
  }

  for (Illumination i : illums) {
    bool present = false;
    for (const BenchRow& r : report.rows) present = present || r.illumination == i;
    if (!present) continue;
    out << "\nDetection time, " << to_string(i) << " illumination\n";
    out << "  " << std::left << std::setw(10) << "" << std::right << std::setw(12)
        << "d [s]" << std::setw(16) << "mean(d) [ms]" << std::setw(16)
        << "var(d) [ms^2]" << std::setw(8) << "n" << '\n';
    for (Spectrum s : spectra) {
      for (DetectorKind d : detectors) {
        const BenchRow* r = find_row(d, s, i);
        if (!r) continue;
        out << "  " << std::left << std::setw(5) << to_string(s) << std::setw(5)
            << to_string(d) << std::right << std::setw(12) << std::setprecision(3)
            << r->timing.total_s << std::setw(16) << std::setprecision(3)
            << r->timing.mean_ms << std::setw(16) << std::setprecision(3)
            << r->timing.var_ms2 << std::setw(8) << r->timing.n << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace vhseg
