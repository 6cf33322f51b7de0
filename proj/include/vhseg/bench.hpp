#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vhseg/cascade.hpp"
#include "vhseg/projection.hpp"
#include "vhseg/types.hpp"

namespace vhseg {

enum class Spectrum { VIS, TH };
enum class Illumination { AR, IR, NA };
enum class DetectorKind { VH, VJ };

std::string to_string(Spectrum s);
std::string to_string(Illumination i);
std::string to_string(DetectorKind d);
Spectrum parse_spectrum(const std::string& s);          // throws ManifestError
Illumination parse_illumination(const std::string& s);  // throws ManifestError

// Annotation of one image: the landmark boxes a correct detection must
// contain and the largest extent it may cover (head plus allowed neck).
struct GroundTruth {
  FaceBox brows;
  FaceBox left_eye;
  FaceBox right_eye;
  FaceBox lips;
  FaceBox max_extent;
};

// A detection succeeds when the box contains the brows, both eyes and the
// whole lips, and itself stays inside the maximum extent.
bool evaluate_detection(const FaceBox& box, const GroundTruth& gt);

// Successful detection rate: 100 * correct / total. Throws EmptyResults.
double sdr(const std::vector<bool>& results);

struct TimingStats {
  double total_s = 0.0;   // sum of per-image durations, seconds
  double mean_ms = 0.0;   // total / n, milliseconds
  double var_ms2 = 0.0;   // sample variance (divisor n-1), ms^2; 0 when n = 1
  int n = 0;
};

// Aggregates per-image wall-clock durations given in seconds.
// Throws EmptyDurations.
TimingStats timing_stats(const std::vector<double>& durations_s);

struct ManifestEntry {
  std::string image;
  Spectrum spectrum = Spectrum::TH;
  Illumination illumination = Illumination::AR;
  std::string ground_truth;
};

using DatasetManifest = std::vector<ManifestEntry>;

// Reads a manifest (JSON array of {image, spectrum, illumination,
// ground_truth} objects). Relative paths are resolved against the manifest's
// own directory. Throws ManifestError.
DatasetManifest load_manifest(const std::string& path);

// Writes entries verbatim; keep paths relative for a relocatable dataset.
void save_manifest(const DatasetManifest& manifest, const std::string& path);

// Reads a ground-truth file: {"must_include": {"brows": box, "left_eye": box,
// "right_eye": box, "lips": box}, "max_extent": box} with each box an object
// {"x1","y1","x2","y2"}. Throws ManifestError.
GroundTruth load_ground_truth(const std::string& path);
void save_ground_truth(const GroundTruth& gt, const std::string& path);

struct BenchRow {
  DetectorKind detector = DetectorKind::VH;
  Spectrum spectrum = Spectrum::TH;
  Illumination illumination = Illumination::AR;
  int n_images = 0;
  double sdr_percent = 0.0;
  TimingStats timing;
};

struct BenchmarkReport {
  std::vector<BenchRow> rows;  // one row per present (detector, spectrum, illumination)
};

// Detector selection for a benchmark run; VJ needs a cascade.
struct DetectorSet {
  std::optional<VhParams> vh;
  struct Vj {
    Cascade cascade;
    DetectParams params;
  };
  std::optional<Vj> vj;
};

// Runs every selected detector on every manifest entry. Images are loaded
// outside the timed section; each detection is timed individually on the
// calling thread so the statistics reflect single-stream latency. A detector
// error on an image counts as a failed detection and the run continues. For
// VJ the highest-ranked detection is scored; an empty result is a failure.
//
// Throws ManifestError on an empty manifest or an unresolvable path.
BenchmarkReport run_benchmark(const DatasetManifest& manifest, const DetectorSet& detectors);

// Report serialization: a machine-readable JSON document and an
// aligned-column text rendering with one SDR grid (rows spectrum x detector,
// columns AR/IR/NA) plus one timing table per illumination.
std::string report_to_json(const BenchmarkReport& report);
BenchmarkReport report_from_json(const std::string& json_text);  // throws ParseError
std::string report_to_text(const BenchmarkReport& report);

}  // namespace vhseg
