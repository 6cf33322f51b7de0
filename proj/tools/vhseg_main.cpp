#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "vhseg/bench.hpp"
#include "vhseg/cascade.hpp"
#include "vhseg/image_io.hpp"
#include "vhseg/otsu.hpp"
#include "vhseg/projection.hpp"
#include "vhseg/synth.hpp"

namespace {

void print_box(const vhseg::FaceBox& box, bool as_json) {
  if (as_json) {
    nlohmann::ordered_json j;
    j["x1"] = box.x1;
    j["y1"] = box.y1;
    j["x2"] = box.x2;
    j["y2"] = box.y2;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "x1=" << box.x1 << " y1=" << box.y1 << " x2=" << box.x2
              << " y2=" << box.y2 << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Face segmentation by projection profiles, with a Viola-Jones baseline"};
  app.require_subcommand(1);

  auto* seg = app.add_subcommand("segment", "Detect the face box in one image");
  std::string seg_image;
  vhseg::VhParams seg_params;
  bool seg_json = false;
  std::string seg_overlay;
  seg->add_option("image", seg_image, "input image (PGM or PNG)")->required();
  seg->add_option("--border-fraction", seg_params.border_fraction,
                  "profile border threshold as a fraction of the profile maximum");
  seg->add_option("--min-run", seg_params.min_run, "consecutive rows required at the top border");
  seg->add_option("--aspect-num", seg_params.aspect_num, "height/width ratio numerator");
  seg->add_option("--aspect-den", seg_params.aspect_den, "height/width ratio denominator");
  seg->add_flag("--json", seg_json, "print the box as a JSON object");
  seg->add_option("--overlay", seg_overlay, "also write a copy of the image with the box drawn");

  auto* otsu = app.add_subcommand("otsu", "Print the Otsu threshold of an image");
  std::string otsu_image;
  otsu->add_option("image", otsu_image, "input image (PGM or PNG)")->required();

  auto* bench = app.add_subcommand("bench", "Run detectors over a dataset manifest");
  std::string bench_manifest;
  std::vector<std::string> bench_detectors;
  std::string bench_cascade;
  std::string bench_report;
  bench->add_option("--manifest", bench_manifest, "dataset manifest JSON")->required();
  bench->add_option("--detector", bench_detectors, "detector to run (repeatable)")
      ->required()
      ->check(CLI::IsMember({"vh", "vj"}));
  bench->add_option("--cascade", bench_cascade, "cascade JSON, required with --detector vj");
  bench->add_option("--report", bench_report, "write the JSON report to this path");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  int synth_count = 0;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  std::string synth_spectrum;
  std::string synth_illum;
  synth->add_option("--count", synth_count, "number of images")->required();
  synth->add_option("--seed", synth_seed, "master seed");
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--spectrum", synth_spectrum, "pin the spectrum tag")
      ->check(CLI::IsMember({"th", "vis"}));
  synth->add_option("--illum", synth_illum, "pin the illumination tag")
      ->check(CLI::IsMember({"ar", "ir", "na"}));

  auto* overlay = app.add_subcommand("overlay", "Draw a face box onto an image");
  std::string ov_image;
  std::string ov_out;
  std::vector<int> ov_box;
  overlay->add_option("image", ov_image, "input image (PGM or PNG)")->required();
  overlay->add_option("--out", ov_out, "output image path")->required();
  overlay->add_option("--box", ov_box, "box as x1,y1,x2,y2 (default: segment the image)")
      ->delimiter(',')
      ->expected(4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const bool want_vj =
      std::find(bench_detectors.begin(), bench_detectors.end(), "vj") != bench_detectors.end();
  if (bench->parsed() && want_vj && bench_cascade.empty()) {
    std::cerr << "bench: --cascade is required with --detector vj\n";
    return 1;
  }

  try {
    if (seg->parsed()) {
      const vhseg::GrayImage img = vhseg::load_image(seg_image);
      const vhseg::FaceBox box = vhseg::segment_face(img, seg_params);
      print_box(box, seg_json);
      if (!seg_overlay.empty()) {
        vhseg::save_image(vhseg::render_overlay(img, box), seg_overlay);
      }
    } else if (otsu->parsed()) {
      const vhseg::GrayImage img = vhseg::load_image(otsu_image);
      std::cout << vhseg::otsu_threshold(vhseg::histogram(img)) << '\n';
    } else if (bench->parsed()) {
      vhseg::DetectorSet detectors;
      for (const std::string& d : bench_detectors) {
        if (d == "vh") detectors.vh = vhseg::VhParams{};
        if (d == "vj") {
          detectors.vj = vhseg::DetectorSet::Vj{vhseg::parse_cascade(bench_cascade), {}};
        }
      }
      const vhseg::BenchmarkReport report =
          vhseg::run_benchmark(vhseg::load_manifest(bench_manifest), detectors);
      std::cout << vhseg::report_to_text(report);
      if (!bench_report.empty()) {
        std::ofstream out(bench_report, std::ios::binary);
        if (!out) throw vhseg::Error("cannot open for writing: " + bench_report);
        out << vhseg::report_to_json(report);
      }
    } else if (synth->parsed()) {
      std::optional<vhseg::Spectrum> spectrum;
      if (synth_spectrum == "th") spectrum = vhseg::Spectrum::TH;
      if (synth_spectrum == "vis") spectrum = vhseg::Spectrum::VIS;
      std::optional<vhseg::Illumination> illum;
      if (synth_illum == "ar") illum = vhseg::Illumination::AR;
      if (synth_illum == "ir") illum = vhseg::Illumination::IR;
      if (synth_illum == "na") illum = vhseg::Illumination::NA;
      std::cout << vhseg::generate_dataset(synth_out, synth_count, synth_seed, spectrum, illum)
                << '\n';
    } else if (overlay->parsed()) {
      const vhseg::GrayImage img = vhseg::load_image(ov_image);
      vhseg::FaceBox box;
      if (ov_box.size() == 4) {
        box = vhseg::FaceBox{ov_box[0], ov_box[1], ov_box[2], ov_box[3]};
      } else {
        box = vhseg::segment_face(img, vhseg::VhParams{});
      }
      vhseg::save_image(vhseg::render_overlay(img, box), ov_out);
      print_box(box, false);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
