#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "panolayout/detect.hpp"
#include "panolayout/geometry.hpp"
#include "panolayout/layout.hpp"
#include "panolayout/metrics.hpp"
#include "panolayout/pngio.hpp"
#include "panolayout/serialize.hpp"
#include "panolayout/synth.hpp"

namespace {

using namespace panolayout;

constexpr double kPi = 3.14159265358979323846;
constexpr double kDefaultDecay = 0.6931471805599453;  // ln 2

// exit codes: 0 success, 2 usage error, 3 data error, 4 estimation failure
struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CubemapOpts {
  std::string in, outdir;
  int size = 512;
};

int cmd_cubemap(const CubemapOpts& o) {
  EquirectImage pano = to_gray(read_png(o.in));
  Cubemap cm = make_cubemap(pano, o.size);
  std::filesystem::create_directories(o.outdir);
  std::ostringstream manifest;
  manifest << "{\"faces\":{";
  for (int f = 0; f < kFaceCount; f++) {
    std::string name = face_name(kAllFaces[f]);
    write_png(o.outdir + "/" + name + ".png", cm.faces[f]);
    manifest << (f ? "," : "") << "\"" << name << "\":\"" << name << ".png\"";
  }
  manifest << "},\"size\":" << o.size << "}";
  write_text_file(o.outdir + "/manifest.json", manifest.str());
  return 0;
}

struct EstimateOpts {
  std::string in, out, overlay, detector = "hts", gt, init = "detect";
  std::string dump_lines, dump_targets;
  double perturb = 0.05, lr = 0.01, decay = kDefaultDecay;
  double canny_low = 0.1, canny_high = 0.2;
  int size = 512, bin_scale = 1, steps = 100, ht_threshold = -1;
  uint64_t seed = 0;
};

void draw_overlay(Image& rgb, const LayoutParams& T) {
  int W = rgb.width, H = rgb.height;
  auto set_red = [&](int x, int y) {
    if (x < 0 || x >= W || y < 0 || y >= H) return;
    rgb.at(x, y, 0) = 1.0;
    rgb.at(x, y, 1) = 0.1;
    rgb.at(x, y, 2) = 0.1;
  };
  auto vpix = [&](double lat) {
    return static_cast<int>(std::lround((kPi / 2 - lat) / kPi * H - 0.5));
  };
  std::vector<ColumnProfile> prof(W);
  for (int x = 0; x < W; x++)
    prof[x] = column_profile(T, (x + 0.5) / W * 2 * kPi - kPi);
  for (int x = 0; x < W; x++) {
    set_red(x, vpix(prof[x].lat_ceil));
    set_red(x, vpix(prof[x].lat_floor));
    const ColumnProfile& nxt = prof[(x + 1) % W];
    if (prof[x].wall_index != nxt.wall_index) {
      int top = std::min(vpix(prof[x].lat_ceil), vpix(nxt.lat_ceil));
      int bot = std::max(vpix(prof[x].lat_floor), vpix(nxt.lat_floor));
      for (int y = top; y <= bot; y++) set_red(x, y);
    }
  }
}

LayoutParams perturbed(const LayoutParams& gt, double amount, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amount, amount);
  for (int attempt = 0; attempt < 100; attempt++) {
    LayoutParams T = gt;
    for (double& d : T.wall_distances) d *= 1.0 + u(rng);
    T.room_height = T.camera_height +
                    (gt.room_height - gt.camera_height) * (1.0 + u(rng));
    if (layout_valid(T)) return T;
  }
  throw EstimationError("perturbation left no valid layout");
}

int cmd_estimate(const EstimateOpts& o) {
  EquirectImage pano = to_gray(read_png(o.in));
  Cubemap cm = make_cubemap(pano, o.size);

  std::array<std::vector<ManhattanLine>, kFaceCount> lines;
  if (o.detector == "oracle") {
    LayoutParams gt = layout_from_json(read_text_file(o.gt));
    lines = corners_to_tile_lines(layout_to_corners(gt), o.size);
  } else {
    for (int f = 0; f < kFaceCount; f++) {
      EdgeMap edges = canny(cm.faces[f], o.canny_low, o.canny_high);
      std::vector<HoughLine> hl;
      if (o.detector == "hts") {
        hl = ht_standard(edges, o.ht_threshold >= 0 ? o.ht_threshold : 100);
      } else {
        auto segs =
            ht_probabilistic(edges, o.ht_threshold >= 0 ? o.ht_threshold : 50,
                             30, 5, o.seed * kFaceCount + f);
        hl = segments_to_lines(segs);
      }
      lines[f] = group_and_select(filter_manhattan(hl, o.size, o.size), o.size);
    }
  }
  if (!o.dump_lines.empty())
    write_text_file(o.dump_lines, tile_lines_to_json(lines));

  LineTargets S;
  for (int f = 0; f < kFaceCount; f++)
    S[f] = vectors_from_lines(lines[f], o.size, o.size, o.bin_scale, o.decay);
  if (!o.dump_targets.empty())
    write_text_file(o.dump_targets, targets_to_json(S));

  LayoutParams T0;
  if (o.init == "gt-perturbed") {
    LayoutParams gt = layout_from_json(read_text_file(o.gt));
    T0 = perturbed(gt, o.perturb, o.seed);
  } else {
    auto dists = init_distances(lines, kCameraHeight, o.size);
    if (!dists)
      throw EstimationError(
          "initialization failed: fewer than 4 wall-floor lines");
    T0.wall_distances = *dists;
    T0.camera_height = kCameraHeight;
    try {
      T0.room_height = init_height(lines, *dists, kCameraHeight, o.size);
    } catch (const std::invalid_argument& e) {
      throw EstimationError(std::string("initialization failed: ") + e.what());
    }
    if (!layout_valid(T0))
      throw EstimationError("initialization produced an invalid layout");
  }

  LayoutParams T = sgd_optimize(T0, S, o.lr, o.steps);
  write_text_file(o.out, layout_to_json(T));

  if (!o.overlay.empty()) {
    Image rgb;
    rgb.width = pano.width;
    rgb.height = pano.height;
    rgb.channels = 3;
    rgb.data.resize(static_cast<size_t>(pano.width) * pano.height * 3);
    for (int y = 0; y < pano.height; y++)
      for (int x = 0; x < pano.width; x++)
        for (int c = 0; c < 3; c++) rgb.at(x, y, c) = pano.at(x, y);
    draw_overlay(rgb, T);
    write_png(o.overlay, rgb);
  }
  return 0;
}

struct EvalOpts {
  std::string pred, gt, out, batch, csv;
  int width = 1024, height = 512;
};

int cmd_eval(const EvalOpts& o) {
  if (o.batch.empty()) {
    LayoutParams pred = layout_from_json(read_text_file(o.pred));
    LayoutParams gt = layout_from_json(read_text_file(o.gt));
    MetricsReport m = evaluate(pred, gt, o.width, o.height);
    std::string text = metrics_to_json(m);
    if (!o.out.empty())
      write_text_file(o.out, text);
    else
      std::cout << text << "\n";
    return 0;
  }
  // batch: one "pred_path,gt_path" pair per line, averaged per corner count
  std::istringstream list(read_text_file(o.batch));
  std::map<int, std::pair<int, MetricsReport>> buckets;
  int total = 0;
  MetricsReport sum;
  std::string line;
  while (std::getline(list, line)) {
    if (line.empty()) continue;
    size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("batch line is not 'pred,gt': " + line);
    LayoutParams pred = layout_from_json(read_text_file(line.substr(0, comma)));
    LayoutParams gt = layout_from_json(read_text_file(line.substr(comma + 1)));
    MetricsReport m = evaluate(pred, gt, o.width, o.height);
    auto& b = buckets[gt.n_walls()];
    b.first++;
    b.second.iou3d += m.iou3d;
    b.second.iou2d += m.iou2d;
    b.second.corner_error += m.corner_error;
    b.second.pixel_error += m.pixel_error;
    b.second.delta_1 += m.delta_1;
    total++;
    sum.iou3d += m.iou3d;
    sum.iou2d += m.iou2d;
    sum.corner_error += m.corner_error;
    sum.pixel_error += m.pixel_error;
    sum.delta_1 += m.delta_1;
  }
  if (total == 0) throw std::runtime_error("batch list is empty");
  std::ostringstream csv;
  csv << "corners,count,iou3d,iou2d,corner_error,pixel_error,delta_1\n";
  auto row = [&](const std::string& key, int count, const MetricsReport& s) {
    csv << key << "," << count << "," << s.iou3d / count << ","
        << s.iou2d / count << "," << s.corner_error / count << ","
        << s.pixel_error / count << "," << s.delta_1 / count << "\n";
  };
  for (const auto& [corners, b] : buckets)
    row(std::to_string(corners), b.first, b.second);
  row("all", total, sum);
  if (!o.csv.empty())
    write_text_file(o.csv, csv.str());
  else
    std::cout << csv.str();
  return 0;
}

struct SynthOpts {
  std::string out, gt_out, targets, style = "wireframe";
  uint64_t seed = 0;
  int walls = 4, width = 1024, height = 512, tile_size = 512, bin_scale = 1;
  double line_width = 2.0, decay = kDefaultDecay;
};

int cmd_synth(const SynthOpts& o) {
  RoomSpec spec = random_room(o.seed, o.walls);
  if (o.style == "shaded")
    spec.style = RenderStyle::Shaded;
  else if (o.style == "noise")
    spec.style = RenderStyle::TexturedNoise;
  spec.line_width = o.line_width;
  RenderResult r = render_equirect(spec, o.width, o.height);
  if (!o.out.empty()) write_png(o.out, r.pano);
  if (!o.gt_out.empty()) write_text_file(o.gt_out, layout_to_json(spec.params));
  if (!o.targets.empty())
    write_text_file(o.targets, targets_to_json(oracle_targets(
                                   spec.params, o.tile_size, o.bin_scale,
                                   o.decay)));
  return 0;
}

struct PlotOpts {
  std::string vectors, pano, layout, out;
  int row_height = 8;
};

int cmd_plot(const PlotOpts& o) {
  if (!o.vectors.empty()) {
    LineTargets t = targets_from_json(read_text_file(o.vectors));
    size_t width = 0;
    for (const auto& hv : t)
      width = std::max({width, hv.H.size(), hv.V.size(), hv.C.size()});
    Image strip;
    strip.width = static_cast<int>(width);
    strip.height = kFaceCount * 3 * o.row_height;
    strip.channels = 1;
    strip.data.assign(static_cast<size_t>(strip.width) * strip.height, 0.0);
    for (int f = 0; f < kFaceCount; f++) {
      const std::vector<double>* vecs[3] = {&t[f].H, &t[f].V, &t[f].C};
      for (int k = 0; k < 3; k++) {
        int y0 = (f * 3 + k) * o.row_height;
        for (size_t x = 0; x < vecs[k]->size(); x++)
          for (int dy = 0; dy < o.row_height; dy++)
            strip.at(static_cast<int>(x), y0 + dy) = (*vecs[k])[x];
      }
    }
    write_png(o.out, strip);
    return 0;
  }
  if (!o.pano.empty() && !o.layout.empty()) {
    EquirectImage pano = to_gray(read_png(o.pano));
    LayoutParams T = layout_from_json(read_text_file(o.layout));
    if (!layout_valid(T)) throw std::runtime_error("layout is not valid");
    Image rgb;
    rgb.width = pano.width;
    rgb.height = pano.height;
    rgb.channels = 3;
    rgb.data.resize(static_cast<size_t>(pano.width) * pano.height * 3);
    for (int y = 0; y < pano.height; y++)
      for (int x = 0; x < pano.width; x++)
        for (int c = 0; c < 3; c++) rgb.at(x, y, c) = pano.at(x, y);
    draw_overlay(rgb, T);
    write_png(o.out, rgb);
    return 0;
  }
  std::cerr << "plot: pass either --vectors, or --pano with --layout\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Manhattan room-layout estimation from panoramas"};
  app.require_subcommand(1);

  CubemapOpts co;
  CLI::App* cubemap = app.add_subcommand(
      "cubemap", "Project an equirectangular panorama to six face tiles");
  cubemap->add_option("--in", co.in, "input panorama PNG (2:1)")->required();
  cubemap->add_option("--outdir", co.outdir, "output directory")->required();
  cubemap->add_option("--size", co.size, "tile side, px");

  EstimateOpts eo;
  CLI::App* estimate =
      app.add_subcommand("estimate", "Estimate the room layout of a panorama");
  estimate->add_option("--in", eo.in, "input panorama PNG (2:1)")->required();
  estimate->add_option("--out", eo.out, "output layout JSON")->required();
  estimate->add_option("--overlay", eo.overlay, "optional overlay PNG");
  estimate->add_option("--detector", eo.detector, "hts | htp | oracle")
      ->check(CLI::IsMember({"hts", "htp", "oracle"}));
  estimate->add_option("--gt", eo.gt,
                       "ground-truth layout JSON (oracle / gt-perturbed)");
  estimate->add_option("--init", eo.init, "detect | gt-perturbed")
      ->check(CLI::IsMember({"detect", "gt-perturbed"}));
  estimate->add_option("--perturb", eo.perturb,
                       "relative perturbation for gt-perturbed init");
  estimate->add_option("--size", eo.size, "tile side, px");
  estimate->add_option("--bin-scale", eo.bin_scale, "bin aggregation factor")
      ->check(CLI::IsMember({1, 2, 4}));
  estimate->add_option("--lr", eo.lr, "optimizer step length");
  estimate->add_option("--steps", eo.steps, "optimizer steps");
  estimate->add_option("--decay", eo.decay, "confidence smoothing decay");
  estimate->add_option("--seed", eo.seed, "rng seed (htp, perturbation)");
  estimate->add_option("--ht-threshold", eo.ht_threshold,
                       "accumulator vote threshold (-1 = per-detector default)");
  estimate->add_option("--canny-low", eo.canny_low, "hysteresis low fraction");
  estimate->add_option("--canny-high", eo.canny_high,
                       "hysteresis high fraction");
  estimate->add_option("--dump-lines", eo.dump_lines,
                       "write detected per-face lines JSON");
  estimate->add_option("--dump-targets", eo.dump_targets,
                       "write per-face confidence vectors JSON");

  EvalOpts vo;
  CLI::App* eval =
      app.add_subcommand("eval", "Compare a predicted layout against GT");
  eval->add_option("--pred", vo.pred, "predicted layout JSON");
  eval->add_option("--gt", vo.gt, "ground-truth layout JSON");
  eval->add_option("--out", vo.out, "metrics JSON path (default: stdout)");
  eval->add_option("--batch", vo.batch, "list file of 'pred,gt' lines");
  eval->add_option("--csv", vo.csv, "batch CSV path (default: stdout)");
  eval->add_option("--width", vo.width, "panorama width for raster metrics");
  eval->add_option("--height", vo.height, "panorama height for raster metrics");

  SynthOpts so;
  CLI::App* synth =
      app.add_subcommand("synth", "Render a random synthetic Manhattan room");
  synth->add_option("--seed", so.seed, "room seed");
  synth->add_option("--walls", so.walls, "wall count: 4, 6, 8 or 10")
      ->check(CLI::IsMember({4, 6, 8, 10}));
  synth->add_option("--style", so.style, "wireframe | shaded | noise")
      ->check(CLI::IsMember({"wireframe", "shaded", "noise"}));
  synth->add_option("--width", so.width, "panorama width");
  synth->add_option("--height", so.height, "panorama height");
  synth->add_option("--line-width", so.line_width, "wireframe stroke width");
  synth->add_option("--out", so.out, "panorama PNG path");
  synth->add_option("--gt-out", so.gt_out, "ground-truth layout JSON path");
  synth->add_option("--targets", so.targets, "oracle confidence vectors JSON");
  synth->add_option("--tile-size", so.tile_size, "tile side for --targets");
  synth->add_option("--bin-scale", so.bin_scale, "bin factor for --targets")
      ->check(CLI::IsMember({1, 2, 4}));
  synth->add_option("--decay", so.decay, "smoothing decay for --targets");

  PlotOpts po;
  CLI::App* plot = app.add_subcommand(
      "plot", "Render confidence-vector strips or layout overlays");
  plot->add_option("--vectors", po.vectors, "confidence vectors JSON");
  plot->add_option("--pano", po.pano, "panorama PNG to draw over");
  plot->add_option("--layout", po.layout, "layout JSON to draw");
  plot->add_option("--out", po.out, "output PNG")->required();
  plot->add_option("--row-height", po.row_height, "strip row height, px");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  // cross-flag requirements
  if (estimate->parsed()) {
    if ((eo.detector == "oracle" || eo.init == "gt-perturbed") && eo.gt.empty()) {
      std::cerr << "estimate: --gt is required for the oracle detector and "
                   "gt-perturbed init\n";
      return 2;
    }
  }
  if (eval->parsed() && vo.batch.empty() && (vo.pred.empty() || vo.gt.empty())) {
    std::cerr << "eval: pass --pred and --gt, or --batch\n";
    return 2;
  }

  try {
    if (cubemap->parsed()) return cmd_cubemap(co);
    if (estimate->parsed()) return cmd_estimate(eo);
    if (eval->parsed()) return cmd_eval(vo);
    if (synth->parsed()) return cmd_synth(so);
    if (plot->parsed()) return cmd_plot(po);
  } catch (const EstimationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
