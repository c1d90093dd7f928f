#include "panolayout/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace panolayout {

using nlohmann::json;

namespace {

json vectors_json(const HoughVectors& v) {
  return json{{"H", v.H}, {"V", v.V}, {"C", v.C}, {"bin_scale", v.bin_scale}};
}

HoughVectors vectors_from(const json& j) {
  HoughVectors v;
  v.H = j.at("H").get<std::vector<double>>();
  v.V = j.at("V").get<std::vector<double>>();
  v.C = j.at("C").get<std::vector<double>>();
  v.bin_scale = j.at("bin_scale").get<int>();
  return v;
}

const char* kind_name(LineKind k) {
  switch (k) {
    case LineKind::Horizontal: return "horizontal";
    case LineKind::Vertical: return "vertical";
    default: return "center";
  }
}

}  // namespace

std::string hough_vectors_to_json(const HoughVectors& v) {
  return vectors_json(v).dump();
}

HoughVectors hough_vectors_from_json(const std::string& text) {
  return vectors_from(json::parse(text));
}

std::string targets_to_json(const LineTargets& t) {
  json faces = json::object();
  for (int f = 0; f < kFaceCount; f++)
    faces[face_name(kAllFaces[f])] = vectors_json(t[f]);
  return json{{"faces", faces}}.dump();
}

LineTargets targets_from_json(const std::string& text) {
  json j = json::parse(text);
  LineTargets t;
  for (int f = 0; f < kFaceCount; f++)
    t[f] = vectors_from(j.at("faces").at(face_name(kAllFaces[f])));
  return t;
}

std::string layout_to_json(const LayoutParams& T) {
  json walls = json::array();
  for (int i = 0; i < T.n_walls(); i++)
    walls.push_back(json{{"axis", i % 2 == 0 ? "x" : "y"},
                         {"dist", T.wall_distances[i]}});
  json corners = json::array();
  if (layout_valid(T)) {
    RoomLayout L = layout_to_corners(T);
    for (const auto& c : L.corners) corners.push_back(json::array({c[0], c[1]}));
  }
  return json{{"camera_height", T.camera_height},
              {"room_height", T.room_height},
              {"walls", walls},
              {"corners", corners}}
      .dump();
}

LayoutParams layout_from_json(const std::string& text) {
  json j = json::parse(text);
  LayoutParams T;
  T.camera_height = j.at("camera_height").get<double>();
  T.room_height = j.at("room_height").get<double>();
  for (size_t i = 0; i < j.at("walls").size(); i++) {
    const json& w = j.at("walls")[i];
    std::string axis = w.at("axis").get<std::string>();
    if (axis != (i % 2 == 0 ? "x" : "y"))
      throw std::invalid_argument(
          "layout_from_json: walls must alternate x,y starting from x");
    T.wall_distances.push_back(w.at("dist").get<double>());
  }
  return T;
}

std::string tile_lines_to_json(
    const std::array<std::vector<ManhattanLine>, kFaceCount>& lines) {
  json arr = json::array();
  for (int f = 0; f < kFaceCount; f++) {
    json jl = json::array();
    for (const auto& ln : lines[f]) {
      json e{{"kind", kind_name(ln.kind)}, {"conf", ln.conf}};
      if (ln.kind == LineKind::Center)
        e["border_pos"] = ln.pos;
      else
        e["rho"] = ln.pos;
      jl.push_back(e);
    }
    arr.push_back(json{{"face", face_name(kAllFaces[f])}, {"lines", jl}});
  }
  return arr.dump();
}

std::string metrics_to_json(const MetricsReport& m) {
  return json{{"iou3d", m.iou3d},
              {"iou2d", m.iou2d},
              {"corner_error", m.corner_error},
              {"pixel_error", m.pixel_error},
              {"delta_1", m.delta_1}}
      .dump();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace panolayout
