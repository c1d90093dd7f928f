#include "panolayout/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace panolayout {

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) {
      double s = 0;
      for (int k = 0; k < 3; k++) s += m[i * 3 + k] * o.m[k * 3 + j];
      r.m[i * 3 + j] = s;
    }
  return r;
}

Mat3 Mat3::transposed() const {
  Mat3 r;
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) r.m[i * 3 + j] = m[j * 3 + i];
  return r;
}

Mat3 Mat3::identity() {
  Mat3 r;
  r.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  return r;
}

Mat3 rotation_z(double u) {
  double c = std::cos(u), s = std::sin(u);
  Mat3 r;
  r.m = {c, -s, 0, s, c, 0, 0, 0, 1};
  return r;
}

Mat3 rotation_x(double v) {
  double c = std::cos(v), s = std::sin(v);
  Mat3 r;
  r.m = {1, 0, 0, 0, c, -s, 0, s, c};
  return r;
}

const char* face_name(Face f) {
  switch (f) {
    case Face::Front: return "front";
    case Face::Right: return "right";
    case Face::Back: return "back";
    case Face::Left: return "left";
    case Face::Up: return "up";
    case Face::Down: return "down";
  }
  return "?";
}

std::optional<Face> face_from_name(const std::string& name) {
  for (Face f : kAllFaces)
    if (name == face_name(f)) return f;
  return std::nullopt;
}

std::array<double, 2> face_angles(Face f) {
  const double h = M_PI / 2;
  switch (f) {
    case Face::Front: return {0, 0};
    case Face::Right: return {h, 0};
    case Face::Back: return {M_PI, 0};
    case Face::Left: return {-h, 0};
    case Face::Up: return {0, h};
    case Face::Down: return {0, -h};
  }
  return {0, 0};
}

FaceBasis face_basis(Face f) {
  // integer sin/cos of (azimuth, elevation); all angles multiples of 90deg
  switch (f) {
    case Face::Front: return {0, 1, 0, 1};
    case Face::Right: return {1, 0, 0, 1};
    case Face::Back: return {0, -1, 0, 1};
    case Face::Left: return {-1, 0, 0, 1};
    case Face::Up: return {0, 1, 1, 0};
    case Face::Down: return {0, 1, -1, 0};
  }
  return {0, 1, 0, 1};
}

std::optional<ImagePoint> world_to_tile(const Vec3& p, Face f, int size) {
  FaceBasis b = face_basis(f);
  double rx, ry, rz;
  face_observe(b, p.x, p.y, p.z, rx, ry, rz);
  if (ry <= 0) return std::nullopt;
  double half = size / 2.0;
  return ImagePoint{half * rx / ry, half * (-rz) / ry};
}

Vec3 tile_to_world_ray(const ImagePoint& q, Face f, int size) {
  FaceBasis b = face_basis(f);
  double half = size / 2.0;
  double rx = q.qx / half, ry = 1.0, rz = -q.qy / half;
  // transpose of the observation transform
  Vec3 p{rx * b.cu + ry * double(-b.cv * b.su) + rz * double(b.sv * b.su),
         rx * b.su + ry * double(b.cv * b.cu) + rz * double(-b.sv * b.cu),
         ry * b.sv + rz * double(b.cv)};
  return p.normalized();
}

void direction_to_equirect_uv(const Vec3& d, int width, int height, double& u,
                              double& v) {
  double lon = std::atan2(d.x, d.y);
  double lat = std::asin(d.z / d.norm());
  u = (lon + M_PI) / (2 * M_PI) * width - 0.5;
  v = (M_PI / 2 - lat) / M_PI * height - 0.5;
}

Vec3 equirect_uv_to_direction(double u, double v, int width, int height) {
  double lon = (u + 0.5) * 2 * M_PI / width - M_PI;
  double lat = M_PI / 2 - (v + 0.5) * M_PI / height;
  double cl = std::cos(lat);
  return {cl * std::sin(lon), cl * std::cos(lon), std::sin(lat)};
}

CubemapTile e2p(const EquirectImage& img, Face f, int size) {
  if (img.width != 2 * img.height || img.empty())
    throw std::invalid_argument("e2p: panorama must be a 2:1 raster");
  CubemapTile tile(size, size, img.channels);
  double center = size / 2.0 - 0.5;
  for (int iy = 0; iy < size; iy++)
    for (int ix = 0; ix < size; ix++) {
      ImagePoint q{ix - center, iy - center};
      Vec3 d = tile_to_world_ray(q, f, size);
      double u, v;
      direction_to_equirect_uv(d, img.width, img.height, u, v);
      for (int c = 0; c < img.channels; c++)
        tile.at(ix, iy, c) = sample_wrap_clamp(img, u, v, c);
    }
  return tile;
}

Cubemap make_cubemap(const EquirectImage& img, int size) {
  Cubemap cm;
  cm.size = size;
  for (int i = 0; i < kFaceCount; i++) cm.faces[i] = e2p(img, kAllFaces[i], size);
  return cm;
}

EquirectImage cubemap_to_equirect(const Cubemap& cm, int width, int height) {
  int channels = cm.faces[0].channels;
  EquirectImage out(width, height, channels);
  int size = cm.size;
  double center = size / 2.0 - 0.5;
  for (int iy = 0; iy < height; iy++)
    for (int ix = 0; ix < width; ix++) {
      Vec3 d = equirect_uv_to_direction(ix, iy, width, height);
      // most head-on face: smallest max(|qx|,|qy|) among front-facing views
      int best = -1;
      double best_ext = 1e300;
      ImagePoint best_q{};
      for (int fi = 0; fi < kFaceCount; fi++) {
        auto q = world_to_tile(d, kAllFaces[fi], size);
        if (!q) continue;
        double ext = std::max(std::fabs(q->qx), std::fabs(q->qy));
        if (ext < best_ext) {
          best_ext = ext;
          best = fi;
          best_q = *q;
        }
      }
      for (int c = 0; c < channels; c++)
        out.at(ix, iy, c) = sample_clamp(cm.faces[best], best_q.qx + center,
                                         best_q.qy + center, c);
    }
  return out;
}

}  // namespace panolayout
