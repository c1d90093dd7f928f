#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "panolayout/image.hpp"

namespace panolayout {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  Vec3 normalized() const {
    double n = norm();
    return {x / n, y / n, z / n};
  }
};

struct Mat3 {
  // row-major
  std::array<double, 9> m{};

  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  Mat3 operator*(const Mat3& o) const;
  Mat3 transposed() const;
  static Mat3 identity();
};

// World frame: camera at origin, +y = front optical axis, +z = up, +x right.
// Tile image frame: origin at tile center, x right, y down.
Mat3 rotation_z(double u);
Mat3 rotation_x(double v);

// The six cubemap views. Each carries fixed (azimuth u, elevation v):
// Front(0,0) Right(90,0) Back(180,0) Left(-90,0) Up(0,90) Down(0,-90),
// degrees. Azimuth rotates about z, elevation about x.
enum class Face { Front = 0, Right, Back, Left, Up, Down };
inline constexpr int kFaceCount = 6;
inline constexpr std::array<Face, 6> kAllFaces = {Face::Front, Face::Right,
                                                  Face::Back,  Face::Left,
                                                  Face::Up,    Face::Down};

const char* face_name(Face f);
std::optional<Face> face_from_name(const std::string& name);
// (azimuth, elevation) in radians.
std::array<double, 2> face_angles(Face f);

// Exact integer sines/cosines of the face angles; all face angles are
// multiples of 90deg so the observation transform stays exact.
struct FaceBasis {
  int su, cu, sv, cv;
};
FaceBasis face_basis(Face f);

// World point -> camera frame of a face. r.y is the view depth.
// Templated so the layout optimizer can push derivative-carrying scalars
// through the same arithmetic.
template <typename S>
inline void face_observe(const FaceBasis& b, const S& px, const S& py,
                         const S& pz, S& rx, S& ry, S& rz) {
  rx = px * double(b.cu) + py * double(b.su);
  ry = px * double(-b.cv * b.su) + py * double(b.cv * b.cu) +
       pz * double(b.sv);
  rz = px * double(b.sv * b.su) + py * double(-b.sv * b.cu) +
       pz * double(b.cv);
}

struct ImagePoint {
  double qx = 0, qy = 0;  // centered tile coordinates, pixels
};

// Perspective projection with 90deg FoV: q = (w/2 * rx/ry, h/2 * -rz/ry).
// Absent when the point is behind the camera (ry <= 0).
std::optional<ImagePoint> world_to_tile(const Vec3& p, Face f, int size);

// Inverse of world_to_tile up to scale; returns a unit direction.
Vec3 tile_to_world_ray(const ImagePoint& q, Face f, int size);

// Direction -> continuous panorama pixel position.
// longitude = atan2(x, y) in [-pi, pi), latitude = asin(z / |d|);
// u = (lon + pi) / 2pi * width - 0.5, v = (pi/2 - lat) / pi * height - 0.5
// (pixel-center convention).
void direction_to_equirect_uv(const Vec3& d, int width, int height, double& u,
                              double& v);

// Center direction of panorama pixel (u, v).
Vec3 equirect_uv_to_direction(double u, double v, int width, int height);

// Equirectangular -> perspective tile resampling, bilinear.
CubemapTile e2p(const EquirectImage& img, Face f, int size);

struct Cubemap {
  int size = 0;
  std::array<Image, kFaceCount> faces;
};
Cubemap make_cubemap(const EquirectImage& img, int size);

// Inverse warp: per panorama pixel, sample the most head-on face.
EquirectImage cubemap_to_equirect(const Cubemap& cm, int width, int height);

}  // namespace panolayout
