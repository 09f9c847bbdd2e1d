#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "radcam/rng.hpp"

namespace radcam {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kDegPerRad = 180.0 / kPi;
inline constexpr double kRadPerDeg = kPi / 180.0;

class GimbalLockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class EmptyInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

// Row-major 3x3.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  double operator()(int r, int c) const { return m[r * 3 + c]; }
  double& operator()(int r, int c) { return m[r * 3 + c]; }

  Mat3 operator*(const Mat3& o) const {
    Mat3 out;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += (*this)(r, k) * o(k, c);
        out(r, c) = s;
      }
    return out;
  }
  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  Mat3 transposed() const {
    Mat3 t;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) t(r, c) = (*this)(c, r);
    return t;
  }
};

// Row-major 4x4 homogeneous transform.
struct Mat4 {
  std::array<double, 16> m{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};

  double operator()(int r, int c) const { return m[r * 4 + c]; }
  double& operator()(int r, int c) { return m[r * 4 + c]; }

  Mat4 operator*(const Mat4& o) const {
    Mat4 out;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        double s = 0;
        for (int k = 0; k < 4; ++k) s += (*this)(r, k) * o(k, c);
        out(r, c) = s;
      }
    return out;
  }
};

// Unit quaternion, Hamilton convention, storage order (w, x, y, z).
// Canonical form resolves the double cover with w >= 0.
struct Quat {
  double w = 1, x = 0, y = 0, z = 0;

  static Quat normalized(double w, double x, double y, double z) {
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (n < 1e-300) throw std::invalid_argument("quaternion norm too small");
    return {w / n, x / n, y / n, z / n};
  }
  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  double dot(const Quat& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
  Quat negated() const { return {-w, -x, -y, -z}; }
};

struct EulerTPR {
  double tilt_deg = 0;  // about camera x (pitch down positive)
  double pan_deg = 0;   // about camera y
  double roll_deg = 0;  // about camera z (optical axis)
};

struct CameraIntrinsics {
  double fx = 0, fy = 0, cx = 0, cy = 0;
  int width = 0, height = 0;

  void validate() const {
    if (!(fx > 0) || !(fy > 0)) throw std::invalid_argument("intrinsics: focal lengths must be positive");
    if (!(cx > 0 && cx < width)) throw std::invalid_argument("intrinsics: cx outside image");
    if (!(cy > 0 && cy < height)) throw std::invalid_argument("intrinsics: cy outside image");
  }
};

// Rigid transform mapping radar-frame points into the camera frame.
struct Extrinsic {
  Mat3 R;
  Vec3 t;

  Mat4 to_homogeneous() const {
    Mat4 h;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) h(r, c) = R(r, c);
    }
    h(0, 3) = t.x;
    h(1, 3) = t.y;
    h(2, 3) = t.z;
    return h;
  }
  static Extrinsic from_homogeneous(const Mat4& h) {
    Extrinsic e;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) e.R(r, c) = h(r, c);
    e.t = {h(0, 3), h(1, 3), h(2, 3)};
    return e;
  }
  Extrinsic inverse() const {
    Extrinsic e;
    e.R = R.transposed();
    e.t = (e.R * t) * -1.0;
    return e;
  }
  Extrinsic compose(const Extrinsic& rhs) const {  // this * rhs
    return {R * rhs.R, R * rhs.t + t};
  }
  // Max deviation of R'R from identity plus the det(R)-1 defect.
  double orthonormality_defect() const;
};

struct Decalibration {
  Quat rotation;
  Vec3 translation;

  Decalibration invert() const;
  Extrinsic to_extrinsic() const;
};

struct ProjectedDetection {
  double u = 0, v = 0;
  double z_c = 0;  // depth of the projected pixel, meters
  bool in_image = false;
};

struct DecalRanges {
  double tilt_max_deg = 10.0;
  double pan_max_deg = 10.0;
  double roll_max_deg = 5.0;
  double translation_sigma_m = 0.10;
};

// Quaternion algebra -------------------------------------------------------

Quat quat_mul(const Quat& a, const Quat& b);
Quat quat_invert(const Quat& q);
Quat quat_canonicalize(const Quat& q);
Mat3 quat_to_mat3(const Quat& q);
Quat mat3_to_quat(const Mat3& r);

// Convention: R = Rz(roll) * Ry(pan) * Rx(tilt), camera axes x-right,
// y-down, z-forward. Angles in degrees.
Quat quat_from_euler(const EulerTPR& e);
EulerTPR quat_to_euler(const Quat& q);  // throws GimbalLockError near |tilt| = 90

double geodesic_angle_deg(const Quat& a, const Quat& b);
Quat quat_mean(std::span<const Quat> qs);  // throws EmptyInputError

// Extrinsic algebra --------------------------------------------------------

Extrinsic apply_decalibration(const Extrinsic& h_gt, const Decalibration& d);
Extrinsic recover_calibration(const Extrinsic& h_init, std::span<const Quat> corrections);
Quat residual_label(const Quat& phi_dec_inv, const Quat& phi_hat_dec_inv);

ProjectedDetection project(const CameraIntrinsics& k, const Extrinsic& h, const Vec3& x);

Decalibration sample_decalibration(const DecalRanges& ranges, Rng& rng);

// Text serialization -------------------------------------------------------
// One line per key: "H = <16 row-major values>", "K = fx fy cx cy width height".
std::string format_extrinsic_text(const Extrinsic& e);
std::string format_intrinsics_text(const CameraIntrinsics& k);
Extrinsic parse_extrinsic_text(const std::string& line);
CameraIntrinsics parse_intrinsics_text(const std::string& line);

}  // namespace radcam
