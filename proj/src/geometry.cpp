#include "radcam/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace radcam {

namespace {

Quat renormalized(double w, double x, double y, double z) {
  return Quat::normalized(w, x, y, z);
}

Quat axis_angle_quat(int axis, double angle_deg) {
  const double h = 0.5 * angle_deg * kRadPerDeg;
  const double c = std::cos(h), s = std::sin(h);
  switch (axis) {
    case 0: return {c, s, 0, 0};
    case 1: return {c, 0, s, 0};
    default: return {c, 0, 0, s};
  }
}

}  // namespace

double Extrinsic::orthonormality_defect() const {
  const Mat3 g = R.transposed() * R;
  double worst = 0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(g(r, c) - (r == c ? 1.0 : 0.0)));
  const double det = R(0, 0) * (R(1, 1) * R(2, 2) - R(1, 2) * R(2, 1)) -
                     R(0, 1) * (R(1, 0) * R(2, 2) - R(1, 2) * R(2, 0)) +
                     R(0, 2) * (R(1, 0) * R(2, 1) - R(1, 1) * R(2, 0));
  return std::max(worst, std::abs(det - 1.0));
}

Decalibration Decalibration::invert() const {
  Decalibration inv;
  inv.rotation = quat_invert(rotation);
  const Mat3 rt = quat_to_mat3(inv.rotation);
  inv.translation = (rt * translation) * -1.0;
  return inv;
}

Extrinsic Decalibration::to_extrinsic() const {
  return {quat_to_mat3(rotation), translation};
}

Quat quat_mul(const Quat& a, const Quat& b) {
  return renormalized(a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                      a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                      a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                      a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w);
}

Quat quat_invert(const Quat& q) { return {q.w, -q.x, -q.y, -q.z}; }

Quat quat_canonicalize(const Quat& q) {
  if (q.w > 0) return q;
  if (q.w < 0) return q.negated();
  if (q.x != 0) return q.x > 0 ? q : q.negated();
  if (q.y != 0) return q.y > 0 ? q : q.negated();
  return q.z >= 0 ? q : q.negated();
}

Mat3 quat_to_mat3(const Quat& q) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  Mat3 r;
  r(0, 0) = 1 - 2 * (y * y + z * z);
  r(0, 1) = 2 * (x * y - w * z);
  r(0, 2) = 2 * (x * z + w * y);
  r(1, 0) = 2 * (x * y + w * z);
  r(1, 1) = 1 - 2 * (x * x + z * z);
  r(1, 2) = 2 * (y * z - w * x);
  r(2, 0) = 2 * (x * z - w * y);
  r(2, 1) = 2 * (y * z + w * x);
  r(2, 2) = 1 - 2 * (x * x + y * y);
  return r;
}

// Shepperd's method: pick the largest of the four pivots for stability.
Quat mat3_to_quat(const Mat3& r) {
  const double tr = r(0, 0) + r(1, 1) + r(2, 2);
  double w, x, y, z;
  if (tr > 0) {
    const double s = std::sqrt(tr + 1.0) * 2;
    w = 0.25 * s;
    x = (r(2, 1) - r(1, 2)) / s;
    y = (r(0, 2) - r(2, 0)) / s;
    z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    const double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2;
    w = (r(2, 1) - r(1, 2)) / s;
    x = 0.25 * s;
    y = (r(0, 1) + r(1, 0)) / s;
    z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    const double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2;
    w = (r(0, 2) - r(2, 0)) / s;
    x = (r(0, 1) + r(1, 0)) / s;
    y = 0.25 * s;
    z = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2;
    w = (r(1, 0) - r(0, 1)) / s;
    x = (r(0, 2) + r(2, 0)) / s;
    y = (r(1, 2) + r(2, 1)) / s;
    z = 0.25 * s;
  }
  return renormalized(w, x, y, z);
}

Quat quat_from_euler(const EulerTPR& e) {
  const Quat qx = axis_angle_quat(0, e.tilt_deg);
  const Quat qy = axis_angle_quat(1, e.pan_deg);
  const Quat qz = axis_angle_quat(2, e.roll_deg);
  return quat_canonicalize(quat_mul(qz, quat_mul(qy, qx)));
}

EulerTPR quat_to_euler(const Quat& q) {
  const Mat3 r = quat_to_mat3(q);
  // R = Rz * Ry * Rx gives R(2,0) = -sin(pan), R(2,1) = cos(pan) sin(tilt),
  // R(2,2) = cos(pan) cos(tilt), R(1,0)/R(0,0) = tan(roll).
  if (std::abs(r(2, 0)) > 1.0 - 1e-9) {
    throw GimbalLockError("quat_to_euler: |pan| too close to 90 degrees");
  }
  EulerTPR e;
  e.pan_deg = std::asin(std::clamp(-r(2, 0), -1.0, 1.0)) * kDegPerRad;
  e.tilt_deg = std::atan2(r(2, 1), r(2, 2)) * kDegPerRad;
  e.roll_deg = std::atan2(r(1, 0), r(0, 0)) * kDegPerRad;
  return e;
}

double geodesic_angle_deg(const Quat& a, const Quat& b) {
  const double d = std::clamp(std::abs(a.dot(b)), 0.0, 1.0);
  return 2.0 * std::acos(d) * kDegPerRad;
}

Quat quat_mean(std::span<const Quat> qs) {
  if (qs.empty()) throw EmptyInputError("quat_mean: empty input");
  const Quat& ref = qs.front();
  double w = 0, x = 0, y = 0, z = 0;
  for (const Quat& q : qs) {
    const double sign = q.dot(ref) < 0 ? -1.0 : 1.0;
    w += sign * q.w;
    x += sign * q.x;
    y += sign * q.y;
    z += sign * q.z;
  }
  return quat_canonicalize(renormalized(w, x, y, z));
}

Extrinsic apply_decalibration(const Extrinsic& h_gt, const Decalibration& d) {
  return d.to_extrinsic().compose(h_gt);
}

Extrinsic recover_calibration(const Extrinsic& h_init, std::span<const Quat> corrections) {
  Extrinsic h = h_init;
  for (const Quat& q : corrections) {
    const Extrinsic rot{quat_to_mat3(q), Vec3{}};
    h = rot.compose(h);
  }
  return h;
}

Quat residual_label(const Quat& phi_dec_inv, const Quat& phi_hat_dec_inv) {
  return quat_canonicalize(quat_mul(phi_dec_inv, quat_invert(phi_hat_dec_inv)));
}

ProjectedDetection project(const CameraIntrinsics& k, const Extrinsic& h, const Vec3& x) {
  const Vec3 cam = h.R * x + h.t;
  ProjectedDetection p;
  p.z_c = cam.z;
  if (cam.z != 0) {
    p.u = k.fx * cam.x / cam.z + k.cx;
    p.v = k.fy * cam.y / cam.z + k.cy;
  } else {
    p.u = p.v = std::numeric_limits<double>::infinity();
  }
  p.in_image = p.z_c > 0 && p.u >= 0 && p.u < k.width && p.v >= 0 && p.v < k.height;
  return p;
}

Decalibration sample_decalibration(const DecalRanges& ranges, Rng& rng) {
  EulerTPR e;
  e.tilt_deg = rng.uniform(-ranges.tilt_max_deg, ranges.tilt_max_deg);
  e.pan_deg = rng.uniform(-ranges.pan_max_deg, ranges.pan_max_deg);
  e.roll_deg = rng.uniform(-ranges.roll_max_deg, ranges.roll_max_deg);
  Decalibration d;
  d.rotation = quat_from_euler(e);
  d.translation = {rng.normal(0, ranges.translation_sigma_m),
                   rng.normal(0, ranges.translation_sigma_m),
                   rng.normal(0, ranges.translation_sigma_m)};
  return d;
}

std::string format_extrinsic_text(const Extrinsic& e) {
  const Mat4 h = e.to_homogeneous();
  std::string out = "H =";
  char buf[32];
  for (double v : h.m) {
    std::snprintf(buf, sizeof(buf), " %.17g", v);
    out += buf;
  }
  out += "\n";
  return out;
}

std::string format_intrinsics_text(const CameraIntrinsics& k) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "K = %.17g %.17g %.17g %.17g %d %d\n", k.fx, k.fy, k.cx, k.cy,
                k.width, k.height);
  return buf;
}

namespace {
std::istringstream open_kv(const std::string& line, char key) {
  std::istringstream in(line);
  std::string k, eq;
  in >> k >> eq;
  if (k.size() != 1 || k[0] != key || eq != "=") {
    throw std::invalid_argument("expected '" + std::string(1, key) + " = ...' line");
  }
  return in;
}
}  // namespace

Extrinsic parse_extrinsic_text(const std::string& line) {
  auto in = open_kv(line, 'H');
  Mat4 h;
  for (double& v : h.m) {
    if (!(in >> v)) throw std::invalid_argument("H line: expected 16 values");
  }
  if (h(3, 0) != 0 || h(3, 1) != 0 || h(3, 2) != 0 || h(3, 3) != 1) {
    throw std::invalid_argument("H line: last row must be 0 0 0 1");
  }
  return Extrinsic::from_homogeneous(h);
}

CameraIntrinsics parse_intrinsics_text(const std::string& line) {
  auto in = open_kv(line, 'K');
  CameraIntrinsics k;
  if (!(in >> k.fx >> k.fy >> k.cx >> k.cy >> k.width >> k.height)) {
    throw std::invalid_argument("K line: expected fx fy cx cy width height");
  }
  k.validate();
  return k;
}

}  // namespace radcam
