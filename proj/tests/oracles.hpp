#pragma once

// Test-side reference computations. Everything here is written against raw
// arrays with plain loops so it shares no code path with the library.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

using M3 = std::array<double, 9>;
using M4 = std::array<double, 16>;

inline M3 matmul3(const M3& a, const M3& b) {
  M3 c{};
  for (int r = 0; r < 3; ++r)
    for (int col = 0; col < 3; ++col)
      for (int k = 0; k < 3; ++k) c[r * 3 + col] += a[r * 3 + k] * b[k * 3 + col];
  return c;
}

inline M4 matmul4(const M4& a, const M4& b) {
  M4 c{};
  for (int r = 0; r < 4; ++r)
    for (int col = 0; col < 4; ++col)
      for (int k = 0; k < 4; ++k) c[r * 4 + col] += a[r * 4 + k] * b[k * 4 + col];
  return c;
}

inline M3 rot_x(double deg) {
  const double a = deg * M_PI / 180.0, c = std::cos(a), s = std::sin(a);
  return {1, 0, 0, 0, c, -s, 0, s, c};
}
inline M3 rot_y(double deg) {
  const double a = deg * M_PI / 180.0, c = std::cos(a), s = std::sin(a);
  return {c, 0, s, 0, 1, 0, -s, 0, c};
}
inline M3 rot_z(double deg) {
  const double a = deg * M_PI / 180.0, c = std::cos(a), s = std::sin(a);
  return {c, -s, 0, s, c, 0, 0, 0, 1};
}

// Rotation angle in degrees via the trace (equals the matrix-log magnitude).
inline double rotation_angle_deg(const M3& r) {
  const double tr = r[0] + r[4] + r[8];
  const double c = std::min(1.0, std::max(-1.0, (tr - 1.0) / 2.0));
  return std::acos(c) * 180.0 / M_PI;
}

// Axis-angle vector (radians) of a rotation matrix; valid away from pi.
inline std::array<double, 3> matrix_log(const M3& r) {
  const double tr = r[0] + r[4] + r[8];
  const double c = std::min(1.0, std::max(-1.0, (tr - 1.0) / 2.0));
  const double angle = std::acos(c);
  if (angle < 1e-12) return {0, 0, 0};
  const double f = angle / (2.0 * std::sin(angle));
  return {f * (r[7] - r[5]), f * (r[2] - r[6]), f * (r[3] - r[1])};
}

inline M3 matrix_exp(const std::array<double, 3>& w) {
  const double theta = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
  M3 eye{1, 0, 0, 0, 1, 0, 0, 0, 1};
  if (theta < 1e-12) return eye;
  const double kx = w[0] / theta, ky = w[1] / theta, kz = w[2] / theta;
  const M3 k{0, -kz, ky, kz, 0, -kx, -ky, kx, 0};
  const M3 k2 = matmul3(k, k);
  const double s = std::sin(theta), c = 1.0 - std::cos(theta);
  M3 out;
  for (int i = 0; i < 9; ++i) out[i] = eye[i] + s * k[i] + c * k2[i];
  return out;
}

// Direct 3x4 = K[3x4] * H[4x4] projection followed by the perspective divide.
struct ProjRef {
  double u, v, zc;
};
inline ProjRef project_ref(double fx, double fy, double cx, double cy, const M4& h, double x,
                           double y, double z) {
  const double kmat[12] = {fx, 0, cx, 0, 0, fy, cy, 0, 0, 0, 1, 0};
  double p[12]{};
  for (int r = 0; r < 3; ++r)
    for (int col = 0; col < 4; ++col)
      for (int k = 0; k < 4; ++k) p[r * 4 + col] += kmat[r * 4 + k] * h[k * 4 + col];
  const double hx[4] = {x, y, z, 1};
  double out[3]{};
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 4; ++k) out[r] += p[r * 4 + k] * hx[k];
  return {out[0] / out[2], out[1] / out[2], out[2]};
}

// Six-loop cross-correlation reference: x[N,C,H,W], w[OC,C,KH,KW].
template <typename T>
std::vector<T> conv2d_ref(const std::vector<T>& x, int n, int c, int h, int w,
                          const std::vector<T>& wt, int oc, int kh, int kw, const std::vector<T>& bias,
                          int stride, int pad, int* oh_out, int* ow_out) {
  const int oh = (h + 2 * pad - kh) / stride + 1;
  const int ow = (w + 2 * pad - kw) / stride + 1;
  *oh_out = oh;
  *ow_out = ow;
  std::vector<T> y(static_cast<size_t>(n) * oc * oh * ow, T(0));
  for (int b = 0; b < n; ++b)
    for (int o = 0; o < oc; ++o)
      for (int i = 0; i < oh; ++i)
        for (int j = 0; j < ow; ++j) {
          T s = bias.empty() ? T(0) : bias[o];
          for (int ch = 0; ch < c; ++ch)
            for (int ki = 0; ki < kh; ++ki)
              for (int kj = 0; kj < kw; ++kj) {
                const int ii = i * stride + ki - pad;
                const int jj = j * stride + kj - pad;
                if (ii < 0 || ii >= h || jj < 0 || jj >= w) continue;
                s += x[((static_cast<size_t>(b) * c + ch) * h + ii) * w + jj] *
                     wt[((static_cast<size_t>(o) * c + ch) * kh + ki) * kw + kj];
              }
          y[((static_cast<size_t>(b) * oc + o) * oh + i) * ow + j] = s;
        }
  return y;
}

}  // namespace oracle
