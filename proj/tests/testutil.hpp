#pragma once

#include "radcam/geometry.hpp"
#include "radcam/rng.hpp"

namespace testutil {

inline radcam::Quat random_unit_quat(radcam::Rng& rng) {
  return radcam::Quat::normalized(rng.normal(0, 1), rng.normal(0, 1), rng.normal(0, 1),
                                  rng.normal(0, 1));
}

inline radcam::Extrinsic random_extrinsic(radcam::Rng& rng) {
  radcam::Extrinsic e;
  e.R = radcam::quat_to_mat3(random_unit_quat(rng));
  e.t = {rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
  return e;
}

inline double max_abs_diff16(const radcam::Mat4& a, const radcam::Mat4& b) {
  double worst = 0;
  for (int i = 0; i < 16; ++i) worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
  return worst;
}

}  // namespace testutil
