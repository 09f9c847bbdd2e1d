#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "radcam/kernels.hpp"
#include "radcam/rng.hpp"

using radcam::Rng;
namespace kn = radcam::kernels;

namespace {

std::vector<float> random_vec(Rng& rng, size_t n, float scale = 1.0f) {
  std::vector<float> v(n);
  for (float& x : v) x = static_cast<float>(rng.normal(0, scale));
  return v;
}

// relative tolerance scaled by the reduction length
void check_close(const std::vector<float>& got, const std::vector<float>& want, int k) {
  REQUIRE(got.size() == want.size());
  const float tol = 1e-5f * std::sqrt(static_cast<float>(std::max(1, k)));
  for (size_t i = 0; i < got.size(); ++i) {
    const float denom = std::max({1.0f, std::abs(got[i]), std::abs(want[i])});
    CHECK(std::abs(got[i] - want[i]) / denom < tol);
  }
}

struct GemmCase {
  int m, n, k;
};

const GemmCase kCases[] = {{1, 1, 1},   {4, 16, 8},  {5, 17, 9},   {8, 570, 800},
                           {16, 50, 9120}, {3, 33, 100}, {32, 100, 7}, {50, 240, 27}};

}  // namespace

TEST_CASE("dispatched gemm_nn matches scalar reference and a naive oracle") {
  Rng rng(101);
  for (const auto& c : kCases) {
    const auto a = random_vec(rng, static_cast<size_t>(c.m) * c.k);
    const auto b = random_vec(rng, static_cast<size_t>(c.k) * c.n);
    std::vector<float> got(static_cast<size_t>(c.m) * c.n, 0.5f);
    std::vector<float> ref(got), naive(got);

    kn::gemm_nn(c.m, c.n, c.k, a.data(), c.k, b.data(), c.n, got.data(), c.n, true);
    kn::scalar::gemm_nn(c.m, c.n, c.k, a.data(), c.k, b.data(), c.n, ref.data(), c.n, true);
    for (int i = 0; i < c.m; ++i)
      for (int j = 0; j < c.n; ++j) {
        double s = naive[static_cast<size_t>(i) * c.n + j];
        for (int p = 0; p < c.k; ++p)
          s += static_cast<double>(a[static_cast<size_t>(i) * c.k + p]) *
               b[static_cast<size_t>(p) * c.n + j];
        naive[static_cast<size_t>(i) * c.n + j] = static_cast<float>(s);
      }
    check_close(got, ref, c.k);
    check_close(got, naive, c.k);
  }
}

TEST_CASE("dispatched gemm_nt matches scalar reference") {
  Rng rng(103);
  for (const auto& c : kCases) {
    const auto a = random_vec(rng, static_cast<size_t>(c.m) * c.k);
    const auto b = random_vec(rng, static_cast<size_t>(c.n) * c.k);
    std::vector<float> got(static_cast<size_t>(c.m) * c.n);
    std::vector<float> ref(got);
    kn::gemm_nt(c.m, c.n, c.k, a.data(), c.k, b.data(), c.k, got.data(), c.n, false);
    kn::scalar::gemm_nt(c.m, c.n, c.k, a.data(), c.k, b.data(), c.k, ref.data(), c.n, false);
    check_close(got, ref, c.k);
  }
}

TEST_CASE("dispatched gemm_tn matches scalar reference") {
  Rng rng(107);
  for (const auto& c : kCases) {
    const auto a = random_vec(rng, static_cast<size_t>(c.k) * c.m);
    const auto b = random_vec(rng, static_cast<size_t>(c.k) * c.n);
    std::vector<float> got(static_cast<size_t>(c.m) * c.n, -1.25f);
    std::vector<float> ref(got);
    kn::gemm_tn(c.m, c.n, c.k, a.data(), c.m, b.data(), c.n, got.data(), c.n, true);
    kn::scalar::gemm_tn(c.m, c.n, c.k, a.data(), c.m, b.data(), c.n, ref.data(), c.n, true);
    check_close(got, ref, c.k);
  }
}

TEST_CASE("gemm leading dims address sub-blocks") {
  Rng rng(109);
  const int ld = 23;
  const auto a = random_vec(rng, 4 * ld);
  const auto b = random_vec(rng, 7 * ld);
  std::vector<float> got(4 * ld, 0.0f), ref(4 * ld, 0.0f);
  kn::gemm_nn(4, 11, 7, a.data(), ld, b.data(), ld, got.data(), ld, false);
  kn::scalar::gemm_nn(4, 11, 7, a.data(), ld, b.data(), ld, ref.data(), ld, false);
  check_close(got, ref, 7);
  // untouched tail of each row stays zero
  for (int i = 0; i < 4; ++i)
    for (int j = 11; j < ld; ++j) CHECK(got[static_cast<size_t>(i) * ld + j] == 0.0f);
}

TEST_CASE("dot and axpy agree with the reference") {
  Rng rng(113);
  for (int n : {1, 7, 8, 31, 32, 1000, 9001}) {
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);
    const float got = kn::dot(a.data(), b.data(), n);
    const float ref = kn::scalar::dot(a.data(), b.data(), n);
    CHECK(std::abs(got - ref) <= 1e-5f * std::sqrt(static_cast<float>(n)) *
                                     std::max(1.0f, std::abs(ref)));

    auto y1 = random_vec(rng, n);
    auto y2 = y1;
    kn::axpy(n, 0.37f, a.data(), y1.data());
    kn::scalar::axpy(n, 0.37f, a.data(), y2.data());
    check_close(y1, y2, 1);
  }
}

TEST_CASE("adam_update variants agree") {
  Rng rng(127);
  for (int n : {1, 8, 13, 1024}) {
    auto p1 = random_vec(rng, n);
    auto p2 = p1;
    const auto g = random_vec(rng, n);
    auto m1 = random_vec(rng, n, 0.1f);
    auto m2 = m1;
    auto v1 = random_vec(rng, n, 0.01f);
    for (float& x : v1) x = std::abs(x);
    auto v2 = v1;
    const float inv_bc1 = 1.0f / (1.0f - 0.9f);
    const float inv_bc2 = 1.0f / (1.0f - 0.999f);
    kn::adam_update(n, p1.data(), g.data(), m1.data(), v1.data(), 0.002f, 0.9f, 0.999f, 1e-8f,
                    inv_bc1, inv_bc2);
    kn::scalar::adam_update(n, p2.data(), g.data(), m2.data(), v2.data(), 0.002f, 0.9f, 0.999f,
                            1e-8f, inv_bc1, inv_bc2);
    check_close(p1, p2, 1);
    check_close(m1, m2, 1);
    check_close(v1, v2, 1);
  }
}

TEST_CASE("prelu forward/backward variants agree") {
  Rng rng(131);
  for (int n : {1, 9, 64, 777}) {
    const auto x = random_vec(rng, n);
    const auto gy = random_vec(rng, n);
    std::vector<float> y1(n), y2(n);
    kn::prelu_forward(n, x.data(), 0.25f, y1.data());
    kn::scalar::prelu_forward(n, x.data(), 0.25f, y2.data());
    check_close(y1, y2, 1);
    CHECK(y1[0] == (x[0] > 0 ? x[0] : 0.25f * x[0]));

    std::vector<float> gx1(n, 0.125f), gx2(n, 0.125f);
    const float gs1 = kn::prelu_backward(n, x.data(), gy.data(), 0.25f, gx1.data());
    const float gs2 = kn::scalar::prelu_backward(n, x.data(), gy.data(), 0.25f, gx2.data());
    check_close(gx1, gx2, 1);
    CHECK(std::abs(gs1 - gs2) < 1e-4f * std::max(1.0f, std::abs(gs2)));
  }
}

TEST_CASE("isa dispatch is stable") {
  const kn::Isa isa = kn::active_isa();
  CHECK(isa == kn::active_isa());
  CHECK((std::string(kn::isa_name(isa)) == "avx2" || std::string(kn::isa_name(isa)) == "scalar"));
}
