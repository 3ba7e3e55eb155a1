#include <doctest.h>

#include <texpyr/pyramid.hpp>

#include <cmath>

#include "oracles.hpp"
#include "testutil.hpp"

using namespace texpyr;

namespace {

FloatImage random_float_image(std::mt19937_64& g, int w, int h) {
    FloatImage img(w, h);
    for (double& v : img.data) {
        v = static_cast<double>(g() % 256000) / 1000.0 - 64.0;
    }
    return img;
}

double max_abs_diff(const FloatImage& a, const FloatImage& b) {
    REQUIRE(a.width == b.width);
    REQUIRE(a.height == b.height);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        worst = std::max(worst, std::abs(a.data[i] - b.data[i]));
    }
    return worst;
}

} // namespace

TEST_SUITE("pyramid") {

TEST_CASE("gray8 conversion rounds half away from zero and clamps") {
    FloatImage img(6, 1);
    img.data = {0.5, 1.49, -0.4, 255.7, -3.0, 254.5};
    const GrayImage g = to_gray8(img);
    CHECK(g.data == std::vector<std::uint8_t>{1, 1, 0, 255, 0, 255});
}

TEST_CASE("float conversion preserves sample values") {
    auto rng = testutil::rng(301);
    const GrayImage img = testutil::random_gray(rng, 7, 5);
    const FloatImage f = to_float(img);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        CHECK(f.data[i] == static_cast<double>(img.data[i]));
    }
}

TEST_CASE("binomial kernel is separable and sums to one") {
    const Kernel2D k = Kernel2D::binomial5();
    CHECK(k.sum() == 1.0);
    for (int m = 0; m < 5; ++m) {
        for (int n = 0; n < 5; ++n) {
            CHECK(k.weights[m][n] == kBinomial1D[m] * kBinomial1D[n]);
        }
    }
    CHECK(kBinomial1D[0] + kBinomial1D[1] + kBinomial1D[2] + kBinomial1D[3] +
              kBinomial1D[4] ==
          1.0);
}

TEST_CASE("reflection skips the edge sample") {
    CHECK(reflect_index(0, 5) == 0);
    CHECK(reflect_index(-1, 5) == 1);
    CHECK(reflect_index(-2, 5) == 2);
    CHECK(reflect_index(5, 5) == 3);
    CHECK(reflect_index(6, 5) == 2);
    CHECK(reflect_index(0, 1) == 0);
    CHECK(reflect_index(-2, 1) == 0);
    for (int n = 2; n <= 6; ++n) {
        for (int i = -6; i < 12; ++i) {
            CHECK(reflect_index(i, n) == oracles::naive_reflect(i, n));
        }
    }
}

TEST_CASE("reduce matches the direct 5x5 definition") {
    auto rng = testutil::rng(302);
    for (int trial = 0; trial < 60; ++trial) {
        const int w = testutil::rand_int(rng, 2, 33);
        const int h = testutil::rand_int(rng, 2, 33);
        const FloatImage img = random_float_image(rng, w, h);
        const FloatImage got = gaussian_reduce(img);
        const FloatImage expect = oracles::naive_reduce(img);
        REQUIRE(got.width == (w + 1) / 2);
        REQUIRE(got.height == (h + 1) / 2);
        CHECK(max_abs_diff(got, expect) == 0.0);
    }
}

TEST_CASE("reduce output dimensions follow the ceil law") {
    auto rng = testutil::rng(303);
    const std::pair<int, int> cases[] = {{2, 1}, {3, 2}, {4, 2}, {5, 3}, {9, 5}, {16, 8}};
    for (const auto& [in, out] : cases) {
        const FloatImage img = random_float_image(rng, in, in);
        const FloatImage r = gaussian_reduce(img);
        CHECK(r.width == out);
        CHECK(r.height == out);
    }
}

TEST_CASE("reduce output is clamped to the input range") {
    auto rng = testutil::rng(304);
    for (int trial = 0; trial < 20; ++trial) {
        const FloatImage img = random_float_image(rng, 9, 9);
        double lo = img.data[0], hi = img.data[0];
        for (double v : img.data) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        for (double v : gaussian_reduce(img).data) {
            CHECK(v >= lo);
            CHECK(v <= hi);
        }
    }
}

TEST_CASE("reduce rejects sub-2x2 inputs") {
    CHECK_THROWS_AS(gaussian_reduce(FloatImage(1, 1)), ImageTooSmall);
    CHECK_THROWS_AS(gaussian_reduce(FloatImage(1, 8)), ImageTooSmall);
}

TEST_CASE("constant images are fixed points of reduce and expand") {
    FloatImage img(11, 7, 42.5);
    const FloatImage r = gaussian_reduce(img);
    for (double v : r.data) CHECK(v == 42.5);
    const FloatImage e = expand(r, 11, 7);
    for (double v : e.data) CHECK(v == 42.5);
}

TEST_CASE("expand matches the zero-interleave definition") {
    auto rng = testutil::rng(305);
    for (int trial = 0; trial < 60; ++trial) {
        const int w = testutil::rand_int(rng, 1, 16);
        const int h = testutil::rand_int(rng, 1, 16);
        const int tw = 2 * w - testutil::rand_int(rng, 0, 1);
        const int th = 2 * h - testutil::rand_int(rng, 0, 1);
        const FloatImage img = random_float_image(rng, w, h);
        const FloatImage got = expand(img, tw, th);
        const FloatImage expect = oracles::naive_expand(img, tw, th);
        CHECK(max_abs_diff(got, expect) < 1e-10);
    }
}

TEST_CASE("expand validates target sizes") {
    const FloatImage img(4, 4);
    CHECK_THROWS_AS(expand(img, 9, 8), InvalidTargetSize);
    CHECK_THROWS_AS(expand(img, 8, 6), InvalidTargetSize);
    CHECK_NOTHROW(expand(img, 8, 7));
    CHECK_NOTHROW(expand(img, 7, 8));
}

TEST_CASE("gaussian pyramid level sizes and prefix property") {
    auto rng = testutil::rng(306);
    const FloatImage img = random_float_image(rng, 21, 13);
    const auto gp = build_gaussian_pyramid(img, 4);
    REQUIRE(gp.size() == 4);
    CHECK(gp[0].width == 21);
    CHECK(gp[1].width == 11);
    CHECK(gp[2].width == 6);
    CHECK(gp[3].width == 3);
    CHECK(gp[0].height == 13);
    CHECK(gp[1].height == 7);
    CHECK(gp[2].height == 4);
    CHECK(gp[3].height == 2);
    CHECK(max_abs_diff(gp[0], img) == 0.0);
    CHECK(max_abs_diff(gp[1], gaussian_reduce(img)) == 0.0);
}

TEST_CASE("pyramid construction validates level counts") {
    const FloatImage img(8, 8);
    CHECK_THROWS_AS(build_gaussian_pyramid(img, 0), InvalidLevelCount);
    CHECK_NOTHROW(build_gaussian_pyramid(img, 4));  // 8 -> 4 -> 2 -> 1
    CHECK_THROWS_AS(build_gaussian_pyramid(img, 5), ImageTooSmall);
    CHECK_THROWS_AS(build_gaussian_pyramid(FloatImage(1, 1), 2), ImageTooSmall);
}

TEST_CASE("laplacian bands plus residual reconstruct the input") {
    auto rng = testutil::rng(307);
    for (int trial = 0; trial < 20; ++trial) {
        const int w = testutil::rand_int(rng, 4, 32);
        const int h = testutil::rand_int(rng, 4, 32);
        const FloatImage img = random_float_image(rng, w, h);
        const auto gp = build_gaussian_pyramid(img, 3);
        const LaplacianPyramid lp = build_laplacian_pyramid(gp);
        REQUIRE(lp.bands.size() == 2);
        CHECK(lp.bands[0].width == gp[0].width);
        CHECK(lp.bands[1].width == gp[1].width);
        CHECK(lp.residual.width == gp[2].width);
        const FloatImage back = reconstruct_laplacian(lp);
        CHECK(max_abs_diff(back, img) < 1e-9);
    }
}

TEST_CASE("reconstruction is exact for 8-bit inputs") {
    auto rng = testutil::rng(308);
    for (int trial = 0; trial < 10; ++trial) {
        const GrayImage g8 = testutil::random_gray(rng, 24, 17);
        const FloatImage img = to_float(g8);
        const LaplacianPyramid lp = build_laplacian_pyramid(build_gaussian_pyramid(img, 3));
        const FloatImage back = reconstruct_laplacian(lp);
        CHECK(max_abs_diff(back, img) == 0.0);
    }
}

TEST_CASE("constant image yields all-zero bands") {
    const FloatImage img(12, 12, 99.0);
    const LaplacianPyramid lp = build_laplacian_pyramid(build_gaussian_pyramid(img, 3));
    for (const FloatImage& band : lp.bands) {
        for (double v : band.data) CHECK(v == 0.0);
    }
    for (double v : lp.residual.data) CHECK(v == 99.0);
}

TEST_CASE("laplacian construction rejects an empty pyramid") {
    CHECK_THROWS_AS(build_laplacian_pyramid({}), InvalidLevelCount);
}

} // TEST_SUITE
