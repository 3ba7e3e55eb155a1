#include <doctest.h>

#include <texpyr/image.hpp>

#include "testutil.hpp"

using namespace texpyr;

TEST_SUITE("image") {

TEST_CASE("split and merge round-trip") {
    auto g = testutil::rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int w = testutil::rand_int(g, 1, 17);
        const int h = testutil::rand_int(g, 1, 17);
        const RasterImage img = testutil::random_raster(g, w, h);
        const auto planes = split_channels(img);
        CHECK(planes[0].width == w);
        CHECK(planes[0].height == h);
        const RasterImage back = merge_channels(planes[0], planes[1], planes[2]);
        CHECK(back.data == img.data);
    }
}

TEST_CASE("split rejects non-3-channel input") {
    RasterImage gray1(4, 4, 1);
    CHECK_THROWS_AS(split_channels(gray1), ChannelCountError);
}

TEST_CASE("merge rejects mismatched shapes") {
    GrayImage a(4, 4), b(4, 4), c(4, 5);
    CHECK_THROWS_AS(merge_channels(a, b, c), DimensionMismatch);
}

TEST_CASE("grayscale uses rounded BT.601 weights") {
    GrayImage r(1, 1), g(1, 1), b(1, 1);

    r.at(0, 0) = 255; g.at(0, 0) = 255; b.at(0, 0) = 255;
    CHECK(to_grayscale(r, g, b).at(0, 0) == 255);

    r.at(0, 0) = 255; g.at(0, 0) = 0; b.at(0, 0) = 0;
    CHECK(to_grayscale(r, g, b).at(0, 0) == 76);   // round(76.245)

    r.at(0, 0) = 0; g.at(0, 0) = 255; b.at(0, 0) = 0;
    CHECK(to_grayscale(r, g, b).at(0, 0) == 150);  // round(149.685)

    r.at(0, 0) = 0; g.at(0, 0) = 0; b.at(0, 0) = 255;
    CHECK(to_grayscale(r, g, b).at(0, 0) == 29);   // round(29.07)
}

TEST_CASE("grayscale matches the formula on random images") {
    auto rng = testutil::rng(102);
    const GrayImage r = testutil::random_gray(rng, 9, 7);
    const GrayImage g = testutil::random_gray(rng, 9, 7);
    const GrayImage b = testutil::random_gray(rng, 9, 7);
    const GrayImage y = to_grayscale(r, g, b);
    for (std::size_t i = 0; i < y.data.size(); ++i) {
        const long expect =
            std::lround(0.299 * r.data[i] + 0.587 * g.data[i] + 0.114 * b.data[i]);
        CHECK(y.data[i] == static_cast<std::uint8_t>(std::clamp(expect, 0L, 255L)));
    }
}

TEST_CASE("quantize maps by floor(v * levels / 256)") {
    GrayImage img(4, 1);
    img.data = {0, 127, 128, 255};

    const GrayImage q2 = quantize(img, 2);
    CHECK(q2.data == std::vector<std::uint8_t>{0, 0, 1, 1});

    const GrayImage q8 = quantize(img, 8);
    CHECK(q8.data == std::vector<std::uint8_t>{0, 3, 4, 7});

    const GrayImage q256 = quantize(img, 256);
    CHECK(q256.data == img.data);
}

TEST_CASE("quantize output stays below the level count") {
    auto rng = testutil::rng(103);
    for (int trial = 0; trial < 20; ++trial) {
        const int levels = testutil::rand_int(rng, 2, 256);
        const GrayImage img = testutil::random_gray(rng, 8, 8);
        const GrayImage q = quantize(img, levels);
        for (auto v : q.data) CHECK(v < levels);
    }
}

TEST_CASE("quantize validates the level count") {
    GrayImage img(2, 2);
    CHECK_THROWS_AS(quantize(img, 1), InvalidLevelCount);
    CHECK_THROWS_AS(quantize(img, 257), InvalidLevelCount);
    CHECK_NOTHROW(quantize(img, 2));
    CHECK_NOTHROW(quantize(img, 256));
}

} // TEST_SUITE
