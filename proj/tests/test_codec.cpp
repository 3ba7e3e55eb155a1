#include <doctest.h>

#include <texpyr/codec.hpp>

#include <cstdlib>

#include "fixtures.hpp"
#include "testutil.hpp"

using namespace texpyr;

namespace {

template <std::size_t N>
RasterImage decode_fixture(const std::array<std::uint8_t, N>& bytes) {
    return decode_image(std::span<const std::uint8_t>(bytes.data(), bytes.size()));
}

} // namespace

TEST_SUITE("codec") {

TEST_CASE("decodes an RGB PNG with exact pixel values") {
    const RasterImage img = decode_fixture(fixtures::kPngRgb2x2);
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 2);
    REQUIRE(img.channels == 3);
    CHECK(img.sample(0, 0, 0) == 10);
    CHECK(img.sample(0, 0, 1) == 20);
    CHECK(img.sample(0, 0, 2) == 30);
    CHECK(img.sample(1, 0, 0) == 40);
    CHECK(img.sample(0, 1, 1) == 80);
    CHECK(img.sample(1, 1, 2) == 220);
}

TEST_CASE("replicates grayscale PNGs to three channels") {
    const RasterImage img = decode_fixture(fixtures::kPngGray1x1);
    REQUIRE(img.width == 1);
    REQUIRE(img.height == 1);
    REQUIRE(img.channels == 3);
    CHECK(img.sample(0, 0, 0) == 7);
    CHECK(img.sample(0, 0, 1) == 7);
    CHECK(img.sample(0, 0, 2) == 7);
}

TEST_CASE("rejects 16-bit PNGs") {
    CHECK_THROWS_AS(decode_fixture(fixtures::kPngGray16), UnsupportedFormat);
}

TEST_CASE("expands palette PNGs to RGB") {
    const RasterImage img = decode_fixture(fixtures::kPngPalette2x2);
    REQUIRE(img.channels == 3);
    CHECK(img.sample(0, 0, 0) == 10);
    CHECK(img.sample(1, 0, 1) == 50);
    CHECK(img.sample(1, 1, 2) == 220);
}

TEST_CASE("strips the alpha channel") {
    const RasterImage img = decode_fixture(fixtures::kPngRgba2x2);
    REQUIRE(img.channels == 3);
    CHECK(img.sample(0, 0, 0) == 10);
    CHECK(img.sample(1, 0, 0) == 40);
    CHECK(img.sample(0, 1, 2) == 90);
    CHECK(img.sample(1, 1, 0) == 200);
}

TEST_CASE("decodes JPEG within quantization tolerance") {
    const RasterImage img = decode_fixture(fixtures::kJpegGray128_16x16);
    REQUIRE(img.width == 16);
    REQUIRE(img.height == 16);
    REQUIRE(img.channels == 3);
    for (const auto v : img.data) {
        CHECK(v >= 125);
        CHECK(v <= 131);
    }
}

TEST_CASE("rejects unknown byte streams") {
    const std::vector<std::uint8_t> garbage = {'n', 'o', 't', ' ', 'i', 'm', 'g'};
    CHECK_THROWS_AS(decode_image(garbage), UnsupportedFormat);
    CHECK_THROWS_AS(decode_image(std::vector<std::uint8_t>{}), UnsupportedFormat);
}

TEST_CASE("reports corrupt streams behind valid magic bytes") {
    std::vector<std::uint8_t> bad_png = {0x89, 'P', 'N', 'G', 1, 2, 3, 4, 5};
    CHECK_THROWS_AS(decode_image(bad_png), DecodeError);

    std::vector<std::uint8_t> bad_jpeg = {0xFF, 0xD8, 0xFF, 9, 9, 9};
    CHECK_THROWS_AS(decode_image(bad_jpeg), DecodeError);
}

TEST_CASE("reports truncated PNG streams") {
    const auto& full = fixtures::kPngRgb2x2;
    std::vector<std::uint8_t> cut(full.begin(), full.begin() + full.size() / 2);
    CHECK_THROWS_AS(decode_image(cut), DecodeError);
}

TEST_CASE("PNG encode/decode round-trips RGB exactly") {
    auto rng = testutil::rng(201);
    for (int trial = 0; trial < 10; ++trial) {
        const int w = testutil::rand_int(rng, 1, 33);
        const int h = testutil::rand_int(rng, 1, 33);
        const RasterImage img = testutil::random_raster(rng, w, h);
        const RasterImage back = decode_image(encode_png(img));
        REQUIRE(back.width == w);
        REQUIRE(back.height == h);
        CHECK(back.data == img.data);
    }
}

TEST_CASE("PNG encode/decode round-trips grayscale as replicated RGB") {
    auto rng = testutil::rng(202);
    const GrayImage img = testutil::random_gray(rng, 13, 9);
    const RasterImage back = decode_image(encode_png(img));
    REQUIRE(back.channels == 3);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            CHECK(back.sample(x, y, 0) == img.at(x, y));
            CHECK(back.sample(x, y, 1) == img.at(x, y));
            CHECK(back.sample(x, y, 2) == img.at(x, y));
        }
    }
}

TEST_CASE("save and load via the filesystem") {
    testutil::TempDir dir;
    auto rng = testutil::rng(203);
    const RasterImage img = testutil::random_raster(rng, 5, 6);
    const auto path = dir.path() / "img.png";
    save_png(path, img);
    const RasterImage back = load_image(path);
    CHECK(back.data == img.data);
}

TEST_CASE("load of a missing file fails cleanly") {
    CHECK_THROWS_AS(load_image("/nonexistent/definitely/missing.png"), DecodeError);
}

} // TEST_SUITE
