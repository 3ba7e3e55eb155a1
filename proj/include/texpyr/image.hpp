#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <texpyr/errors.hpp>

namespace texpyr {

/// Single-channel 8-bit image, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::size_t pixel_count() const { return data.size(); }
};

/// Interleaved 8-bit image with 1 or 3 channels, row-major.
struct RasterImage {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> data;

    RasterImage() = default;
    RasterImage(int w, int h, int c, std::uint8_t fill = 0)
        : width(w), height(h), channels(c),
          data(static_cast<std::size_t>(w) * h * c, fill) {}

    std::uint8_t sample(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t& sample(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
};

/// R, G, B planes of a 3-channel image. Throws ChannelCountError otherwise.
std::array<GrayImage, 3> split_channels(const RasterImage& img);

/// Inverse of split_channels.
RasterImage merge_channels(const GrayImage& r, const GrayImage& g, const GrayImage& b);

/// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B), clamped to [0,255].
GrayImage to_grayscale(const GrayImage& r, const GrayImage& g, const GrayImage& b);

/// Maps v to floor(v * levels / 256); output values lie in [0, levels-1].
/// levels must be in [2, 256].
GrayImage quantize(const GrayImage& img, int levels);

} // namespace texpyr
