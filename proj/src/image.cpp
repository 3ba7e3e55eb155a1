#include <texpyr/image.hpp>

#include <cmath>
#include <string>

namespace texpyr {

std::array<GrayImage, 3> split_channels(const RasterImage& img) {
    if (img.channels != 3) {
        throw ChannelCountError("split_channels: expected 3 channels, got " +
                                std::to_string(img.channels));
    }
    std::array<GrayImage, 3> planes = {GrayImage(img.width, img.height),
                                       GrayImage(img.width, img.height),
                                       GrayImage(img.width, img.height)};
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    for (std::size_t i = 0; i < n; ++i) {
        planes[0].data[i] = img.data[i * 3 + 0];
        planes[1].data[i] = img.data[i * 3 + 1];
        planes[2].data[i] = img.data[i * 3 + 2];
    }
    return planes;
}

static void require_same_shape(const GrayImage& a, const GrayImage& b,
                               const char* where) {
    if (a.width != b.width || a.height != b.height) {
        throw DimensionMismatch(std::string(where) + ": channel shapes differ (" +
                                std::to_string(a.width) + "x" + std::to_string(a.height) +
                                " vs " + std::to_string(b.width) + "x" +
                                std::to_string(b.height) + ")");
    }
}

RasterImage merge_channels(const GrayImage& r, const GrayImage& g, const GrayImage& b) {
    require_same_shape(r, g, "merge_channels");
    require_same_shape(r, b, "merge_channels");
    RasterImage out(r.width, r.height, 3);
    const std::size_t n = static_cast<std::size_t>(r.width) * r.height;
    for (std::size_t i = 0; i < n; ++i) {
        out.data[i * 3 + 0] = r.data[i];
        out.data[i * 3 + 1] = g.data[i];
        out.data[i * 3 + 2] = b.data[i];
    }
    return out;
}

GrayImage to_grayscale(const GrayImage& r, const GrayImage& g, const GrayImage& b) {
    require_same_shape(r, g, "to_grayscale");
    require_same_shape(r, b, "to_grayscale");
    GrayImage out(r.width, r.height);
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        double y = 0.299 * r.data[i] + 0.587 * g.data[i] + 0.114 * b.data[i];
        long v = std::lround(y);
        if (v < 0) v = 0;
        if (v > 255) v = 255;
        out.data[i] = static_cast<std::uint8_t>(v);
    }
    return out;
}

GrayImage quantize(const GrayImage& img, int levels) {
    if (levels < 2 || levels > 256) {
        throw InvalidLevelCount("quantize: levels must be in [2, 256], got " +
                                std::to_string(levels));
    }
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        out.data[i] = static_cast<std::uint8_t>((img.data[i] * levels) >> 8);
    }
    return out;
}

} // namespace texpyr
