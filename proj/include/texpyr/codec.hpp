#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <texpyr/image.hpp>

namespace texpyr {

/// Decodes a PNG or JPEG byte stream into a 3-channel image.
/// Grayscale inputs are replicated to 3 channels; 16-bit inputs are rejected.
RasterImage decode_image(std::span<const std::uint8_t> bytes);

/// Reads and decodes an image file.
RasterImage load_image(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const RasterImage& img);
std::vector<std::uint8_t> encode_png(const GrayImage& img);

void save_png(const std::filesystem::path& path, const RasterImage& img);
void save_png(const std::filesystem::path& path, const GrayImage& img);

} // namespace texpyr
