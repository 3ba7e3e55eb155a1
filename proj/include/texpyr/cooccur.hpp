#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include <texpyr/image.hpp>

namespace texpyr {

/// Pixel displacement (dx, dy) for co-occurrence counting.
struct Offset {
    int dx = 0;
    int dy = 0;
};

/// The four distance-1 directions used throughout: 0, 45, 90, 135 degrees.
inline constexpr std::array<Offset, 4> kGlcmDirections = {
    Offset{1, 0}, Offset{1, 1}, Offset{0, 1}, Offset{-1, 1}};

/// Joint distribution of gray-level pairs at the given offsets.
struct CooccurrenceMatrix {
    int levels = 0;
    std::vector<double> counts;   // levels x levels, row-major
    std::vector<Offset> offsets;
    bool symmetric = false;
    bool normalized = false;

    double at(int i, int j) const {
        return counts[static_cast<std::size_t>(i) * levels + j];
    }
    double& at(int i, int j) {
        return counts[static_cast<std::size_t>(i) * levels + j];
    }
};

/// counts[i][j] = number of pixel pairs (p, p+offset) with values (i, j),
/// accumulated over all offsets. `symmetric` adds the transpose;
/// `normalize` divides by the total count. The image must already be
/// quantized to `levels` gray levels.
CooccurrenceMatrix compute_glcm(const GrayImage& img, int levels,
                                std::span<const Offset> offsets,
                                bool symmetric, bool normalize);

struct GlcmFeatures {
    double contrast = 0;
    double dissimilarity = 0;
    double homogeneity = 0;
    double energy = 0;
    double correlation = 0;
    double asm_ = 0;

    std::array<double, 6> as_array() const {
        return {contrast, dissimilarity, homogeneity, energy, correlation, asm_};
    }
};

/// Requires a normalized matrix. A zero-variance (point-mass) matrix has
/// correlation 1 by convention.
GlcmFeatures glcm_features(const CooccurrenceMatrix& m);

/// The 13 classic Haralick statistics (f14 excluded). Logs are base 2 with
/// 0*log0 := 0 and a 1e-12 floor inside logarithms.
struct HaralickFeatures {
    double asm_ = 0;                 // f1
    double contrast = 0;             // f2
    double correlation = 0;          // f3
    double variance = 0;             // f4, sum of squares
    double idm = 0;                  // f5, inverse difference moment
    double sum_average = 0;          // f6
    double sum_variance = 0;         // f7
    double sum_entropy = 0;          // f8
    double entropy = 0;              // f9
    double difference_variance = 0;  // f10
    double difference_entropy = 0;   // f11
    double info_correlation_1 = 0;   // f12
    double info_correlation_2 = 0;   // f13

    std::array<double, 13> as_array() const {
        return {asm_,         contrast,     correlation,
                variance,     idm,          sum_average,
                sum_variance, sum_entropy,  entropy,
                difference_variance, difference_entropy,
                info_correlation_1,  info_correlation_2};
    }
};

HaralickFeatures haralick_features(const CooccurrenceMatrix& m);

/// Quantizes to `levels`, builds one symmetric normalized GLCM per direction
/// at the given distance, evaluates both feature sets per direction and
/// returns the per-direction mean: 6 GLCM + 13 Haralick values.
std::pair<GlcmFeatures, HaralickFeatures>
texture_features_gray(const GrayImage& img, int levels, int distance = 1);

} // namespace texpyr
