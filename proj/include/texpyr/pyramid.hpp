#pragma once

#include <array>
#include <vector>

#include <texpyr/image.hpp>

namespace texpyr {

/// Single-channel image with real-valued samples, row-major.
/// Pyramid arithmetic stays in doubles; requantization to 8 bits happens
/// once per level, at the descriptor boundary.
struct FloatImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    FloatImage() = default;
    FloatImage(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    double at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    double& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
};

FloatImage to_float(const GrayImage& img);

/// Rounds half away from zero and clamps to [0, 255].
GrayImage to_gray8(const FloatImage& img);

/// 5x5 separable generating kernel: outer product of [1,4,6,4,1]/16.
struct Kernel2D {
    std::array<std::array<double, 5>, 5> weights;

    static Kernel2D binomial5();
    double sum() const;
};

inline constexpr std::array<double, 5> kBinomial1D = {
    1.0 / 16.0, 4.0 / 16.0, 6.0 / 16.0, 4.0 / 16.0, 1.0 / 16.0};

/// Mirror reflection without repeating the edge pixel (..., 2, 1 | 0, 1, 2, ...).
int reflect_index(int i, int n);

/// One pyramid step: 5x5 binomial smoothing sampled at even coordinates,
/// reflected borders. Output dims are ceil(input/2); output values are
/// clamped to the input's [min, max].
FloatImage gaussian_reduce(const FloatImage& img);

/// levels[0] is the input; levels[l] = gaussian_reduce(levels[l-1]).
std::vector<FloatImage> build_gaussian_pyramid(const FloatImage& img, int n_levels);

/// Zero-interleaved upsampling followed by convolution with 4*w(m,n).
/// Target dims must be 2*dim-1 or 2*dim per axis.
FloatImage expand(const FloatImage& img, int target_w, int target_h);

/// Band-pass decomposition: bands[k] = gp[k] - expand(gp[k+1]), plus the
/// top Gaussian level as residual. Reconstruction is exact by definition.
struct LaplacianPyramid {
    std::vector<FloatImage> bands;
    FloatImage residual;
};

LaplacianPyramid build_laplacian_pyramid(const std::vector<FloatImage>& gp);

FloatImage reconstruct_laplacian(const LaplacianPyramid& lp);

} // namespace texpyr
