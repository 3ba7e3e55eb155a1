#include <texpyr/pyramid.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace texpyr {

FloatImage to_float(const GrayImage& img) {
    FloatImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        out.data[i] = static_cast<double>(img.data[i]);
    }
    return out;
}

GrayImage to_gray8(const FloatImage& img) {
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        double v = std::round(img.data[i]);  // half away from zero
        if (v < 0.0) v = 0.0;
        if (v > 255.0) v = 255.0;
        out.data[i] = static_cast<std::uint8_t>(v);
    }
    return out;
}

Kernel2D Kernel2D::binomial5() {
    Kernel2D k;
    for (int m = 0; m < 5; ++m) {
        for (int n = 0; n < 5; ++n) {
            k.weights[m][n] = kBinomial1D[m] * kBinomial1D[n];
        }
    }
    return k;
}

double Kernel2D::sum() const {
    double s = 0.0;
    for (const auto& row : weights) {
        for (double w : row) s += w;
    }
    return s;
}

int reflect_index(int i, int n) {
    if (n == 1) return 0;
    while (i < 0 || i >= n) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * n - 2 - i;
    }
    return i;
}

FloatImage gaussian_reduce(const FloatImage& img) {
    if (img.width < 2 || img.height < 2) {
        throw ImageTooSmall("gaussian_reduce: input must be at least 2x2, got " +
                            std::to_string(img.width) + "x" + std::to_string(img.height));
    }
    const int ow = (img.width + 1) / 2;
    const int oh = (img.height + 1) / 2;
    FloatImage out(ow, oh);

    double lo = img.data[0], hi = img.data[0];
    for (double v : img.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int m = -2; m <= 2; ++m) {
                const int sy = reflect_index(2 * y + m, img.height);
                const double wm = kBinomial1D[m + 2];
                for (int n = -2; n <= 2; ++n) {
                    const int sx = reflect_index(2 * x + n, img.width);
                    acc += wm * kBinomial1D[n + 2] * img.at(sx, sy);
                }
            }
            out.at(x, y) = std::clamp(acc, lo, hi);
        }
    }
    return out;
}

std::vector<FloatImage> build_gaussian_pyramid(const FloatImage& img, int n_levels) {
    if (n_levels < 1) {
        throw InvalidLevelCount("build_gaussian_pyramid: need at least 1 level, got " +
                                std::to_string(n_levels));
    }
    // Every level below the top must be reducible (>= 2 on both axes).
    int w = img.width, h = img.height;
    for (int l = 0; l + 1 < n_levels; ++l) {
        if (w < 2 || h < 2) {
            throw ImageTooSmall("build_gaussian_pyramid: " + std::to_string(img.width) +
                                "x" + std::to_string(img.height) + " supports fewer than " +
                                std::to_string(n_levels) + " levels");
        }
        w = (w + 1) / 2;
        h = (h + 1) / 2;
    }

    std::vector<FloatImage> gp;
    gp.reserve(static_cast<std::size_t>(n_levels));
    gp.push_back(img);
    for (int l = 1; l < n_levels; ++l) {
        gp.push_back(gaussian_reduce(gp.back()));
    }
    return gp;
}

namespace {

// 1-D dyadic upsample: zero-interleave then convolve with 2 * [1,4,6,4,1]/16,
// borders reflected in source space. The zeros drop out, leaving
//   out[2x]   = (s[x-1] + 6 s[x] + s[x+1]) / 8
//   out[2x+1] = (s[x] + s[x+1]) / 2
// Each phase's weights sum to 1, so constants are fixed points.
void expand_line(const double* src, int n, std::ptrdiff_t src_stride,
                 double* dst, int target, std::ptrdiff_t dst_stride) {
    for (int i = 0; i < target; ++i) {
        const int x = i / 2;
        double v;
        if (i % 2 == 0) {
            v = (src[reflect_index(x - 1, n) * src_stride] +
                 6.0 * src[static_cast<std::ptrdiff_t>(x) * src_stride] +
                 src[reflect_index(x + 1, n) * src_stride]) / 8.0;
        } else {
            v = (src[static_cast<std::ptrdiff_t>(x) * src_stride] +
                 src[reflect_index(x + 1, n) * src_stride]) / 2.0;
        }
        dst[static_cast<std::ptrdiff_t>(i) * dst_stride] = v;
    }
}

} // namespace

FloatImage expand(const FloatImage& img, int target_w, int target_h) {
    const auto valid = [](int target, int dim) {
        return target == 2 * dim || target == 2 * dim - 1;
    };
    if (!valid(target_w, img.width) || !valid(target_h, img.height)) {
        throw InvalidTargetSize("expand: target " + std::to_string(target_w) + "x" +
                                std::to_string(target_h) + " is not reachable from " +
                                std::to_string(img.width) + "x" +
                                std::to_string(img.height));
    }

    FloatImage horiz(target_w, img.height);
    for (int y = 0; y < img.height; ++y) {
        expand_line(&img.data[static_cast<std::size_t>(y) * img.width], img.width, 1,
                    &horiz.data[static_cast<std::size_t>(y) * target_w], target_w, 1);
    }

    FloatImage out(target_w, target_h);
    for (int x = 0; x < target_w; ++x) {
        expand_line(&horiz.data[x], img.height, horiz.width,
                    &out.data[x], target_h, out.width);
    }
    return out;
}

LaplacianPyramid build_laplacian_pyramid(const std::vector<FloatImage>& gp) {
    if (gp.empty()) {
        throw InvalidLevelCount("build_laplacian_pyramid: empty Gaussian pyramid");
    }
    LaplacianPyramid lp;
    lp.bands.reserve(gp.size() - 1);
    for (std::size_t k = 0; k + 1 < gp.size(); ++k) {
        FloatImage up = expand(gp[k + 1], gp[k].width, gp[k].height);
        FloatImage band(gp[k].width, gp[k].height);
        for (std::size_t i = 0; i < band.data.size(); ++i) {
            band.data[i] = gp[k].data[i] - up.data[i];
        }
        lp.bands.push_back(std::move(band));
    }
    lp.residual = gp.back();
    return lp;
}

FloatImage reconstruct_laplacian(const LaplacianPyramid& lp) {
    FloatImage acc = lp.residual;
    for (std::size_t k = lp.bands.size(); k-- > 0;) {
        FloatImage up = expand(acc, lp.bands[k].width, lp.bands[k].height);
        for (std::size_t i = 0; i < up.data.size(); ++i) {
            up.data[i] += lp.bands[k].data[i];
        }
        acc = std::move(up);
    }
    return acc;
}

} // namespace texpyr
