#include <texpyr/cooccur.hpp>

#include <cmath>
#include <string>

namespace texpyr {

namespace {

constexpr double kLogFloor = 1e-12;

// p * log2(p) with 0 log 0 := 0 and a floor inside the logarithm.
double plog2(double p) {
    if (p <= 0.0) return 0.0;
    return p * std::log2(std::max(p, kLogFloor));
}

double plog2v(double p, double arg) {
    if (p <= 0.0) return 0.0;
    return p * std::log2(std::max(arg, kLogFloor));
}

} // namespace

CooccurrenceMatrix compute_glcm(const GrayImage& img, int levels,
                                std::span<const Offset> offsets,
                                bool symmetric, bool normalize) {
    if (levels < 2 || levels > 256) {
        throw InvalidLevelCount("compute_glcm: levels must be in [2, 256], got " +
                                std::to_string(levels));
    }
    if (offsets.empty()) {
        throw InvalidArgument("compute_glcm: no offsets given");
    }
    for (const Offset& o : offsets) {
        if (o.dx == 0 && o.dy == 0) {
            throw OffsetOutOfRange("compute_glcm: zero offset pairs pixels with themselves");
        }
    }
    for (std::uint8_t v : img.data) {
        if (v >= levels) {
            throw InvalidArgument("compute_glcm: pixel value " + std::to_string(v) +
                                  " outside [0, " + std::to_string(levels) + ")");
        }
    }

    CooccurrenceMatrix m;
    m.levels = levels;
    m.counts.assign(static_cast<std::size_t>(levels) * levels, 0.0);
    m.offsets.assign(offsets.begin(), offsets.end());
    m.symmetric = symmetric;
    m.normalized = false;

    std::uint64_t pairs = 0;
    for (const Offset& o : offsets) {
        for (int y = 0; y < img.height; ++y) {
            const int ny = y + o.dy;
            if (ny < 0 || ny >= img.height) continue;
            for (int x = 0; x < img.width; ++x) {
                const int nx = x + o.dx;
                if (nx < 0 || nx >= img.width) continue;
                m.at(img.at(x, y), img.at(nx, ny)) += 1.0;
                ++pairs;
            }
        }
    }
    if (pairs == 0) {
        throw EmptyPairSet("compute_glcm: no pixel pair fits any offset in a " +
                           std::to_string(img.width) + "x" +
                           std::to_string(img.height) + " image");
    }

    if (symmetric) {
        for (int i = 0; i < levels; ++i) {
            for (int j = i + 1; j < levels; ++j) {
                const double s = m.at(i, j) + m.at(j, i);
                m.at(i, j) = s;
                m.at(j, i) = s;
            }
            m.at(i, i) *= 2.0;
        }
    }

    if (normalize) {
        double total = 0.0;
        for (double c : m.counts) total += c;
        for (double& c : m.counts) c /= total;
        m.normalized = true;
    }
    return m;
}

GlcmFeatures glcm_features(const CooccurrenceMatrix& m) {
    if (!m.normalized) {
        throw NotNormalized("glcm_features: matrix must be normalized");
    }
    const int g = m.levels;

    std::vector<double> px(g, 0.0), py(g, 0.0);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            px[i] += m.at(i, j);
            py[j] += m.at(i, j);
        }
    }
    double mu_i = 0.0, mu_j = 0.0;
    for (int i = 0; i < g; ++i) {
        mu_i += i * px[i];
        mu_j += i * py[i];
    }
    double var_i = 0.0, var_j = 0.0;
    for (int i = 0; i < g; ++i) {
        var_i += (i - mu_i) * (i - mu_i) * px[i];
        var_j += (i - mu_j) * (i - mu_j) * py[i];
    }

    GlcmFeatures f;
    double cov = 0.0;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const double p = m.at(i, j);
            if (p == 0.0) continue;
            const int d = i - j;
            f.contrast += d * d * p;
            f.dissimilarity += std::abs(d) * p;
            f.homogeneity += p / (1.0 + d * d);
            f.asm_ += p * p;
            cov += (i - mu_i) * (j - mu_j) * p;
        }
    }
    f.energy = std::sqrt(f.asm_);
    // A point-mass distribution has zero marginal variance; correlation of a
    // constant field is taken as perfect.
    if (var_i <= 0.0 || var_j <= 0.0) {
        f.correlation = 1.0;
    } else {
        f.correlation = cov / std::sqrt(var_i * var_j);
    }
    return f;
}

HaralickFeatures haralick_features(const CooccurrenceMatrix& m) {
    if (!m.normalized) {
        throw NotNormalized("haralick_features: matrix must be normalized");
    }
    const int g = m.levels;

    std::vector<double> px(g, 0.0), py(g, 0.0);
    std::vector<double> psum(2 * g - 1, 0.0);   // indexed by i + j
    std::vector<double> pdiff(g, 0.0);          // indexed by |i - j|
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const double p = m.at(i, j);
            px[i] += p;
            py[j] += p;
            psum[i + j] += p;
            pdiff[std::abs(i - j)] += p;
        }
    }

    double mu_x = 0.0, mu_y = 0.0;
    for (int i = 0; i < g; ++i) {
        mu_x += i * px[i];
        mu_y += i * py[i];
    }
    double var_x = 0.0, var_y = 0.0;
    for (int i = 0; i < g; ++i) {
        var_x += (i - mu_x) * (i - mu_x) * px[i];
        var_y += (i - mu_y) * (i - mu_y) * py[i];
    }

    HaralickFeatures f;

    double cross = 0.0;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const double p = m.at(i, j);
            if (p == 0.0) continue;
            f.asm_ += p * p;
            f.idm += p / (1.0 + (i - j) * (i - j));
            f.variance += (i - mu_x) * (i - mu_x) * p;
            f.entropy -= plog2(p);
            cross += i * j * p;
        }
    }

    for (int k = 0; k <= 2 * g - 2; ++k) {
        f.sum_average += k * psum[k];
        f.sum_entropy -= plog2(psum[k]);
    }
    for (int k = 0; k <= 2 * g - 2; ++k) {
        f.sum_variance += (k - f.sum_entropy) * (k - f.sum_entropy) * psum[k];
    }

    double mu_diff = 0.0;
    for (int k = 0; k < g; ++k) {
        f.contrast += static_cast<double>(k) * k * pdiff[k];
        f.difference_entropy -= plog2(pdiff[k]);
        mu_diff += k * pdiff[k];
    }
    for (int k = 0; k < g; ++k) {
        f.difference_variance += (k - mu_diff) * (k - mu_diff) * pdiff[k];
    }

    if (var_x <= 0.0 || var_y <= 0.0) {
        f.correlation = 1.0;
    } else {
        f.correlation = (cross - mu_x * mu_y) / std::sqrt(var_x * var_y);
    }

    // Information measures of correlation use the marginal-product entropies.
    double hx = 0.0, hy = 0.0;
    for (int i = 0; i < g; ++i) {
        hx -= plog2(px[i]);
        hy -= plog2(py[i]);
    }
    double hxy1 = 0.0, hxy2 = 0.0;
    for (int i = 0; i < g; ++i) {
        if (px[i] == 0.0) continue;
        for (int j = 0; j < g; ++j) {
            const double prod = px[i] * py[j];
            hxy1 -= plog2v(m.at(i, j), prod);
            hxy2 -= plog2(prod);
        }
    }
    const double hxy = f.entropy;
    const double hmax = std::max(hx, hy);
    f.info_correlation_1 = hmax > 0.0 ? (hxy - hxy1) / hmax : 0.0;
    f.info_correlation_2 = std::sqrt(std::max(0.0, 1.0 - std::exp(-2.0 * (hxy2 - hxy))));

    return f;
}

std::pair<GlcmFeatures, HaralickFeatures>
texture_features_gray(const GrayImage& img, int levels, int distance) {
    if (distance < 1) {
        throw InvalidArgument("texture_features_gray: distance must be >= 1, got " +
                              std::to_string(distance));
    }
    const GrayImage q = quantize(img, levels);

    std::array<double, 6> gsum{};
    std::array<double, 13> hsum{};
    for (const Offset& dir : kGlcmDirections) {
        const Offset o{dir.dx * distance, dir.dy * distance};
        const CooccurrenceMatrix m =
            compute_glcm(q, levels, std::span<const Offset>(&o, 1), true, true);
        const auto ga = glcm_features(m).as_array();
        const auto ha = haralick_features(m).as_array();
        for (std::size_t i = 0; i < gsum.size(); ++i) gsum[i] += ga[i];
        for (std::size_t i = 0; i < hsum.size(); ++i) hsum[i] += ha[i];
    }
    const double n = static_cast<double>(kGlcmDirections.size());

    GlcmFeatures gf;
    gf.contrast = gsum[0] / n;
    gf.dissimilarity = gsum[1] / n;
    gf.homogeneity = gsum[2] / n;
    gf.energy = gsum[3] / n;
    gf.correlation = gsum[4] / n;
    gf.asm_ = gsum[5] / n;

    HaralickFeatures hf;
    hf.asm_ = hsum[0] / n;
    hf.contrast = hsum[1] / n;
    hf.correlation = hsum[2] / n;
    hf.variance = hsum[3] / n;
    hf.idm = hsum[4] / n;
    hf.sum_average = hsum[5] / n;
    hf.sum_variance = hsum[6] / n;
    hf.sum_entropy = hsum[7] / n;
    hf.entropy = hsum[8] / n;
    hf.difference_variance = hsum[9] / n;
    hf.difference_entropy = hsum[10] / n;
    hf.info_correlation_1 = hsum[11] / n;
    hf.info_correlation_2 = hsum[12] / n;

    return {gf, hf};
}

} // namespace texpyr
