#include <texpyr/bitdesc.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace texpyr {

AbundanceVector abundance(const GrayImage& img) {
    if (img.width <= 0 || img.height <= 0 || img.data.empty()) {
        throw EmptyImage("abundance: empty image");
    }
    std::array<std::uint64_t, 256> hist{};
    for (std::uint8_t v : img.data) ++hist[v];

    AbundanceVector a;
    for (int level = 0; level < 256; ++level) {
        if (hist[level] > 0) {
            a.species.push_back(level);
            a.counts.push_back(hist[level]);
        }
    }
    a.total = img.data.size();
    return a;
}

double fisher_alpha(std::uint64_t species_count, std::uint64_t total) {
    if (species_count <= 1) return 0.0;
    const double s = static_cast<double>(species_count);
    const double n = static_cast<double>(total);

    // S = alpha * ln(1 + N/alpha); g is increasing and concave in alpha,
    // so Newton from any positive start converges monotonically after one step.
    const auto g = [&](double alpha) { return alpha * std::log1p(n / alpha) - s; };
    const auto gprime = [&](double alpha) {
        return std::log1p(n / alpha) - n / (alpha + n);
    };

    double alpha = s;
    for (int it = 0; it < 100; ++it) {
        const double value = g(alpha);
        const double slope = gprime(alpha);
        if (slope <= 0.0) break;
        const double step = value / slope;
        alpha -= step;
        if (alpha <= 0.0) break;
        if (std::abs(step) < 1e-10 * std::max(1.0, alpha)) {
            return alpha;
        }
    }

    // Bisection fallback. g < 0 on the whole bracket happens when S = N
    // (no finite root); the upper bound is returned as the saturation value.
    double lo = 1e-8, hi = 1e8;
    if (g(hi) <= 0.0) return hi;
    if (g(lo) >= 0.0) return lo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::array<double, 7> biodiversity_indices(const AbundanceVector& a) {
    const std::size_t s = a.richness();
    const double sd = static_cast<double>(s);
    const double n = static_cast<double>(a.total);
    if (a.total < 2) {
        throw DegenerateAbundance("biodiversity_indices: need at least 2 samples, got " +
                                  std::to_string(a.total));
    }

    const double margalef = (sd - 1.0) / std::log(n);
    const double menhinick = sd / std::sqrt(n);

    std::uint64_t max_count = 0;
    double sum_sq = 0.0;
    double shannon = 0.0;
    for (std::uint64_t c : a.counts) {
        max_count = std::max(max_count, c);
        const double cd = static_cast<double>(c);
        sum_sq += cd * cd;
        const double p = cd / n;
        shannon -= p * std::log(p);
    }
    const double berger_parker = static_cast<double>(max_count) / n;
    const double mcintosh = (n - std::sqrt(sum_sq)) / (n - std::sqrt(n));

    // Interquartile slope of the ranked-abundance curve.
    double kempton = 0.0;
    if (s >= 4) {
        std::vector<std::uint64_t> sorted(a.counts);
        std::sort(sorted.begin(), sorted.end());
        const std::size_t lo = static_cast<std::size_t>(std::ceil(0.25 * sd));
        const std::size_t hi = static_cast<std::size_t>(0.75 * sd);
        if (sorted[hi] != sorted[lo]) {
            kempton = (sd / 2.0) / std::log(static_cast<double>(sorted[hi]) /
                                            static_cast<double>(sorted[lo]));
        }
    }

    return {margalef,
            menhinick,
            berger_parker,
            fisher_alpha(s, a.total),
            kempton,
            mcintosh,
            shannon};
}

std::array<double, 7> taxonomic_indices(const AbundanceVector& a) {
    const std::size_t s = a.richness();
    if (a.total == 0) {
        throw DegenerateAbundance("taxonomic_indices: empty abundance vector");
    }
    if (s < 2) {
        return {0, 0, 0, 0, 0, 0, 0};
    }
    const double n = static_cast<double>(a.total);
    const double sd = static_cast<double>(s);

    // d(i, j) = |level_i - level_j|; species are sorted so nearest neighbours
    // are adjacent.
    double dist_sum = 0.0;          // sum over unordered pairs of d
    double weighted = 0.0;          // sum over unordered pairs of d * x_i * x_j
    double pair_weight = 0.0;       // sum over unordered pairs of x_i * x_j
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i + 1; j < s; ++j) {
            const double d = static_cast<double>(a.species[j] - a.species[i]);
            const double w = static_cast<double>(a.counts[i]) *
                             static_cast<double>(a.counts[j]);
            dist_sum += d;
            weighted += d * w;
            pair_weight += w;
        }
    }

    double nn_sum = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        double best = 0.0;
        if (i == 0) {
            best = static_cast<double>(a.species[1] - a.species[0]);
        } else if (i + 1 == s) {
            best = static_cast<double>(a.species[s - 1] - a.species[s - 2]);
        } else {
            best = static_cast<double>(std::min(a.species[i] - a.species[i - 1],
                                                a.species[i + 1] - a.species[i]));
        }
        nn_sum += best;
    }

    double total_distinctness = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < s; ++j) {
            if (j == i) continue;
            row += std::abs(static_cast<double>(a.species[i]) -
                            static_cast<double>(a.species[j]));
        }
        total_distinctness += row / (sd - 1.0);
    }

    // s >= 2 implies total >= 2, so both denominators are positive.
    const double diversity = weighted / (n * (n - 1.0) / 2.0);
    const double distinctness = weighted / pair_weight;

    return {diversity,
            distinctness,
            dist_sum,
            nn_sum / sd,
            2.0 * dist_sum / (sd * sd),
            2.0 * dist_sum / sd,
            total_distinctness};
}

BitFeatures bit_block(const GrayImage& img) {
    const AbundanceVector a = abundance(img);
    const auto bio = biodiversity_indices(a);
    const auto taxo = taxonomic_indices(a);

    BitFeatures f;
    f.margalef = bio[0];
    f.menhinick = bio[1];
    f.berger_parker = bio[2];
    f.fisher_alpha = bio[3];
    f.kempton_taylor_q = bio[4];
    f.mcintosh = bio[5];
    f.shannon_wiener = bio[6];
    f.taxo_diversity = taxo[0];
    f.taxo_distinctness = taxo[1];
    f.sum_phylo_dist = taxo[2];
    f.avg_nn_dist = taxo[3];
    f.intensive_quad_entropy = taxo[4];
    f.extensive_quad_entropy = taxo[5];
    f.total_taxo_distinctness = taxo[6];
    return f;
}

} // namespace texpyr
