#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <texpyr/image.hpp>

namespace texpyr {

/// Gray levels present in a channel, viewed as species with pixel counts
/// as abundances.
struct AbundanceVector {
    std::vector<int> species;            // sorted distinct gray levels
    std::vector<std::uint64_t> counts;   // per-species pixel counts, all >= 1
    std::uint64_t total = 0;             // N

    std::size_t richness() const { return species.size(); }  // S
};

AbundanceVector abundance(const GrayImage& img);

/// The 7 diversity indices, in this order:
/// margalef, menhinick, berger_parker, fisher_alpha, kempton_taylor_q,
/// mcintosh, shannon_wiener. Requires N >= 2.
std::array<double, 7> biodiversity_indices(const AbundanceVector& a);

/// The 7 pairwise-distance indices with d(i,j) = |level_i - level_j|:
/// taxo_diversity, taxo_distinctness, sum_phylo_dist, avg_nn_dist,
/// intensive_quad_entropy, extensive_quad_entropy, total_taxo_distinctness.
/// A single-species distribution yields all zeros.
std::array<double, 7> taxonomic_indices(const AbundanceVector& a);

/// Solves S = alpha * ln(1 + N/alpha) by Newton iteration from alpha0 = S,
/// with a bisection fallback on [1e-8, 1e8]. alpha := 0 when S = 1.
double fisher_alpha(std::uint64_t species_count, std::uint64_t total);

struct BitFeatures {
    double margalef = 0;
    double menhinick = 0;
    double berger_parker = 0;
    double fisher_alpha = 0;
    double kempton_taylor_q = 0;
    double mcintosh = 0;
    double shannon_wiener = 0;
    double taxo_diversity = 0;
    double taxo_distinctness = 0;
    double sum_phylo_dist = 0;
    double avg_nn_dist = 0;
    double intensive_quad_entropy = 0;
    double extensive_quad_entropy = 0;
    double total_taxo_distinctness = 0;

    std::array<double, 14> as_array() const {
        return {margalef,      menhinick,        berger_parker,
                fisher_alpha,  kempton_taylor_q, mcintosh,
                shannon_wiener, taxo_diversity,  taxo_distinctness,
                sum_phylo_dist, avg_nn_dist,     intensive_quad_entropy,
                extensive_quad_entropy, total_taxo_distinctness};
    }
};

/// biodiversity_indices followed by taxonomic_indices, 14 values.
BitFeatures bit_block(const GrayImage& img);

} // namespace texpyr
