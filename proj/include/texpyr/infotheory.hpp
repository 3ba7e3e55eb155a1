#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <texpyr/image.hpp>

namespace texpyr {

struct Histogram256 {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;
};

struct JointHistogram {
    std::vector<std::uint64_t> bins;  // 256 x 256, row-major
    std::uint64_t total = 0;

    std::uint64_t at(int i, int j) const {
        return bins[static_cast<std::size_t>(i) * 256 + j];
    }
};

Histogram256 histogram(const GrayImage& img);
JointHistogram joint_histogram(const GrayImage& a, const GrayImage& b);

/// Shannon entropy in bits over the 256-bin histogram; always in [0, 8].
double entropy(const GrayImage& img);
double entropy(const Histogram256& h);

/// I(A;B) = H(A) + H(B) - H(A,B) in bits, clamped at 0.
double mutual_information(const GrayImage& a, const GrayImage& b);

/// [H(R), H(G), H(B), I(R;G), I(R;B), I(G;B)]
std::array<double, 6> info_block(const GrayImage& r, const GrayImage& g,
                                 const GrayImage& b);

} // namespace texpyr
