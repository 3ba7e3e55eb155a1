#include <texpyr/infotheory.hpp>

#include <cmath>
#include <string>

namespace texpyr {

namespace {

void require_nonempty(const GrayImage& img, const char* where) {
    if (img.width <= 0 || img.height <= 0 || img.data.empty()) {
        throw EmptyImage(std::string(where) + ": empty image");
    }
}

void require_same_shape(const GrayImage& a, const GrayImage& b, const char* where) {
    if (a.width != b.width || a.height != b.height) {
        throw DimensionMismatch(std::string(where) + ": shapes differ (" +
                                std::to_string(a.width) + "x" + std::to_string(a.height) +
                                " vs " + std::to_string(b.width) + "x" +
                                std::to_string(b.height) + ")");
    }
}

} // namespace

Histogram256 histogram(const GrayImage& img) {
    require_nonempty(img, "histogram");
    Histogram256 h;
    for (std::uint8_t v : img.data) ++h.bins[v];
    h.total = img.data.size();
    return h;
}

JointHistogram joint_histogram(const GrayImage& a, const GrayImage& b) {
    require_nonempty(a, "joint_histogram");
    require_same_shape(a, b, "joint_histogram");
    JointHistogram h;
    h.bins.assign(256 * 256, 0);
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        ++h.bins[static_cast<std::size_t>(a.data[i]) * 256 + b.data[i]];
    }
    h.total = a.data.size();
    return h;
}

double entropy(const Histogram256& h) {
    if (h.total == 0) throw EmptyImage("entropy: empty histogram");
    const double n = static_cast<double>(h.total);
    double sum = 0.0;
    for (std::uint64_t c : h.bins) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        sum -= p * std::log2(p);
    }
    return sum < 0.0 ? 0.0 : sum;
}

double entropy(const GrayImage& img) { return entropy(histogram(img)); }

double mutual_information(const GrayImage& a, const GrayImage& b) {
    const JointHistogram joint = joint_histogram(a, b);
    const double n = static_cast<double>(joint.total);
    double h_joint = 0.0;
    for (std::uint64_t c : joint.bins) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h_joint -= p * std::log2(p);
    }
    const double mi = entropy(a) + entropy(b) - h_joint;
    return mi < 0.0 ? 0.0 : mi;
}

std::array<double, 6> info_block(const GrayImage& r, const GrayImage& g,
                                 const GrayImage& b) {
    return {entropy(r),
            entropy(g),
            entropy(b),
            mutual_information(r, g),
            mutual_information(r, b),
            mutual_information(g, b)};
}

} // namespace texpyr
