#pragma once

#include <string>
#include <vector>

#include <texpyr/image.hpp>

namespace texpyr {

enum class Family { Bit, Haralick, Glcm, Info };

const char* family_name(Family f);

struct ExtractionConfig {
    int glcm_levels = 8;
    int glcm_distance = 1;
    int pyramid_levels = 3;
    std::string schema_version = "tio-v1";
};

/// One position in the feature vector: family, pyramid level, channel
/// (0=R, 1=G, 2=B, -1 for the joint RGB info block) and the index inside
/// that descriptor block.
struct SchemaEntry {
    Family family;
    int level;
    int channel;
    int index;
    std::string name;  // e.g. "bit_L0_R_margalef"
};

/// Deterministic, versioned column layout. With the default 3-level config
/// this is 315 entries: 126 BiT + 117 Haralick + 54 GLCM + 18 info,
/// family-major, then level, then channel.
struct FeatureSchema {
    std::string version;
    int pyramid_levels = 3;
    std::vector<SchemaEntry> entries;

    static FeatureSchema make(const ExtractionConfig& config);

    std::size_t total_dims() const { return entries.size(); }
    std::vector<std::string> column_names() const;
    std::string to_text() const;  // versioned manifest, one column per line
};

struct FeatureVector {
    std::string source_id;
    std::string schema_version;
    std::vector<double> values;
};

/// Runs the full descriptor stack over the per-channel Gaussian pyramid and
/// concatenates in schema order. The image must be at least 8x8.
FeatureVector extract_tio(const RasterImage& img, const ExtractionConfig& config,
                          const std::string& source_id = "");

/// One (family, level, channel) block on its own; channel is ignored for
/// Family::Info. Useful for ablation vectors and cross-checks.
std::vector<double> extract_block(const RasterImage& img,
                                  const ExtractionConfig& config,
                                  Family family, int level, int channel);

/// All blocks of one family over every level/channel, in schema order.
std::vector<double> extract_family(const RasterImage& img,
                                   const ExtractionConfig& config, Family family);

} // namespace texpyr
