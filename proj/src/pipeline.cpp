#include <texpyr/pipeline.hpp>

#include <texpyr/bitdesc.hpp>
#include <texpyr/cooccur.hpp>
#include <texpyr/infotheory.hpp>
#include <texpyr/pyramid.hpp>

#include <string>

namespace texpyr {

const char* family_name(Family f) {
    switch (f) {
        case Family::Bit: return "bit";
        case Family::Haralick: return "haralick";
        case Family::Glcm: return "glcm";
        case Family::Info: return "info";
    }
    return "?";
}

namespace {

constexpr int kMinExtractSide = 8;

const char* kChannelNames[3] = {"R", "G", "B"};

const char* kBitNames[14] = {
    "margalef", "menhinick", "berger_parker", "fisher_alpha",
    "kempton_taylor_q", "mcintosh", "shannon_wiener", "taxo_diversity",
    "taxo_distinctness", "sum_phylo_dist", "avg_nn_dist",
    "intensive_quad_entropy", "extensive_quad_entropy", "total_taxo_distinctness"};

const char* kHaralickNames[13] = {
    "asm", "contrast", "correlation", "variance", "idm", "sum_average",
    "sum_variance", "sum_entropy", "entropy", "difference_variance",
    "difference_entropy", "info_corr_1", "info_corr_2"};

const char* kGlcmNames[6] = {"contrast", "dissimilarity", "homogeneity",
                             "energy", "correlation", "asm"};

const char* kInfoNames[6] = {"entropy_r", "entropy_g", "entropy_b",
                             "mi_rg", "mi_rb", "mi_gb"};

int block_size(Family f) {
    switch (f) {
        case Family::Bit: return 14;
        case Family::Haralick: return 13;
        case Family::Glcm: return 6;
        case Family::Info: return 6;
    }
    return 0;
}

const char* block_entry_name(Family f, int index) {
    switch (f) {
        case Family::Bit: return kBitNames[index];
        case Family::Haralick: return kHaralickNames[index];
        case Family::Glcm: return kGlcmNames[index];
        case Family::Info: return kInfoNames[index];
    }
    return "?";
}

void validate_config(const ExtractionConfig& config) {
    if (config.pyramid_levels < 1) {
        throw InvalidLevelCount("extract: pyramid_levels must be >= 1, got " +
                                std::to_string(config.pyramid_levels));
    }
    if (config.glcm_levels < 2 || config.glcm_levels > 256) {
        throw InvalidLevelCount("extract: glcm_levels must be in [2, 256], got " +
                                std::to_string(config.glcm_levels));
    }
    if (config.glcm_distance < 1) {
        throw InvalidArgument("extract: glcm_distance must be >= 1, got " +
                              std::to_string(config.glcm_distance));
    }
}

// Per-level 8-bit planes of the per-channel Gaussian pyramids.
std::vector<std::array<GrayImage, 3>>
pyramid_planes(const RasterImage& img, const ExtractionConfig& config) {
    validate_config(config);
    if (img.width < kMinExtractSide || img.height < kMinExtractSide) {
        throw ImageTooSmall("extract: image must be at least 8x8, got " +
                            std::to_string(img.width) + "x" +
                            std::to_string(img.height));
    }
    const std::array<GrayImage, 3> channels = split_channels(img);

    std::vector<std::array<GrayImage, 3>> out(
        static_cast<std::size_t>(config.pyramid_levels));
    for (int c = 0; c < 3; ++c) {
        const std::vector<FloatImage> gp =
            build_gaussian_pyramid(to_float(channels[c]), config.pyramid_levels);
        for (int l = 0; l < config.pyramid_levels; ++l) {
            out[l][c] = to_gray8(gp[l]);
        }
    }
    return out;
}

std::string block_context(const std::string& source_id, Family family, int level,
                          int channel) {
    std::string ctx = source_id.empty() ? std::string("extract") : source_id;
    ctx += ": ";
    ctx += family_name(family);
    ctx += " L" + std::to_string(level);
    if (family != Family::Info && channel >= 0 && channel < 3) {
        ctx += std::string(" ") + kChannelNames[channel];
    }
    return ctx;
}

} // namespace

FeatureSchema FeatureSchema::make(const ExtractionConfig& config) {
    validate_config(config);
    FeatureSchema schema;
    schema.version = config.schema_version;
    schema.pyramid_levels = config.pyramid_levels;

    for (Family family : {Family::Bit, Family::Haralick, Family::Glcm}) {
        for (int l = 0; l < config.pyramid_levels; ++l) {
            for (int c = 0; c < 3; ++c) {
                for (int k = 0; k < block_size(family); ++k) {
                    SchemaEntry e;
                    e.family = family;
                    e.level = l;
                    e.channel = c;
                    e.index = k;
                    e.name = std::string(family_name(family)) + "_L" +
                             std::to_string(l) + "_" + kChannelNames[c] + "_" +
                             block_entry_name(family, k);
                    schema.entries.push_back(std::move(e));
                }
            }
        }
    }
    for (int l = 0; l < config.pyramid_levels; ++l) {
        for (int k = 0; k < block_size(Family::Info); ++k) {
            SchemaEntry e;
            e.family = Family::Info;
            e.level = l;
            e.channel = -1;
            e.index = k;
            e.name = std::string("info_L") + std::to_string(l) + "_" +
                     block_entry_name(Family::Info, k);
            schema.entries.push_back(std::move(e));
        }
    }
    return schema;
}

std::vector<std::string> FeatureSchema::column_names() const {
    std::vector<std::string> names;
    names.reserve(entries.size());
    for (const SchemaEntry& e : entries) names.push_back(e.name);
    return names;
}

std::string FeatureSchema::to_text() const {
    std::string out = "schema " + version + "\n";
    out += "pyramid_levels " + std::to_string(pyramid_levels) + "\n";
    out += "dims " + std::to_string(entries.size()) + "\n";
    for (const SchemaEntry& e : entries) {
        out += e.name;
        out += '\n';
    }
    return out;
}

FeatureVector extract_tio(const RasterImage& img, const ExtractionConfig& config,
                          const std::string& source_id) {
    const std::vector<std::array<GrayImage, 3>> planes = pyramid_planes(img, config);
    const int levels = config.pyramid_levels;

    // Texture statistics for the Haralick and GLCM families come from the
    // same per-direction matrices; compute them once per (level, channel).
    std::vector<std::array<std::array<double, 14>, 3>> bit(levels);
    std::vector<std::array<std::array<double, 13>, 3>> haralick(levels);
    std::vector<std::array<std::array<double, 6>, 3>> glcm(levels);
    std::vector<std::array<double, 6>> info(levels);

    for (int l = 0; l < levels; ++l) {
        for (int c = 0; c < 3; ++c) {
            try {
                bit[l][c] = bit_block(planes[l][c]).as_array();
            } catch (const Error& e) {
                throw Error(block_context(source_id, Family::Bit, l, c) + ": " + e.what());
            }
            try {
                const auto [gf, hf] = texture_features_gray(
                    planes[l][c], config.glcm_levels, config.glcm_distance);
                glcm[l][c] = gf.as_array();
                haralick[l][c] = hf.as_array();
            } catch (const Error& e) {
                throw Error(block_context(source_id, Family::Glcm, l, c) + ": " + e.what());
            }
        }
        try {
            info[l] = info_block(planes[l][0], planes[l][1], planes[l][2]);
        } catch (const Error& e) {
            throw Error(block_context(source_id, Family::Info, l, -1) + ": " + e.what());
        }
    }

    const FeatureSchema schema = FeatureSchema::make(config);
    FeatureVector v;
    v.source_id = source_id;
    v.schema_version = config.schema_version;
    v.values.reserve(schema.entries.size());
    for (const SchemaEntry& e : schema.entries) {
        double value = 0.0;
        switch (e.family) {
            case Family::Bit: value = bit[e.level][e.channel][e.index]; break;
            case Family::Haralick: value = haralick[e.level][e.channel][e.index]; break;
            case Family::Glcm: value = glcm[e.level][e.channel][e.index]; break;
            case Family::Info: value = info[e.level][e.index]; break;
        }
        v.values.push_back(value);
    }
    return v;
}

std::vector<double> extract_block(const RasterImage& img,
                                  const ExtractionConfig& config,
                                  Family family, int level, int channel) {
    if (level < 0 || level >= config.pyramid_levels) {
        throw InvalidArgument("extract_block: level " + std::to_string(level) +
                              " outside [0, " + std::to_string(config.pyramid_levels) + ")");
    }
    if (family != Family::Info && (channel < 0 || channel > 2)) {
        throw InvalidArgument("extract_block: channel " + std::to_string(channel) +
                              " outside [0, 3)");
    }
    const std::vector<std::array<GrayImage, 3>> planes = pyramid_planes(img, config);
    const std::array<GrayImage, 3>& p = planes[static_cast<std::size_t>(level)];

    switch (family) {
        case Family::Bit: {
            const auto a = bit_block(p[channel]).as_array();
            return std::vector<double>(a.begin(), a.end());
        }
        case Family::Haralick: {
            const auto a = texture_features_gray(p[channel], config.glcm_levels,
                                                 config.glcm_distance)
                               .second.as_array();
            return std::vector<double>(a.begin(), a.end());
        }
        case Family::Glcm: {
            const auto a = texture_features_gray(p[channel], config.glcm_levels,
                                                 config.glcm_distance)
                               .first.as_array();
            return std::vector<double>(a.begin(), a.end());
        }
        case Family::Info: {
            const auto a = info_block(p[0], p[1], p[2]);
            return std::vector<double>(a.begin(), a.end());
        }
    }
    throw InvalidArgument("extract_block: unknown family");
}

std::vector<double> extract_family(const RasterImage& img,
                                   const ExtractionConfig& config, Family family) {
    const std::vector<std::array<GrayImage, 3>> planes = pyramid_planes(img, config);
    std::vector<double> out;
    for (int l = 0; l < config.pyramid_levels; ++l) {
        if (family == Family::Info) {
            const auto a = info_block(planes[l][0], planes[l][1], planes[l][2]);
            out.insert(out.end(), a.begin(), a.end());
            continue;
        }
        for (int c = 0; c < 3; ++c) {
            switch (family) {
                case Family::Bit: {
                    const auto a = bit_block(planes[l][c]).as_array();
                    out.insert(out.end(), a.begin(), a.end());
                    break;
                }
                case Family::Haralick: {
                    const auto a = texture_features_gray(planes[l][c], config.glcm_levels,
                                                         config.glcm_distance)
                                       .second.as_array();
                    out.insert(out.end(), a.begin(), a.end());
                    break;
                }
                case Family::Glcm: {
                    const auto a = texture_features_gray(planes[l][c], config.glcm_levels,
                                                         config.glcm_distance)
                                       .first.as_array();
                    out.insert(out.end(), a.begin(), a.end());
                    break;
                }
                case Family::Info: break;
            }
        }
    }
    return out;
}

} // namespace texpyr
