#pragma once

#include <stdexcept>
#include <string>

namespace texpyr {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define TEXPYR_ERROR_TYPE(NAME)                                        \
    class NAME : public Error {                                        \
    public:                                                            \
        explicit NAME(const std::string& msg) : Error(msg) {}          \
    }

// imagecore
TEXPYR_ERROR_TYPE(DecodeError);
TEXPYR_ERROR_TYPE(UnsupportedFormat);
TEXPYR_ERROR_TYPE(ChannelCountError);
TEXPYR_ERROR_TYPE(DimensionMismatch);
TEXPYR_ERROR_TYPE(InvalidLevelCount);

// pyramid
TEXPYR_ERROR_TYPE(ImageTooSmall);
TEXPYR_ERROR_TYPE(InvalidTargetSize);

// cooccur
TEXPYR_ERROR_TYPE(OffsetOutOfRange);
TEXPYR_ERROR_TYPE(EmptyPairSet);
TEXPYR_ERROR_TYPE(NotNormalized);

// infotheory / bitdesc
TEXPYR_ERROR_TYPE(EmptyImage);
TEXPYR_ERROR_TYPE(DegenerateAbundance);

// dataset
TEXPYR_ERROR_TYPE(EmptyCorpus);
TEXPYR_ERROR_TYPE(UnreadableDirectory);
TEXPYR_ERROR_TYPE(ClassTooSmall);
TEXPYR_ERROR_TYPE(EmptySet);
TEXPYR_ERROR_TYPE(SchemaMismatch);

// classify
TEXPYR_ERROR_TYPE(SingularCovariance);
TEXPYR_ERROR_TYPE(DegenerateClass);
TEXPYR_ERROR_TYPE(EmptyTrainSet);
TEXPYR_ERROR_TYPE(EmptyTestSet);

// generic misuse of an API contract
TEXPYR_ERROR_TYPE(InvalidArgument);

#undef TEXPYR_ERROR_TYPE

} // namespace texpyr
