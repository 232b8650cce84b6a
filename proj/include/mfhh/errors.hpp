#ifndef MFHH_ERRORS_HPP
#define MFHH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mfhh {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// wpoly
struct NoWeightSystem : Error { using Error::Error; };
struct AmbiguousWeightSystem : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct NonPolynomialSeries : Error { using Error::Error; };
struct NotIsolated : Error { using Error::Error; };

// symmetry
struct RankNotOne : Error { using Error::Error; };
struct GradingElementMissing : Error { using Error::Error; };
struct InfiniteKernel : Error { using Error::Error; };

// koszul / hochschild
struct DegreeConventionUnvalidated : Error { using Error::Error; };
struct CalibrationFailed : Error { using Error::Error; };
struct NonFiniteRow : Error { using Error::Error; };

// unfolding
struct UnknownParameter : Error { using Error::Error; };

// trivext
struct TruncationExceeded : Error { using Error::Error; };

// specseq
struct MissingStratum : Error { using Error::Error; };
struct InsufficientColumns : Error { using Error::Error; };

// cli / io
struct SchemaError : Error { using Error::Error; };

}  // namespace mfhh

#endif
