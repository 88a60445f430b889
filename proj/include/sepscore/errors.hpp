#pragma once

#include <stdexcept>
#include <string>

namespace sepscore {

/// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or unusable input: files, matrices, labels, manifests.
struct DataError : Error {
    using Error::Error;
};

/// Well-formed input on which the requested computation cannot proceed.
struct ComputeError : Error {
    using Error::Error;
};

struct NonFiniteError : DataError {
    using DataError::DataError;
};
struct DegenerateLabelsError : DataError {
    using DataError::DataError;
};
struct EmptyGroupError : DataError {
    using DataError::DataError;
};
struct UnknownLabelError : DataError {
    using DataError::DataError;
};
struct ParseError : DataError {
    using DataError::DataError;
};
struct MissingLabelColumnError : DataError {
    using DataError::DataError;
};
struct GroupTooSmallError : DataError {
    using DataError::DataError;
};
struct ZeroSumError : DataError {
    using DataError::DataError;
};
struct NegativeInputForLogError : DataError {
    using DataError::DataError;
};
struct OutOfRangePError : DataError {
    using DataError::DataError;
};
struct ManifestError : DataError {
    using DataError::DataError;
};

struct EmptySubsetError : ComputeError {
    using ComputeError::ComputeError;
};
struct EmptyGroupInputError : ComputeError {
    using ComputeError::ComputeError;
};
struct CoincidentCentroidsError : ComputeError {
    using ComputeError::ComputeError;
};
struct ConstantRowError : ComputeError {
    using ComputeError::ComputeError;
};
struct RankDeficientError : ComputeError {
    using ComputeError::ComputeError;
};
struct DegenerateTriangleError : ComputeError {
    using ComputeError::ComputeError;
};

}  // namespace sepscore
