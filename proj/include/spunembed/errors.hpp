#pragma once

#include <stdexcept>
#include <string>

namespace spunembed {

/// Signed 128-bit arithmetic left the representable range. Raised instead of
/// wrapping; callers that want wider arithmetic must rescale their input.
class OverflowError : public std::runtime_error {
public:
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// Shape or length mismatch between operands.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A manifest failed validation (bad version, unknown field, wrong type).
class ManifestError : public std::invalid_argument {
public:
    explicit ManifestError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical grid rejected: too coarse for the requested check.
class GridError : public std::runtime_error {
public:
    explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace spunembed
