#pragma once

#include <stdexcept>
#include <string>

namespace scenesmith {

// Base for all recoverable errors raised by the library. what() is always
// "<Kind>: <detail>" so callers (and the CLI, which maps these to exit 2)
// can grep for the kind without RTTI. Anything else escaping main is a bug
// (exit 1).
struct Error : std::runtime_error {
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

  private:
    std::string kind_;
};

struct PointBehindCamera : Error {
    explicit PointBehindCamera(const std::string& msg = "point behind camera")
        : Error("PointBehindCamera", msg) {}
};

struct DegenerateAzimuth : Error {
    explicit DegenerateAzimuth(const std::string& msg = "direction projects to zero on ground plane")
        : Error("DegenerateAzimuth", msg) {}
};

struct InsufficientPoints : Error {
    explicit InsufficientPoints(const std::string& msg = "too few correspondences")
        : Error("InsufficientPoints", msg) {}
};

struct DegenerateConfiguration : Error {
    explicit DegenerateConfiguration(const std::string& msg = "degenerate point configuration")
        : Error("DegenerateConfiguration", msg) {}
};

struct NonConvergence : Error {
    explicit NonConvergence(const std::string& msg = "optimizer failed to converge")
        : Error("NonConvergence", msg) {}
};

struct AllCellsFailed : Error {
    explicit AllCellsFailed(const std::string& msg = "every grid cell failed")
        : Error("AllCellsFailed", msg) {}
};

struct MismatchedDimensions : Error {
    explicit MismatchedDimensions(const std::string& msg = "raster dimensions differ")
        : Error("MismatchedDimensions", msg) {}
};

struct InsufficientFrames : Error {
    explicit InsufficientFrames(const std::string& msg = "need at least 3 frames")
        : Error("InsufficientFrames", msg) {}
};

struct NonPlanarQuad : Error {
    explicit NonPlanarQuad(const std::string& msg = "quad corners are not coplanar")
        : Error("NonPlanarQuad", msg) {}
};

struct MissingGround : Error {
    explicit MissingGround(const std::string& msg = "layout needs exactly one ground plane")
        : Error("MissingGround", msg) {}
};

struct ParseError : Error {
    int line = 0;
    explicit ParseError(const std::string& msg, int line_no = 0)
        : Error("ParseError", msg), line(line_no) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg = "index out of range")
        : Error("IndexOutOfRange", msg) {}
};

struct InvalidParams : Error {
    explicit InvalidParams(const std::string& msg = "invalid parameters")
        : Error("InvalidParams", msg) {}
};

struct ConfigOutOfBounds : Error {
    explicit ConfigOutOfBounds(const std::string& msg = "configuration out of bounds")
        : Error("ConfigOutOfBounds", msg) {}
};

struct UnknownPreset : Error {
    explicit UnknownPreset(const std::string& msg = "unknown preset")
        : Error("UnknownPreset", msg) {}
};

struct InconsistentInputs : Error {
    explicit InconsistentInputs(const std::string& msg = "inputs disagree")
        : Error("InconsistentInputs", msg) {}
};

struct NotPresent : Error {
    explicit NotPresent(const std::string& msg = "id not present")
        : Error("NotPresent", msg) {}
};

struct IoFailure : Error {
    explicit IoFailure(const std::string& msg = "I/O failure") : Error("IoFailure", msg) {}
};

struct InvalidRatio : Error {
    explicit InvalidRatio(const std::string& msg = "split ratio parts must be positive")
        : Error("InvalidRatio", msg) {}
};

struct EmptyInput : Error {
    explicit EmptyInput(const std::string& msg = "empty input") : Error("EmptyInput", msg) {}
};

struct MissingCondition : Error {
    explicit MissingCondition(const std::string& msg = "ablation condition missing")
        : Error("MissingCondition", msg) {}
};

struct UnknownFrame : Error {
    explicit UnknownFrame(const std::string& msg = "frame not in dataset")
        : Error("UnknownFrame", msg) {}
};

}  // namespace scenesmith
