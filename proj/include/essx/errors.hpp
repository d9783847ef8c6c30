#pragma once

#include <stdexcept>
#include <string>

namespace essx {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// A matrix that does not carry relators into the codomain relation span.
struct NotAMorphism : Error {
    using Error::Error;
};

struct NotMonic : Error {
    using Error::Error;
};

struct InfiniteModule : Error {
    using Error::Error;
};

struct NotESplit : Error {
    using Error::Error;
};

struct HypothesisFailed : Error {
    explicit HypothesisFailed(const std::string& which)
        : Error("hypothesis failed: " + which), hypothesis(which) {}
    std::string hypothesis;
};

struct ZeroIdeal : Error {
    using Error::Error;
};

struct NotAComplexAt : Error {
    explicit NotAComplexAt(long long deg)
        : Error("differentials do not compose to zero at degree " + std::to_string(deg)), degree(deg) {}
    long long degree;
};

struct NotEExactResolution : Error {
    NotEExactResolution(long long pos, const std::string& why)
        : Error("resolution is not e-exact at position " + std::to_string(pos) + ": " + why),
          position(pos) {}
    long long position;
};

struct ZigZagObstruction : Error {
    explicit ZigZagObstruction(long long deg, const std::string& why)
        : Error("connecting map obstruction at degree " + std::to_string(deg) + ": " + why),
          degree(deg) {}
    long long degree;
};

struct PreconditionFailed : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

}  // namespace essx
