#ifndef LINDFOREST_ERRORS_HPP
#define LINDFOREST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lindforest {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct NotGPM : Error {
    explicit NotGPM(const std::string& msg) : Error(msg) {}
};

struct MethodDisagreement : Error {
    explicit MethodDisagreement(const std::string& msg) : Error(msg) {}
};

struct RankMismatch : Error {
    explicit RankMismatch(const std::string& msg) : Error(msg) {}
};

struct NotInLeftKernel : Error {
    explicit NotInLeftKernel(const std::string& msg) : Error(msg) {}
};

struct NonUniformRelation : Error {
    explicit NonUniformRelation(const std::string& msg) : Error(msg) {}
};

struct StabilityGuard : Error {
    explicit StabilityGuard(const std::string& msg) : Error(msg) {}
};

struct NonPhysicalState : Error {
    explicit NonPhysicalState(const std::string& msg) : Error(msg) {}
};

struct SearchSpaceExceeded : Error {
    explicit SearchSpaceExceeded(const std::string& msg) : Error(msg) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace lindforest

#endif
