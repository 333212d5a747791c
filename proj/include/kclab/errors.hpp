#pragma once

#include <stdexcept>
#include <string>

namespace kclab {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct FormatError : Error {
    using Error::Error;
};

struct InvalidVertexError : Error {
    using Error::Error;
};

struct DisconnectedGraphError : Error {
    using Error::Error;
};

struct InvalidInstanceError : Error {
    using Error::Error;
};

struct InfeasibleParamsError : Error {
    using Error::Error;
};

struct IndexOutOfRangeError : Error {
    using Error::Error;
};

struct EmptyCenterSetError : Error {
    using Error::Error;
};

struct InvalidScaleError : Error {
    using Error::Error;
};

struct BallTooLargeError : Error {
    using Error::Error;
};

struct BudgetExceededError : Error {
    using Error::Error;
};

} // namespace kclab
