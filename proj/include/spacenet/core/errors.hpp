#pragma once

#include <stdexcept>
#include <string>

namespace spacenet {

struct SpacenetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchedulingInPast : SpacenetError {
    using SpacenetError::SpacenetError;
};
struct UnknownCenter : SpacenetError {
    using SpacenetError::SpacenetError;
};
struct UnknownNode : SpacenetError {
    using SpacenetError::SpacenetError;
};
struct InvalidWalkerParams : SpacenetError {
    using SpacenetError::SpacenetError;
};
struct PropagationError : SpacenetError {
    using SpacenetError::SpacenetError;
};
struct TleParseError : SpacenetError {
    using SpacenetError::SpacenetError;
};
struct UnknownLink : SpacenetError {
    using SpacenetError::SpacenetError;
};
struct MalformedLog : SpacenetError {
    using SpacenetError::SpacenetError;
};
struct EmptySelection : SpacenetError {
    using SpacenetError::SpacenetError;
};
struct ConfigError : SpacenetError {
    using SpacenetError::SpacenetError;
};

}  // namespace spacenet
