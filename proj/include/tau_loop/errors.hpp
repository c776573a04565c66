#pragma once

#include <stdexcept>
#include <string>

namespace tauloop {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// exact arithmetic layer
struct IndexOutOfRange : Error { using Error::Error; };

// commutative algebra layer
struct AmbientMismatch : Error { using Error::Error; };
struct NotAnIdeal : Error { using Error::Error; };
struct NotSemisimple : Error { using Error::Error; };
struct SplitFieldRequired : Error { using Error::Error; };
struct ImproperIdeal : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };

// loop algebra layer
struct AlgebraMismatch : Error { using Error::Error; };

// module layer; TruncationError means "not representable in this box", never a wrong value
struct TruncationError : Error { using Error::Error; };
struct BoxTooSmall : Error { using Error::Error; };

// front end
struct InputError : Error { using Error::Error; };

} // namespace tauloop
