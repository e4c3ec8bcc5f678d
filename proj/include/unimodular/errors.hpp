#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ul {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An integer argument (window length, family size, degree) is outside its admissible range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Mathematical domain violation, e.g. a Legendre symbol modulo a composite.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The polynomial does not have the structure an operation requires
/// (self-reciprocity, degree parity).
class StructureError : public Error {
public:
    using Error::Error;
};

/// Input is identically zero where a nonzero polynomial is needed.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Input exceeds a capacity cap of the exact pipeline or of exhaustive enumeration.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A stated precondition does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed serialized input. `offset()` is the byte offset (or coefficient
/// position, for inline lists) where parsing failed.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t offset)
        : Error(what + " (at offset " + std::to_string(offset) + ")"), reason_(what), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }
    /// Message without the offset suffix.
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
    std::size_t offset_;
};

} // namespace ul
