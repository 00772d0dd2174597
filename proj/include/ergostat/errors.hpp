#pragma once

#include <stdexcept>
#include <string>

namespace ergostat {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument is outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The operation is well-posed but not supported for this input shape
/// (e.g. a refined evaluation on a modulus without a factorization).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// A caller-side precondition was violated; test oracles must fail loudly
/// rather than silently skip.
class ContractError : public Error {
public:
    using Error::Error;
};

/// A configured cap (trajectory length, search limit, memory) was exceeded.
class CapExceededError : public Error {
public:
    using Error::Error;
};

/// Malformed spec string / config input.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace ergostat
