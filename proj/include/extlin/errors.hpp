#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace extlin {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class VariantMismatch : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Shape or type mismatch when composing/combining maps.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A construction-time law check failed (group laws, functoriality, d^2 = 0, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Input outside the finitely computable regime.
class Unsupported : public Error {
public:
    using Error::Error;
};

/// Malformed serialized input; `path` points at the offending field.
class SchemaError : public Error {
public:
    SchemaError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace extlin
