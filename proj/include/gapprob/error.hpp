#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gapprob {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind {
    invalid_argument = 1,
    coverage = 2,
    resource = 2,
    verification = 3,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

// A query or construction step needed a value beyond the sieved limit.
class CoverageError : public Error {
public:
    CoverageError(const std::string& what, std::uint64_t required)
        : Error(ErrorKind::coverage, what), required_(required) {}
    std::uint64_t required() const noexcept { return required_; }

private:
    std::uint64_t required_;
};

class ResourceError : public Error {
public:
    ResourceError(const std::string& what, std::uint64_t required_bytes)
        : Error(ErrorKind::resource, what), required_bytes_(required_bytes) {}
    std::uint64_t required_bytes() const noexcept { return required_bytes_; }

private:
    std::uint64_t required_bytes_;
};

// Fewer sequence terms could be certified than were requested.
class IncompleteResult : public Error {
public:
    IncompleteResult(const std::string& what, std::uint64_t certified)
        : Error(ErrorKind::coverage, what), certified_(certified) {}
    std::uint64_t certified() const noexcept { return certified_; }

private:
    std::uint64_t certified_;
};

// No prime strictly between b and m*b.
class ChainStall : public Error {
public:
    ChainStall(const std::string& what, std::uint64_t at) : Error(ErrorKind::invalid_argument, what), at_(at) {}
    std::uint64_t at() const noexcept { return at_; }

private:
    std::uint64_t at_;
};

}  // namespace gapprob
