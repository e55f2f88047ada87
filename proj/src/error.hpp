#pragma once

#include <stdexcept>
#include <string>

namespace tikm {

// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
    config,
    dimension,
    empty_set,
    parse,
    io,
    state,
    domain,
    plan,
    internal,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

struct ConfigError : Error {
    explicit ConfigError(std::string m) : Error(ErrorCode::config, std::move(m)) {}
};
struct DimensionError : Error {
    explicit DimensionError(std::string m) : Error(ErrorCode::dimension, std::move(m)) {}
};
struct EmptySetError : Error {
    explicit EmptySetError(std::string m) : Error(ErrorCode::empty_set, std::move(m)) {}
};
struct ParseError : Error {
    explicit ParseError(std::string m) : Error(ErrorCode::parse, std::move(m)) {}
};
struct IoError : Error {
    explicit IoError(std::string m) : Error(ErrorCode::io, std::move(m)) {}
};
struct StateError : Error {
    explicit StateError(std::string m) : Error(ErrorCode::state, std::move(m)) {}
};
struct DomainError : Error {
    explicit DomainError(std::string m) : Error(ErrorCode::domain, std::move(m)) {}
};
struct PlanError : Error {
    explicit PlanError(std::string m) : Error(ErrorCode::plan, std::move(m)) {}
};
struct InternalError : Error {
    explicit InternalError(std::string m) : Error(ErrorCode::internal, std::move(m)) {}
};

} // namespace tikm
