// Error taxonomy shared by the whole workbench. Each kind maps onto a stable
// process exit code so scripted callers can dispatch on failure class.
#pragma once

#include <stdexcept>
#include <string>

namespace dqi {

enum class ErrorKind {
    parameter = 2,  // bad arguments, shape mismatches, contract violations
    capacity = 3,   // an enumeration / budget limit was exceeded
    numeric = 4,    // convergence failure or numerically meaningless request
    validation = 5, // a cross-check gate failed
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_parameter(const std::string& what) {
    throw Error(ErrorKind::parameter, what);
}
[[noreturn]] inline void throw_capacity(const std::string& what) {
    throw Error(ErrorKind::capacity, what);
}
[[noreturn]] inline void throw_numeric(const std::string& what) {
    throw Error(ErrorKind::numeric, what);
}
[[noreturn]] inline void throw_validation(const std::string& what) {
    throw Error(ErrorKind::validation, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) throw Error(kind, what);
}

} // namespace dqi
