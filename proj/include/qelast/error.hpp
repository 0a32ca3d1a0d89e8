#pragma once

#include <stdexcept>
#include <string>

namespace qelast {

enum class ErrorKind {
    qubit_out_of_range,
    dimension_mismatch,
    invalid_argument,
    postselection_failure,
    fit_failure,
    config,
    inadmissible,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &msg) {
    throw Error(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string &msg) {
    if (!cond)
        fail(kind, msg);
}

} // namespace qelast
