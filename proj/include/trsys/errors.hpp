#pragma once

#include <stdexcept>
#include <string>

namespace trsys {

// Error categories surfaced to callers. The message always names the
// failing precondition.
enum class ErrorKind {
  Domain,            // invalid value for the operation
  Precondition,      // caller broke a stated contract
  Resource,          // configured size or cap exceeded
  UnsupportedPrime,  // the construction needs p, q >= 5
  StarViolation,     // a required non-zero multiple is missing
  Internal,          // an invariant the library maintains itself failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace trsys
