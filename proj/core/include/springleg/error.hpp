#pragma once

#include <stdexcept>
#include <string>

namespace springleg {

/// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorKind {
  Domain,         // argument outside the physical range of a relation
  Configuration,  // invalid or inconsistent configuration
  Usage,          // bad command-line usage
  Data,           // malformed or inconsistent measured data
  Stall,          // no spring compression possible under the force cap
  Infeasible,     // request cannot be satisfied by the mechanism
  Geometry,       // posture outside the leg's range of motion
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace springleg
