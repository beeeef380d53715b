#pragma once

#include <stdexcept>
#include <string>

namespace systole {

enum class ErrorKind {
  Domain,          // argument outside the mathematical domain
  Constraint,      // parameter set violates a strict feasibility constraint
  Degenerate,      // bound is meaningless (log argument <= 1)
  OutOfValidity,   // disk model queried outside its radius range
  Infeasible,      // search region is empty
  SearchFailure,   // optimizer found no usable point
  InvalidComplex,  // mesh is not a closed oriented 2-manifold
  NoNontrivialCycle,
  Resource,        // configured size cap exceeded
};

/// Exception carrying an ErrorKind so callers (the CLI in particular) can
/// map failures onto stable exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown when a resource cap is hit part-way through an enumeration.
/// `progress` describes how far the computation got.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::string progress)
      : Error(ErrorKind::Resource, what), progress_(std::move(progress)) {}

  const std::string& progress() const noexcept { return progress_; }

 private:
  std::string progress_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace systole
