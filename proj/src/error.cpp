#include "systole/error.hpp"

namespace systole {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Constraint: return "constraint error";
    case ErrorKind::Degenerate: return "degenerate bound";
    case ErrorKind::OutOfValidity: return "out-of-validity error";
    case ErrorKind::Infeasible: return "infeasible region";
    case ErrorKind::SearchFailure: return "search failure";
    case ErrorKind::InvalidComplex: return "invalid complex";
    case ErrorKind::NoNontrivialCycle: return "no nontrivial cycle";
    case ErrorKind::Resource: return "resource limit";
  }
  return "error";
}

}  // namespace systole
