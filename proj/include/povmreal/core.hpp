#pragma once

#include <stdexcept>
#include <string>

namespace povmreal {

// Execution mode for the data-parallel kernels (region sweeps, the
// corollary scan, multi-start searches).  Serial is the reference path;
// both must produce bit-identical results.
enum class Exec { serial, parallel };

// Invalid user-facing input: non-physical POVM parameters, matrices that
// fail to be states, dimension mismatches, conditioning on a
// zero-probability outcome.  The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A broken internal invariant (e.g. the two CHSH evaluation routes
// disagree).  The CLI maps these to exit code 1.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace povmreal
