#ifndef GAPDIM_ERRORS_HPP
#define GAPDIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gapdim {

// Input rejected: malformed parameters, broken monotonicity, bad file syntax.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Request is well-formed but cannot be answered within double precision /
// configured resolution limits. Callers should coarsen, not retry.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Parameters lie outside the attainable range (e.g. a target value that no
// admissible construction can reach).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gapdim

#endif  // GAPDIM_ERRORS_HPP
