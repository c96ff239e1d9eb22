#pragma once

#include <stdexcept>
#include <string>

namespace motiflp {

// Bad command-line usage or inconsistent options. CLI exit code 1.
class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or contradictory input data: unparsable edge lists, protocol
// violations (anchor pair on the wrong side of E), sampler exhaustion,
// degenerate training data. CLI exit code 2.
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: non-convergence, NaN/Inf where finite values are
// required, degenerate variance in a test statistic. CLI exit code 3.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace motiflp
