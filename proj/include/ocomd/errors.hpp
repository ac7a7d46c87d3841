#ifndef OCOMD_ERRORS_HPP
#define OCOMD_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace ocomd {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct DomainViolation : Error {
  explicit DomainViolation(const std::string& msg) : Error(msg) {}
};

struct UnsupportedCombination : Error {
  explicit UnsupportedCombination(const std::string& msg) : Error(msg) {}
};

// Fallback solver missed its gap target; carries the best iterate found.
struct NonConvergence : Error {
  std::vector<double> best;
  double gap;
  NonConvergence(const std::string& msg, std::vector<double> best_point, double achieved_gap)
      : Error(msg), best(std::move(best_point)), gap(achieved_gap) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

struct NegativeInput : Error {
  explicit NegativeInput(const std::string& msg) : Error(msg) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

struct UnknownModel : Error {
  explicit UnknownModel(const std::string& msg) : Error(msg) {}
};

struct UnknownTheorem : Error {
  explicit UnknownTheorem(const std::string& msg) : Error(msg) {}
};

struct DegenerateInnerProduct : Error {
  explicit DegenerateInnerProduct(const std::string& msg) : Error(msg) {}
};

struct NumericalBreakdown : Error {
  explicit NumericalBreakdown(const std::string& msg) : Error(msg) {}
};

struct InfeasibleDynamics : Error {
  explicit InfeasibleDynamics(const std::string& msg) : Error(msg) {}
};

struct SolverFailure : Error {
  explicit SolverFailure(const std::string& msg) : Error(msg) {}
};

struct DatasetError : Error {
  explicit DatasetError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  int line;
  ParseError(const std::string& msg, int line_no) : Error(msg), line(line_no) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

}  // namespace ocomd

#endif
