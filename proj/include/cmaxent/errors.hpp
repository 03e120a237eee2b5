#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cmaxent {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sizes or lengths of inputs do not agree.
class InputShapeError : public Error {
 public:
  using Error::Error;
};

/// A Fourier series violates conjugate symmetry.
class InvalidSeriesError : public Error {
 public:
  using Error::Error;
};

/// Adaptive fitting hit the grid-size cap without meeting the tail rule.
class NonResolvableError : public Error {
 public:
  NonResolvableError(const std::string& what, double tail_ratio)
      : Error(what), tail_ratio_(tail_ratio) {}
  double tail_ratio() const noexcept { return tail_ratio_; }

 private:
  double tail_ratio_;
};

/// Requested moment order exceeds what the sampling resolution supports.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class EmptyMeasureError : public Error {
 public:
  using Error::Error;
};

/// A moment sequence is malformed (e.g. complex zeroth moment).
class InvalidSequenceError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Phase moments whose zeroth entry is not pi/2.
class InvalidPhaseError : public Error {
 public:
  using Error::Error;
};

/// Formal series whose constant term is not 1.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Exponent of the maximum-entropy ansatz left the representable range.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Raised by the solver when no trial point of a line search is finite; carries
/// the parameters of the last iterate whose objective was finite.
class SolverDivergenceError : public DivergenceError {
 public:
  SolverDivergenceError(const std::string& what, std::vector<double> last_parameters)
      : DivergenceError(what), last_parameters_(std::move(last_parameters)) {}
  const std::vector<double>& last_parameters() const noexcept { return last_parameters_; }

 private:
  std::vector<double> last_parameters_;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Failure inside one stage of a reconstruction pipeline.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace cmaxent
