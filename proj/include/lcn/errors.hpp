#pragma once

#include <stdexcept>
#include <string>

namespace lcn {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (point off the
/// surface, coincident kernel arguments, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid or over-budget configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Projection onto the surface failed: the requested tangent-plane point
/// does not lie over the Lyapunov patch.
class PatchError : public Error {
 public:
  using Error::Error;
};

/// A quadrature could not reach the requested accuracy within its budget.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Partition-of-unity support audit failed.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Local moment matrix is not uniformly invertible at a point.
class MomentSystemError : public Error {
 public:
  using Error::Error;
};

/// Kernel fails a regularity check (non-convergent polar limit).
class KernelRegularityError : public Error {
 public:
  using Error::Error;
};

/// Dense Nyström matrix is numerically singular.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Brute-force reference evaluation could not reach its tolerance.
class OracleError : public Error {
 public:
  using Error::Error;
};

/// A convergence-study stage failed; carries the mesh level.
class LevelError : public Error {
 public:
  LevelError(int level, const std::string& what)
      : Error("level " + std::to_string(level) + ": " + what), level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

}  // namespace lcn
