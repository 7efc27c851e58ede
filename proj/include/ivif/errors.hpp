#pragma once

#include <stdexcept>

namespace ivif {

/// Root of the library's exception hierarchy.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad input data: malformed numbers, models, or arguments.
struct ValidationError : Error {
  using Error::Error;
};

/// A spread came out negative where a fuzzy number requires >= 0.
struct SpreadNegative : ValidationError {
  using ValidationError::ValidationError;
};

/// The four supports of a fuzzy number fail to nest.
struct NestingViolated : ValidationError {
  using ValidationError::ValidationError;
};

/// Arithmetic or comparison between numbers carrying different shapes.
struct ShapeMismatch : ValidationError {
  using ValidationError::ValidationError;
};

/// A cut level or similar scalar argument fell outside its domain.
struct OutOfRange : ValidationError {
  using ValidationError::ValidationError;
};

/// Abscissas handed to the triangular closed forms are not sorted.
struct OrderingViolated : ValidationError {
  using ValidationError::ValidationError;
};

/// Malformed document: bad JSON syntax or schema (missing/mistyped fields).
struct ParseError : ValidationError {
  using ValidationError::ValidationError;
};

/// Vector lengths disagree with the declared variables.
struct DimensionMismatch : ValidationError {
  using ValidationError::ValidationError;
};

/// No feasible point exists (already at the first lexicographic stage).
struct Infeasible : Error {
  using Error::Error;
};

/// Every enumerated branch was infeasible at some stage. At stage 1 this is
/// the problem being infeasible; later stages indicate numeric trouble with
/// the carried optima.
struct AllBranchesInfeasible : Infeasible {
  int stage;
  explicit AllBranchesInfeasible(int s, const std::string& msg)
      : Infeasible(msg), stage(s) {}
};

/// A stage LP is unbounded; `stage` is 1-based (stage 1 means the whole
/// problem is unbounded in the leading key component).
struct Unbounded : Error {
  int stage;
  explicit Unbounded(int s, const std::string& msg) : Error(msg), stage(s) {}
};

/// A product term whose min/max selection depends on variable magnitudes,
/// not just signs; the region it induces is not polyhedral.
struct UnresolvedSelection : Error {
  using Error::Error;
};

/// The sign/class/pattern enumeration exceeded the configured cap.
struct BranchBudgetExceeded : Error {
  using Error::Error;
};

/// The simplex lost numeric footing (cycling or degenerate pivots beyond
/// recovery).
struct NumericalBreakdown : Error {
  using Error::Error;
};

}  // namespace ivif
