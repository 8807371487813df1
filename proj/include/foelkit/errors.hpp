#pragma once

#include <stdexcept>
#include <string>

namespace foel {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested dense construction exceeds the configured Hilbert-space limit.
struct DimensionTooLarge : Error {
  using Error::Error;
};

/// Total spin S has zero multiplicity for the given chain.
struct NotAdmissible : Error {
  using Error::Error;
};

/// Arc diagram does not match the chain it is used with.
struct InconsistentDiagram : Error {
  using Error::Error;
};

/// Increment step incompatible with the diagram or chain it is applied to.
struct InvalidStep : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// Iterative eigensolver exhausted its iteration budget.
struct NoConvergence : Error {
  using Error::Error;
};

/// Operation requires an all-spin-1/2 chain.
struct UnsupportedSpin : Error {
  using Error::Error;
};

/// Second chain is not an end-extension of the first.
struct InvalidExtension : Error {
  using Error::Error;
};

/// Malformed chain-spec file or report; message carries the field location.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace foel
