#pragma once

#include <stdexcept>
#include <string>

namespace asep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A truncated infinite product or sum hit its term cap before reaching the
/// requested tolerance.
class TruncationNotConverged : public Error {
 public:
  using Error::Error;
};

/// Enumeration requested beyond the configured combinatorial guard.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

/// A lattice window is too narrow for the frozen-outside convention to hold.
class WindowTooNarrow : public Error {
 public:
  using Error::Error;
};

/// A Gillespie step was requested in a state with zero total rate.
class AbsorbingState : public Error {
 public:
  using Error::Error;
};

/// A label refers to a particle that is not inside the simulated window.
class LabelOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Second-class particles reached the window margin too often.
class BoundaryContamination : public Error {
 public:
  using Error::Error;
};

}  // namespace asep
