#pragma once

#include <stdexcept>
#include <string>

namespace rst {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GraphError : public Error {
 public:
  enum class Kind { Parse, SelfLoop, DuplicateEdge, Disconnected, OutOfRange };

  GraphError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Bad parameters or malformed decomposition documents.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  enum class Kind { Singular, NonConvergence, Normalization };

  SolverError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Transition table lookups for vertices without a row.
class TableError : public Error {
 public:
  using Error::Error;
};

/// Partial forests and arborescences that violate their invariants.
class ForestError : public Error {
 public:
  using Error::Error;
};

class OracleError : public Error {
 public:
  using Error::Error;
};

}  // namespace rst
