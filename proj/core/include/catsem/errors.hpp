#pragma once

#include <stdexcept>
#include <string>

namespace catsem {

/// Base class for all catsem errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Corpus files and snapshots: unreadable input, malformed snapshot,
/// construction from inconsistent data. CLI exit code 2.
class CorpusError : public Error {
public:
  using Error::Error;
};

/// Queries against a corpus or space: unknown words or expressions,
/// grade mismatches, empty completion sets. CLI exit code 3.
class QueryError : public Error {
public:
  using Error::Error;
};

/// Numeric failures: zero denominators, divergent losses, matrix shape
/// or range violations. CLI exit code 4.
class NumericError : public Error {
public:
  using Error::Error;
};

} // namespace catsem
