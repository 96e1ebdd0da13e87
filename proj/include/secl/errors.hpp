#pragma once

#include <stdexcept>
#include <string>

namespace secl {

// Base class for every domain error raised by the library. Anything derived
// from Error is a validation/input problem; other exceptions are bugs.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A PD term structure whose implied conditional PDs leave [0,1] or whose
// survival probability hits zero before the final period.
class InfeasibleTermStructure : public Error {
 public:
  using Error::Error;
};

class NonFiniteDelta : public Error {
 public:
  using Error::Error;
};

class UnknownBucket : public Error {
 public:
  using Error::Error;
};

class UnknownScenario : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class MismatchedExposure : public Error {
 public:
  using Error::Error;
};

class EmptyBucket : public Error {
 public:
  using Error::Error;
};

class DegenerateSystem : public Error {
 public:
  using Error::Error;
};

class InconsistentBucket : public Error {
 public:
  using Error::Error;
};

// File-level problem: unreadable file, missing or wrong header.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& msg)
      : Error(path + ": " + msg), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Row-level problem, addressed by 1-based data row number and column name.
class RowError : public Error {
 public:
  RowError(const std::string& path, int row, const std::string& column,
           const std::string& msg)
      : Error(path + ": row " + std::to_string(row) + ", column " + column +
              ": " + msg),
        path_(path),
        row_(row),
        column_(column) {}

  const std::string& path() const { return path_; }
  int row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  std::string path_;
  int row_;
  std::string column_;
};

class UnknownCategory : public RowError {
 public:
  using RowError::RowError;
};

}  // namespace secl
