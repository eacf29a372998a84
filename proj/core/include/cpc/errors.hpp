#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpc {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error("syntax error at offset " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownSymbol : public Error {
 public:
  UnknownSymbol(std::size_t position, const std::string& symbol)
      : Error("unknown symbol '" + symbol + "' at offset " + std::to_string(position)),
        position_(position),
        symbol_(symbol) {}
  std::size_t position() const { return position_; }
  const std::string& symbol() const { return symbol_; }

 private:
  std::size_t position_;
  std::string symbol_;
};

class IndexOutOfRange : public Error {
 public:
  IndexOutOfRange(std::size_t position, int index, int dim)
      : Error("coordinate x" + std::to_string(index) + " at offset " + std::to_string(position) +
              " out of range for dimension " + std::to_string(dim)),
        position_(position),
        index_(index) {}
  std::size_t position() const { return position_; }
  int index() const { return index_; }

 private:
  std::size_t position_;
  int index_;
};

/// Raised while evaluating an expression outside its domain (log/sqrt of a
/// non-positive value, division by zero, singular power).
class DomainError : public Error {
 public:
  DomainError(const std::string& message, const std::string& subexpression)
      : Error(message + " in '" + subexpression + "'"), subexpression_(subexpression) {}
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

class NotSPD : public Error {
 public:
  NotSPD(std::vector<double> point, int minor)
      : Error("metric not positive definite (leading minor " + std::to_string(minor) + ")"),
        point_(std::move(point)),
        minor_(minor) {}
  const std::vector<double>& point() const { return point_; }
  int minor() const { return minor_; }

 private:
  std::vector<double> point_;
  int minor_;
};

class DegeneratePlane : public Error {
 public:
  using Error::Error;
};

class UnknownField : public Error {
 public:
  explicit UnknownField(const std::string& name) : Error("unknown field '" + name + "'") {}
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class NotDecomposable : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class MissingParams : public Error {
 public:
  using Error::Error;
};

class UnknownZooEntry : public Error {
 public:
  explicit UnknownZooEntry(const std::string& name) : Error("unknown zoo entry '" + name + "'") {}
};

/// Malformed manifold spec file; carries the 1-based line number.
class SpecFormatError : public Error {
 public:
  SpecFormatError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace cpc
