#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lakc {

// Base class for everything this library throws on purpose.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Inconsistent array shapes (dimension mismatch, length mismatch).
class shape_error : public error {
  public:
    using error::error;
};

// Parameter outside its mathematical domain (alpha >= 1/2, delta outside (0,1), k > m, ...).
class domain_error : public error {
  public:
    using error::error;
};

// An operation that needs at least one point per cluster saw an empty cluster.
class empty_cluster_error : public error {
  public:
    using error::error;
};

// Window width outside [1, n].
class width_error : public error {
  public:
    using error::error;
};

// Malformed input data; carries the 1-based line/column of the offending token.
class parse_error : public error {
  public:
    parse_error(const std::string& what, std::size_t line, std::size_t column)
        : error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

// File could not be opened, read, or written.
class io_error : public error {
  public:
    using error::error;
};

}  // namespace lakc
