#pragma once

#include <stdexcept>
#include <string>

namespace stgl {

// The shifted Laplacian L(w) + J lost positive definiteness. Carries the
// offending eigenvalue and, when raised inside a solve loop, the iteration.
class singular_model_error : public std::runtime_error {
public:
  singular_model_error(const std::string& what, double eigenvalue,
                       int iteration = -1)
      : std::runtime_error(what), eigenvalue_(eigenvalue),
        iteration_(iteration) {}

  double eigenvalue() const noexcept { return eigenvalue_; }
  int iteration() const noexcept { return iteration_; }  // -1 outside a solve

private:
  double eigenvalue_;
  int iteration_;
};

// Synthetic-data generation could not produce a usable instance
// (connectivity retries exhausted, disconnected Laplacian, ...).
class generation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A metric is undefined for the given inputs; names the offending column.
class metric_error : public std::runtime_error {
public:
  metric_error(const std::string& what, int column)
      : std::runtime_error(what), column_(column) {}

  int column() const noexcept { return column_; }

private:
  int column_;
};

// A mathematical guarantee the update rules rely on failed numerically.
class internal_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// File and parse problems; always carries the offending path.
class io_error : public std::runtime_error {
public:
  io_error(const std::string& what, std::string path)
      : std::runtime_error(what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

}  // namespace stgl
