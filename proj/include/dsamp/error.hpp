#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsamp {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class DuplicateViaError : public Error {
public:
  explicit DuplicateViaError(std::vector<int> ids);
  const std::vector<int> &ids() const { return ids_; }

private:
  std::vector<int> ids_;
};

class DensityUnreachable : public Error {
public:
  DensityUnreachable(double target, double achieved);
  double achieved() const { return achieved_; }

private:
  double achieved_;
};

// Raised when group enumeration would exceed the configured cap.
class CatalogTooLarge : public Error {
public:
  CatalogTooLarge(std::size_t count, int worst_vertex, std::size_t worst_count);
  std::size_t count() const { return count_; }
  int worst_vertex() const { return worst_vertex_; }

private:
  std::size_t count_;
  int worst_vertex_;
};

class ModelTooLarge : public Error {
public:
  ModelTooLarge(std::size_t variables, std::size_t cap);
  std::size_t variables() const { return variables_; }
  std::size_t cap() const { return cap_; }

private:
  std::size_t variables_;
  std::size_t cap_;
};

class Infeasible : public Error {
public:
  Infeasible(int color_bound, int lower_bound);
  int color_bound() const { return color_bound_; }

private:
  int color_bound_;
};

class MissingVariables : public Error {
public:
  explicit MissingVariables(std::vector<std::string> names);
  const std::vector<std::string> &names() const { return names_; }

private:
  std::vector<std::string> names_;
};

class InstanceTooLarge : public Error {
public:
  using Error::Error;
};

} // namespace dsamp
