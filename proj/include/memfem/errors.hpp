#ifndef MEMFEM_ERRORS_HPP
#define MEMFEM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace memfem {

// Invalid user-supplied parameters (dimensions, material data, config values).
class ParameterError : public std::runtime_error {
 public:
  explicit ParameterError(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public ParameterError {
 public:
  explicit ConfigError(const std::string& msg) : ParameterError(msg) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed mesh file; carries the offending line number.
class ParseError : public IoError {
 public:
  ParseError(const std::string& msg, int line)
      : IoError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class UnsupportedElementError : public IoError {
 public:
  UnsupportedElementError(const std::string& msg, int line)
      : IoError(msg + " (line " + std::to_string(line) + ")") {}
};

// Degenerate or inconsistent geometry; names the element where known.
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

class InvertedElementError : public GeometryError {
 public:
  explicit InvertedElementError(const std::string& msg) : GeometryError(msg) {}
};

class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// Singular 3x3 condensation block in the local plane-stress solve.
class CondensationSingularityError : public SolverError {
 public:
  explicit CondensationSingularityError(const std::string& msg) : SolverError(msg) {}
};

// Zero pivot in the global factorization; carries the DOF index when known.
class SingularSystemError : public SolverError {
 public:
  SingularSystemError(const std::string& msg, int dof = -1)
      : SolverError(dof >= 0 ? msg + " (dof " + std::to_string(dof) + ")" : msg),
        dof_(dof) {}
  int dof() const { return dof_; }

 private:
  int dof_;
};

// Iteration failed to converge; carries the residual history.
class ConvergenceError : public SolverError {
 public:
  ConvergenceError(const std::string& msg, std::vector<double> history)
      : SolverError(msg), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

}  // namespace memfem

#endif
