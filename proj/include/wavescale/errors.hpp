#pragma once

#include <stdexcept>
#include <string>

namespace wavescale {

// Process exit codes used by the CLI.
enum class ExitCode : int {
  success = 0,
  usage = 2,
  ingestion = 3,
  estimation = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Bad parameters, unknown identifiers, out-of-range options.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ExitCode::usage, what) {}
};

// Input vectors whose length violates a transform precondition.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(ExitCode::usage, what) {}
};

class IngestionError : public Error {
 public:
  explicit IngestionError(const std::string& what) : Error(ExitCode::ingestion, what) {}
};

// Degenerate data for an estimator or a non-converging fit.
class EstimationError : public Error {
 public:
  explicit EstimationError(const std::string& what) : Error(ExitCode::estimation, what) {}
};

}  // namespace wavescale
