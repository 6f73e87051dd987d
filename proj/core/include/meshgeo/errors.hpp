#pragma once

#include <stdexcept>
#include <string>

namespace meshgeo {

// Point outside the domain of a function (non-positive height, zero distance, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File cannot be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FixedPointDiverged : public std::runtime_error {
 public:
  enum class Stage { momentum, position };

  FixedPointDiverged(int step, Stage stage, double residual, int iterations);

  int step() const { return step_; }
  Stage stage() const { return stage_; }
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  int step_;
  Stage stage_;
  double residual_;
  int iterations_;
};

class InadmissibleState : public std::runtime_error {
 public:
  InadmissibleState(int step, double time, const std::string& reason);

  int step() const { return step_; }
  double time() const { return time_; }

 private:
  int step_;
  double time_;
};

}  // namespace meshgeo
