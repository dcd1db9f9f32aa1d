#pragma once

#include <stdexcept>
#include <string>

namespace qidm {

// Base class for all domain errors; the CLI maps these to exit code 2
// (except InconclusiveError, which maps to 3).
class QidmError : public std::runtime_error {
 public:
  explicit QidmError(const std::string& what) : std::runtime_error(what) {}
};

class SignedInputError : public QidmError {
 public:
  using QidmError::QidmError;
};

class AbsoluteContinuityError : public QidmError {
 public:
  AbsoluteContinuityError(const std::string& what, std::string atom)
      : QidmError(what), atom_(std::move(atom)) {}
  const std::string& atom() const { return atom_; }

 private:
  std::string atom_;
};

class InstanceTooLarge : public QidmError {
 public:
  using QidmError::QidmError;
};

class NotAKernelError : public QidmError {
 public:
  using QidmError::QidmError;
};

class InconclusiveError : public QidmError {
 public:
  InconclusiveError(const std::string& what, double modulus, double theta)
      : QidmError(what), modulus_(modulus), theta_(theta) {}
  double modulus() const { return modulus_; }
  double theta() const { return theta_; }

 private:
  double modulus_ = 0.0;
  double theta_ = 0.0;
};

class BranchTrackingError : public QidmError {
 public:
  using QidmError::QidmError;
};

class NotQidError : public QidmError {
 public:
  using QidmError::QidmError;
};

class VariationUnboundedError : public QidmError {
 public:
  using QidmError::QidmError;
};

class NotQidCandidateError : public QidmError {
 public:
  NotQidCandidateError(const std::string& what, std::string member, double theta)
      : QidmError(what), member_(std::move(member)), theta_(theta) {}
  const std::string& member() const { return member_; }
  double theta() const { return theta_; }

 private:
  std::string member_;
  double theta_ = 0.0;
};

class NotAPmfError : public QidmError {
 public:
  NotAPmfError(const std::string& what, double worst_mass)
      : QidmError(what), worst_mass_(worst_mass) {}
  double worst_mass() const { return worst_mass_; }

 private:
  double worst_mass_ = 0.0;
};

class ChainNotDecreasing : public QidmError {
 public:
  using QidmError::QidmError;
};

class OverlapError : public QidmError {
 public:
  using QidmError::QidmError;
};

class JsonSchemaError : public QidmError {
 public:
  using QidmError::QidmError;
};

}  // namespace qidm
