#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ahmp {

// Base of every error the library throws.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (bad index, t outside [0,1], ...).
class ContractViolation : public Error
{
public:
  using Error::Error;
};

// Sampling budget exhausted without a single collision-free configuration.
class InfeasibleEnvironment : public Error
{
public:
  using Error::Error;
};

// A configuration that must be free is in collision.
class InCollision : public Error
{
public:
  using Error::Error;
};

// Evidence has zero probability under the network.
class ImpossibleEvidence : public Error
{
public:
  using Error::Error;
};

// Missing or inconsistent configuration (e.g. no PathSuccess node in the net).
class ConfigError : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
};

struct FieldError
{
  std::string field;   // JSON-pointer-like path, e.g. "/matrix/max_samples/0"
  std::string reason;

  bool operator==(const FieldError&) const = default;
};

// Scenario failed validation; carries every problem found, not just the first.
class SchemaError : public Error
{
public:
  explicit SchemaError(std::vector<FieldError> errors);

  const std::vector<FieldError>& errors() const { return errors_; }

private:
  std::vector<FieldError> errors_;
};

} // namespace ahmp
