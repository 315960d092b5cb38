#pragma once

#include <stdexcept>
#include <string>

namespace nonlocal {

// Precondition violations on numeric arguments are reported as
// std::invalid_argument. The types below cover the remaining failure classes,
// each of which maps to a distinct CLI exit code.

/// Malformed or out-of-domain run configuration.
class ConfigError : public std::runtime_error {
public:
  ConfigError(int line, std::string key, const std::string& what)
      : std::runtime_error(format(line, key, what)), line_(line), key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

private:
  static std::string format(int line, const std::string& key, const std::string& what) {
    std::string msg;
    if (line > 0) msg += "line " + std::to_string(line) + ": ";
    if (!key.empty()) msg += "key '" + key + "': ";
    return msg + what;
  }

  int line_;
  std::string key_;
};

/// The weight violates the sufficient existence condition ||w|| < a_I.
class ExistenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Near-singular solves, collapsed denominators, non-converging iterations.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written; the message names the path.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace nonlocal
