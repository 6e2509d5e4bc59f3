#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace phasefluct {

/// Exception carrying a stable machine-readable code alongside the message.
/// Codes are kebab-case identifiers such as "space-mismatch" or
/// "leakage-exceeded"; the CLI maps them to process exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace phasefluct
