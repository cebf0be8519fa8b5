#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace arrfree {

/// Library error with a stable machine-readable code ("parse", "budget", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* parse = "parse";
inline constexpr const char* field_mismatch = "field-mismatch";
inline constexpr const char* index = "index";
inline constexpr const char* budget = "budget";
inline constexpr const char* precondition = "precondition";
inline constexpr const char* degenerate = "degenerate-lattice";
inline constexpr const char* internal = "internal";
}  // namespace errc

}  // namespace arrfree
