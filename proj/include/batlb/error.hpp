#pragma once

#include <stdexcept>
#include <string>

namespace batlb {

enum class ErrorCode {
  duplicate_variable,
  syntax,
  range,
  duplicate_constraint,
  count_mismatch,
  too_small,
  too_many,
  negative_parameter,
  too_large,
  not_irreducible,
  mismatch,
  invalid_argument,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C layer can map it onto a status value without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace batlb
