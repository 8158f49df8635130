#include "batlb/rational.hpp"

#include <cctype>

#include "batlb/error.hpp"

namespace batlb {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::duplicate_variable: return "DuplicateVariable";
    case ErrorCode::syntax: return "SyntaxError";
    case ErrorCode::range: return "RangeError";
    case ErrorCode::duplicate_constraint: return "DuplicateConstraint";
    case ErrorCode::count_mismatch: return "CountMismatch";
    case ErrorCode::too_small: return "TooSmall";
    case ErrorCode::too_many: return "TooMany";
    case ErrorCode::negative_parameter: return "NegativeParameter";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::not_irreducible: return "NotIrreducible";
    case ErrorCode::mismatch: return "MismatchError";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string to_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

namespace {

BigInt parse_integer(std::string_view text, bool allow_sign) {
  std::size_t i = 0;
  if (allow_sign && !text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw Error(ErrorCode::syntax, "expected an integer");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw Error(ErrorCode::syntax, "not an integer: '" + std::string(text) + "'");
    }
  }
  return BigInt(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, true));
  BigInt num = parse_integer(text.substr(0, slash), true);
  BigInt den = parse_integer(text.substr(slash + 1), false);
  if (den == 0) throw Error(ErrorCode::syntax, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace batlb
