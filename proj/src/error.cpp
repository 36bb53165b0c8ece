#include "frobdens/error.hpp"

#include "frobdens/rational.hpp"

#include <algorithm>
#include <cctype>

namespace frobdens {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::MalformedGenerator: return "MalformedGenerator";
    case ErrorCode::ElementNotInGroup: return "ElementNotInGroup";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::TargetMismatch: return "TargetMismatch";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::Ramified: return "Ramified";
    case ErrorCode::NotSquarefreeModP: return "NotSquarefreeModP";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::BoundTooLarge: return "BoundTooLarge";
    case ErrorCode::ClassNotInFiber: return "ClassNotInFiber";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::MissingDensity: return "MissingDensity";
    case ErrorCode::NotPredictable: return "NotPredictable";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::SBelowAbscissa: return "SBelowAbscissa";
    case ErrorCode::EmptyDenominator: return "EmptyDenominator";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::InvariantBreach: return "InvariantBreach";
  }
  return "Unknown";
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return Error(ErrorCode::BadInput, "not a rational number: '" + text + "'"); };
  auto digits_only = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  Rational r;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    const std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) throw bad();
    const BigInt d(den);
    if (d == 0) throw bad();
    r = Rational(BigInt(num), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    const std::string whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !digits_only(whole)) ||
        (!frac.empty() && !digits_only(frac)))
      throw bad();
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    r = Rational(BigInt(whole.empty() ? "0" : whole) * scale + BigInt(frac.empty() ? "0" : frac), scale);
  } else {
    if (!digits_only(body)) throw bad();
    r = Rational(BigInt(body));
  }
  return negative ? Rational(-r) : r;
}

}  // namespace frobdens
