#include "tcmap/rational.hpp"

#include <cctype>

#include "tcmap/error.hpp"

namespace tcmap {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::CompositionMismatch: return "CompositionMismatch";
    case ErrorCode::NotPositiveDegree: return "NotPositiveDegree";
    case ErrorCode::NotFormal: return "NotFormal";
    case ErrorCode::NotSimplyConnected: return "NotSimplyConnected";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::TruncationExceeded: return "TruncationExceeded";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::UnknownEntry: return "UnknownEntry";
    case ErrorCode::RegionMismatch: return "RegionMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Unsupported: return "Unsupported";
    }
    return "Error";
}

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole, bool allow_sign)
{
    std::size_t pos = 0;
    bool negative = false;
    if (allow_sign && !digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        negative = digits[0] == '-';
        pos = 1;
    }
    if (pos == digits.size())
        throw Error(ErrorCode::ParseError, "bad rational literal \"" + std::string(whole) + "\"");
    for (std::size_t i = pos; i < digits.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(digits[i])))
            throw Error(ErrorCode::ParseError, "bad rational literal \"" + std::string(whole) + "\"");
    Integer value(std::string(digits.substr(pos)));
    return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text, true));
    Integer num = parse_integer(text.substr(0, slash), text, true);
    Integer den = parse_integer(text.substr(slash + 1), text, false);
    if (den == 0)
        throw Error(ErrorCode::ParseError, "zero denominator in \"" + std::string(text) + "\"");
    return Rational(num, den);
}

std::string to_string(const Rational& q) { return q.str(); }

}  // namespace tcmap
