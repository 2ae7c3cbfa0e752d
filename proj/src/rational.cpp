#include "post/rational.hpp"

#include "post/errors.hpp"

#include <cctype>
#include <cstdio>

namespace post {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = (s[0] == '-');
        s.erase(0, 1);
    }
    const auto slash = s.find('/');
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        raise("ParseError", "not an exact rational: \"" + text + "\"");
    BigInt n(num), d(den);
    if (d == 0) raise("ParseError", "zero denominator: \"" + text + "\"");
    Rational r(n, d);
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_decimal(const Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", to_double(r));
    return buf;
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

}  // namespace post
