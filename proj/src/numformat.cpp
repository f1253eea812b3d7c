#include "slantpath/numformat.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace slantpath {

namespace {

// Rewrites "e-05" style exponents to "e-5" (sign kept, leading zeros dropped).
std::string canonical_exponent(std::string s) {
    const std::size_t e = s.find('e');
    if (e == std::string::npos) return s;
    std::string mantissa = s.substr(0, e);
    std::string exp = s.substr(e + 1);
    char sign = '+';
    std::size_t i = 0;
    if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
        sign = exp[0];
        i = 1;
    }
    while (i + 1 < exp.size() && exp[i] == '0') ++i;
    return mantissa + 'e' + sign + exp.substr(i);
}

std::string nonfinite(double x) {
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

// Shortest decimal form that parses back to exactly x.
std::string shortest(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return canonical_exponent(std::string(buf, res.ptr));
}

}  // namespace

std::string format_sci(double x) {
    if (!std::isfinite(x)) return nonfinite(x);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9e", x);
    return canonical_exponent(buf);
}

std::string format_compact(double x) {
    if (!std::isfinite(x)) return nonfinite(x);
    if (x == 0.0) return "0";
    if (x == std::floor(x) && std::abs(x) < 9007199254740992.0) {  // 2^53
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", x);
        return buf;
    }
    return shortest(x);
}

std::string format_literal(double x) {
    if (!std::isfinite(x)) return nonfinite(x);
    if (x == 0.0) return "0.0";
    std::string s = shortest(x);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos) {
        s += ".0";
    }
    return s;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n\r") != std::string::npos) {
            out += '"';
            for (char c : f) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
        } else {
            out += f;
        }
    }
    return out;
}

}  // namespace slantpath
