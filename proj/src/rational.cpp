#include "unimodular/rational.hpp"

#include "unimodular/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace ul {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Returns index one past the integer literal starting at `pos`, or throws.
std::size_t scan_integer(std::string_view s, std::size_t pos, bool allow_sign) {
    std::size_t i = pos;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) {
        ++i;
    }
    const std::size_t digits_begin = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        ++i;
    }
    if (i == digits_begin) {
        throw FormatError("expected digit in rational literal '" + std::string(s) + "'", i);
    }
    return i;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && is_blank(text[b])) {
        ++b;
    }
    while (e > b && is_blank(text[e - 1])) {
        --e;
    }
    if (b == e) {
        throw FormatError("empty rational literal", b);
    }
    const std::string_view s = text.substr(0, e);
    const std::size_t num_end = scan_integer(s, b, true);
    std::string num(s.substr(b, num_end - b));
    if (num.front() == '+') {
        num.erase(0, 1);
    }
    if (num_end == e) {
        return Rational(Integer(num));
    }
    if (s[num_end] != '/') {
        throw FormatError("unexpected character in rational literal '" + std::string(s.substr(b)) + "'", num_end);
    }
    const std::size_t den_end = scan_integer(s, num_end + 1, false);
    if (den_end != e) {
        throw FormatError("trailing characters in rational literal '" + std::string(s.substr(b)) + "'", den_end);
    }
    const Integer den(std::string(s.substr(num_end + 1, den_end - num_end - 1)));
    if (den == 0) {
        throw FormatError("zero denominator", num_end + 1);
    }
    Rational q(Integer(num), den);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& raw) {
    Rational q = raw;
    q.canonicalize();
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_real(double x) {
    if (x == 0.0) {
        return "0";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 12);
    return std::string(buf.data(), res.ptr);
}

double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) {
        return x;
    }
    const std::string s = format_real(x);
    double v = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

int sign(const Rational& q) { return sgn(q); }
int sign(const Integer& z) { return sgn(z); }

} // namespace ul
