#include "brp/rational.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace brp {

namespace {
std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class integer(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("malformed rational");
    mpz_class z(std::string(s), 10);
    return neg ? mpz_class(-z) : z;
}
}  // namespace

Rational parse_rational(std::string_view text) {
    auto s = trim(text);
    if (s.empty()) throw std::invalid_argument("malformed rational: empty");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class num = integer(s.substr(0, slash));
        auto den_text = s.substr(slash + 1);
        if (!all_digits(den_text)) throw std::invalid_argument("malformed rational: " + std::string(text));
        mpz_class den(std::string(den_text), 10);
        if (den == 0) throw std::invalid_argument("malformed rational: zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    // decimal with optional exponent, converted exactly
    bool neg = false;
    if (s.front() == '-' || s.front() == '+') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        auto et = s.substr(e + 1);
        bool eneg = false;
        if (!et.empty() && (et.front() == '-' || et.front() == '+')) {
            eneg = et.front() == '-';
            et.remove_prefix(1);
        }
        if (!all_digits(et) || et.size() > 6) throw std::invalid_argument("malformed rational: " + std::string(text));
        exp10 = std::stol(std::string(et));
        if (eneg) exp10 = -exp10;
        s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
            throw std::invalid_argument("malformed rational: " + std::string(text));
        digits = std::string(ip) + std::string(fp);
        exp10 -= static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) throw std::invalid_argument("malformed rational: " + std::string(text));
        digits = std::string(s);
    }
    mpz_class num(digits.empty() ? "0" : digits, 10), den = 1;
    mpz_class ten = 10;
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0)
        den = p;
    else
        num *= p;
    Rational q(neg ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
}

double parse_double(std::string_view text) {
    auto s = trim(text);
    if (s.find('/') != std::string_view::npos) return parse_rational(s).get_d();
    double v = 0;
    const char* b = s.data();
    if (!s.empty() && s.front() == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("malformed number: " + std::string(text));
    return v;
}

std::string to_string(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

}  // namespace brp
