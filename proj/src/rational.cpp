#include "heis/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace heis {

namespace {

std::string trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return std::string(s);
}

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            return false;
        }
    }
    return true;
}

Rational parse_integer(std::string_view s)
{
    std::string body(s);
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        digits.remove_prefix(1);
    }
    if (!all_digits(digits)) {
        throw std::invalid_argument("not an integer: '" + body + "'");
    }
    if (!body.empty() && body.front() == '+') {
        body.erase(0, 1);
    }
    return Rational(mpz_class(body, 10));
}

Rational pow10(long exponent)
{
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational r(p);
    if (exponent < 0) {
        r = 1 / r;
    }
    return r;
}

Rational parse_decimal(std::string_view s)
{
    std::string text(s);
    bool negative = false;
    std::string_view rest = s;
    if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = rest.substr(e + 1);
        std::string_view exp_digits = exp_part;
        if (!exp_digits.empty() && (exp_digits.front() == '-' || exp_digits.front() == '+')) {
            exp_digits.remove_prefix(1);
        }
        if (!all_digits(exp_digits) || exp_digits.size() > 6) {
            throw std::invalid_argument("bad exponent in '" + text + "'");
        }
        exponent = std::stol(std::string(exp_part));
        rest = rest.substr(0, e);
    }
    std::string mantissa;
    long fraction_digits = 0;
    if (auto dot = rest.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = rest.substr(0, dot);
        std::string_view frac_part = rest.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part))
            || (!frac_part.empty() && !all_digits(frac_part))) {
            throw std::invalid_argument("not a decimal: '" + text + "'");
        }
        mantissa = std::string(int_part) + std::string(frac_part);
        fraction_digits = static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(rest)) {
            throw std::invalid_argument("not a number: '" + text + "'");
        }
        mantissa = std::string(rest);
    }
    Rational value(mpz_class(mantissa, 10));
    value *= pow10(exponent - fraction_digits);
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

} // namespace

Rational make_rational(long num, long den)
{
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text)
{
    const std::string s = trim(text);
    if (s.empty()) {
        throw std::invalid_argument("empty number");
    }
    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rational num = parse_integer(std::string_view(s).substr(0, slash));
        Rational den = parse_integer(std::string_view(s).substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + s + "'");
        }
        Rational q = num / den;
        q.canonicalize();
        return q;
    }
    return parse_decimal(s);
}

std::vector<Rational> parse_rational_list(std::string_view text)
{
    std::vector<Rational> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        out.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

} // namespace heis
