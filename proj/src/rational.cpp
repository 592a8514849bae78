#include <hypgeo/rational.hpp>

#include <cctype>
#include <stdexcept>

namespace hypgeo {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

[[noreturn]] void bad(std::string_view text)
{
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) {
        bad(text);
    }

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            bad(text);
        }
        Integer d(std::string(den), 10);
        if (d == 0) {
            bad(text);
        }
        value = make_rational(Integer(std::string(num), 10), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole))
            || (!frac.empty() && !all_digits(frac))) {
            bad(text);
        }
        std::string digits = std::string(whole) + std::string(frac);
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        value = make_rational(Integer(digits, 10), scale);
    } else {
        if (!all_digits(s)) {
            bad(text);
        }
        value = Rational(Integer(std::string(s), 10));
    }
    return negative ? Rational(-value) : value;
}

bool is_integer(const Rational& q)
{
    return q.get_den() == 1;
}

bool is_nonpositive_integer(const Rational& q)
{
    return is_integer(q) && q <= 0;
}

} // namespace hypgeo
