/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/errors.hpp>
#include <ramsey/rational.hpp>

#include <cctype>
#include <cmath>

using namespace ramsey;

auto ramsey::make_rational(long long num, long long den) -> Rational
{
    if (den == 0)
        throw Error(ErrorKind::invalid_input, "zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

auto ramsey::parse_rational(const std::string & text) -> Rational
{
    auto fail = [&] () -> Rational { throw Error(ErrorKind::invalid_input, "cannot parse rational '" + text + "'"); };

    if (text.empty())
        return fail();

    if (auto slash = text.find('/') ; slash != std::string::npos) {
        auto num = parse_rational(text.substr(0, slash));
        auto den = parse_rational(text.substr(slash + 1));
        if (den == 0)
            return fail();
        return num / den;
    }

    std::string mantissa = text;
    long long exponent = 0;
    if (auto e = text.find_first_of("eE") ; e != std::string::npos) {
        mantissa = text.substr(0, e);
        try {
            std::size_t used = 0;
            exponent = std::stoll(text.substr(e + 1), &used);
            if (used != text.size() - e - 1)
                return fail();
        }
        catch (const std::exception &) {
            return fail();
        }
    }

    bool negative = false;
    std::size_t pos = 0;
    if (pos < mantissa.size() && (mantissa[pos] == '-' || mantissa[pos] == '+'))
        negative = (mantissa[pos++] == '-');

    BigInt digits = 0;
    long long fraction_digits = 0;
    bool seen_point = false, seen_digit = false;
    for ( ; pos < mantissa.size() ; ++pos) {
        char c = mantissa[pos];
        if (c == '.' && ! seen_point)
            seen_point = true;
        else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            seen_digit = true;
            if (seen_point)
                ++fraction_digits;
        }
        else
            return fail();
    }
    if (! seen_digit)
        return fail();

    exponent -= fraction_digits;
    Rational result{ digits };
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(exponent)));
    if (exponent >= 0)
        result *= scale;
    else
        result /= scale;
    return negative ? Rational(-result) : result;
}

auto ramsey::exact_rational(double value) -> Rational
{
    if (! std::isfinite(value))
        throw Error(ErrorKind::invalid_input, "non-finite value");
    int exponent = 0;
    double mantissa = std::frexp(value, &exponent);
    auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Rational result{ BigInt(scaled) };
    BigInt two_power = BigInt(1) << static_cast<unsigned>(std::abs(exponent));
    if (exponent >= 0)
        result *= two_power;
    else
        result /= two_power;
    return result;
}

auto ramsey::to_double(const Rational & q) -> double
{
    return q.convert_to<double>();
}

auto ramsey::to_string(const Rational & q) -> std::string
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

auto ramsey::numerator_string(const Rational & q) -> std::string
{
    return numerator(q).str();
}

auto ramsey::denominator_string(const Rational & q) -> std::string
{
    return denominator(q).str();
}
