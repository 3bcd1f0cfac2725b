/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace ramsey
{
    // expression templates off: `auto x = a - b` must not hold references into containers
    using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
    using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
          boost::multiprecision::et_off>;

    auto make_rational(long long num, long long den = 1) -> Rational;

    // Accepts "a/b", integers and finite decimals such as "0.15" or "1e-3".
    auto parse_rational(const std::string & text) -> Rational;

    // Exact value of a double (every finite double is a dyadic rational).
    auto exact_rational(double value) -> Rational;

    auto to_double(const Rational & q) -> double;
    auto to_string(const Rational & q) -> std::string;
    auto numerator_string(const Rational & q) -> std::string;
    auto denominator_string(const Rational & q) -> std::string;
}
