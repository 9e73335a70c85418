#include "searchlab/rational.h"

#include <cstdlib>
#include <stdexcept>

namespace searchlab {

BigInt ceil_rational(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);  // always > 0
    BigInt q = num / den;                                          // truncates toward zero
    if (num % den != 0 && num > 0)
        ++q;
    return q;
}

namespace {

// Number of decimal digits of a positive integer.
int digit_count(BigInt v) {
    int n = 0;
    while (v != 0) {
        v /= 10;
        ++n;
    }
    return n;
}

BigInt pow10(int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i)
        r *= 10;
    return r;
}

}  // namespace

/*
  Exact decimal rendering with a fixed number of significant digits,
  rounding half away from zero, formatted like printf %g: fixed notation
  while the exponent is in [-4, significant_digits), scientific otherwise,
  trailing zeros stripped. Pure integer arithmetic, so a given rational
  renders to identical bytes everywhere.
*/
std::string to_decimal(const Rational& value, int significant_digits) {
    if (value == 0)
        return "0";
    const bool negative = value < 0;
    const BigInt num = boost::multiprecision::abs(boost::multiprecision::numerator(value));
    const BigInt den = boost::multiprecision::denominator(value);

    // Decimal exponent: largest e10 with 10^e10 <= |value|.
    int e10 = digit_count(num / den) - 1;
    if (num < den) {
        e10 = -1;
        BigInt scaled = num * 10;
        while (scaled < den) {
            scaled *= 10;
            --e10;
        }
    }

    // Scale so the digits land left of the point, then round.
    const int shift = significant_digits - 1 - e10;
    BigInt scaled_num = num, scaled_den = den;
    if (shift >= 0)
        scaled_num *= pow10(shift);
    else
        scaled_den *= pow10(-shift);
    BigInt digits = scaled_num / scaled_den;
    if ((scaled_num % scaled_den) * 2 >= scaled_den)
        ++digits;
    std::string ds = digits.str();
    if (static_cast<int>(ds.size()) > significant_digits) {
        // Rounding overflowed into one more digit (e.g. 999999.7 -> 1000000).
        ds.resize(significant_digits);
        ++e10;
    }

    std::string out;
    if (e10 >= -4 && e10 < significant_digits) {
        if (e10 >= 0) {
            out = ds.substr(0, e10 + 1);
            std::string frac = ds.substr(e10 + 1);
            while (!frac.empty() && frac.back() == '0')
                frac.pop_back();
            if (!frac.empty())
                out += "." + frac;
        } else {
            std::string frac(static_cast<size_t>(-e10 - 1), '0');
            frac += ds;
            while (!frac.empty() && frac.back() == '0')
                frac.pop_back();
            out = "0." + frac;
        }
    } else {
        std::string mant = ds.substr(1);
        while (!mant.empty() && mant.back() == '0')
            mant.pop_back();
        out = ds.substr(0, 1);
        if (!mant.empty())
            out += "." + mant;
        out += "e" + std::string(e10 < 0 ? "-" : "+") +
               (std::abs(e10) < 10 ? "0" : "") + std::to_string(std::abs(e10));
    }
    return negative ? "-" + out : out;
}

std::string to_fraction(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
    const auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    };
    size_t i = 0;
    const auto digits = [&](BigInt& out) {
        size_t start = i;
        out = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9')
            out = out * 10 + (text[i++] - '0');
        return i > start;
    };
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-'))
        negative = text[i++] == '-';

    BigInt int_part;
    if (!digits(int_part))
        return fail();
    Rational value = int_part;
    if (i < text.size() && text[i] == '/') {
        ++i;
        BigInt den;
        if (!digits(den) || den == 0 || i != text.size())
            return fail();
        value /= den;
    } else {
        if (i < text.size() && text[i] == '.') {
            ++i;
            size_t start = i;
            BigInt frac;
            if (!digits(frac))
                return fail();
            BigInt scale = 1;
            for (size_t j = start; j < i; ++j)
                scale *= 10;
            value += Rational(frac, scale);
        }
        if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
            ++i;
            bool exp_neg = false;
            if (i < text.size() && (text[i] == '+' || text[i] == '-'))
                exp_neg = text[i++] == '-';
            BigInt exp;
            if (!digits(exp) || exp > 4096)
                return fail();
            BigInt scale = 1;
            for (BigInt j = 0; j < exp; ++j)
                scale *= 10;
            if (exp_neg)
                value /= scale;
            else
                value *= scale;
        }
        if (i != text.size())
            return fail();
    }
    return negative ? -value : value;
}

}  // namespace searchlab
