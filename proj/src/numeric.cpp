#include "forestsmith/numeric.hpp"

#include "forestsmith/errors.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <sstream>

namespace forestsmith {

BigCount binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigCount result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

BigCount power(const BigCount& base, unsigned exponent) {
    return boost::multiprecision::pow(base, exponent);
}

std::string fraction_string(const Rational& value) {
    return boost::multiprecision::numerator(value).str() + "/" +
           boost::multiprecision::denominator(value).str();
}

std::string decimal_string(const Rational& value, int significant_digits) {
    using Decimal = boost::multiprecision::cpp_dec_float_50;
    Decimal num(boost::multiprecision::numerator(value));
    Decimal den(boost::multiprecision::denominator(value));
    Decimal quotient = num / den;
    std::ostringstream out;
    out.precision(significant_digits);
    out << quotient;
    return out.str();
}

Rational parse_fraction(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(BigCount(text));
        BigCount num(text.substr(0, slash));
        BigCount den(text.substr(slash + 1));
        if (den == 0) throw PreconditionError("zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw PreconditionError("not a fraction: '" + text + "'");
    }
}

}  // namespace forestsmith
