#include "partmech/rational.hpp"

#include <cctype>

#include "partmech/errors.hpp"

namespace partmech {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::SupportExplosion: return "support-explosion";
        case ErrorKind::InstanceTooLarge: return "instance-too-large";
        case ErrorKind::OracleSizeExceeded: return "oracle-size-exceeded";
        case ErrorKind::NoMassBelow: return "no-mass-below";
        case ErrorKind::FileFormat: return "file-format";
    }
    return "unknown-error";
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw Error(ErrorKind::FileFormat, "empty rational literal");
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-' && c != '+') {
            throw Error(ErrorKind::FileFormat, "bad rational literal '" + text + "'");
        }
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0) {
        throw Error(ErrorKind::FileFormat, "bad rational literal '" + text + "'");
    }
    if (q.get_den() == 0) {
        throw Error(ErrorKind::FileFormat, "zero denominator in '" + text + "'");
    }
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_decimal(const Rational& q, int places) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    // round(q * scale) to nearest, ties away from zero
    Integer num = q.get_num() * scale;
    const Integer& den = q.get_den();
    Integer twice = 2 * num;
    Integer rounded;
    if (num >= 0) {
        rounded = (twice + den) / (2 * den);
    } else {
        rounded = -((-twice + den) / (2 * den));
    }
    bool negative = rounded < 0;
    Integer mag = negative ? Integer(-rounded) : rounded;
    std::string digits = mag.get_str();
    if (static_cast<int>(digits.size()) <= places) {
        digits.insert(0, static_cast<std::size_t>(places + 1 - digits.size()), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    return (negative ? "-" : "") + digits;
}

Rational pow_rational(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    bool invert = exp < 0;
    unsigned long e = invert ? static_cast<unsigned long>(-(exp + 1)) + 1ul
                             : static_cast<unsigned long>(exp);
    if (invert && base == 0) {
        throw Error(ErrorKind::InvalidArgument, "negative power of zero");
    }
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    Rational out;
    if (invert) {
        out = Rational(den, num);
    } else {
        out = Rational(num, den);
    }
    out.canonicalize();
    return out;
}

}  // namespace partmech
