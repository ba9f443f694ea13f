#include "clockwork/rational.hpp"

#include <cctype>
#include <ostream>

#include "clockwork/errors.hpp"

namespace clockwork {

Rational::Rational(long numerator, long denominator) : v_(numerator, denominator) {
    if (denominator == 0) {
        throw ValidityError("rational denominator must be nonzero");
    }
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) {
        throw ValidityError("division of rationals by zero");
    }
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) {
        throw ValidityError("empty rational literal");
    }
    auto is_int = [](const std::string& s) {
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        }
        return true;
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_int(text)) {
            throw ValidityError("malformed rational literal '" + text + "'");
        }
        return Rational(mpq_class(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) {
        throw ValidityError("malformed rational literal '" + text + "'");
    }
    mpq_class v(text);
    if (v.get_den() == 0) {
        throw ValidityError("rational denominator must be nonzero in '" + text + "'");
    }
    v.canonicalize();
    return Rational(std::move(v));
}

std::string Rational::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_.get_str();
}

} // namespace clockwork
