#include "kclab/rational.hpp"

#include <cctype>
#include <ostream>

#include "kclab/errors.hpp"

namespace kclab {

namespace {

bool is_plain_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

mpz_class parse_integer(const std::string& s) {
    if (!is_plain_integer(s)) throw FormatError("not an integer: '" + s + "'");
    return mpz_class(s, 10);
}

} // namespace

Rational::Rational(long long num, long long den)
    : Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}

Rational::Rational(mpz_class num, mpz_class den) : v_(0) {
    if (den == 0) throw FormatError("rational with zero denominator");
    mpq_class q(std::move(num));
    q /= mpq_class(std::move(den));
    v_ = std::move(q); // operator/ canonicalizes
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.v_ == 0) throw FormatError("rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        mpz_class num = parse_integer(text.substr(0, slash));
        mpz_class den = parse_integer(text.substr(slash + 1));
        if (den <= 0) throw FormatError("denominator must be positive: '" + text + "'");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        if (negative) whole = whole.substr(1);
        if (whole.empty() || frac.empty()) throw FormatError("bad decimal: '" + text + "'");
        mpz_class w = parse_integer(whole);
        mpz_class f = parse_integer(frac);
        if (w < 0 || f < 0) throw FormatError("bad decimal: '" + text + "'");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class num = w * scale + f;
        if (negative) num = -num;
        return Rational(num, scale);
    }
    return Rational(parse_integer(text), mpz_class(1));
}

Rational Rational::parse_canonical(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        throw FormatError("expected <num>/<den>: '" + text + "'");
    std::string num_s = text.substr(0, slash);
    std::string den_s = text.substr(slash + 1);
    if (num_s.empty() || num_s[0] == '-' || den_s.empty() || den_s[0] == '-')
        throw FormatError("expected nonnegative <num>/<den>: '" + text + "'");
    mpz_class num = parse_integer(num_s);
    mpz_class den = parse_integer(den_s);
    if (den <= 0) throw FormatError("denominator must be positive: '" + text + "'");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) // gcd(0, den) == den, so this also forces the canonical 0/1
        throw FormatError("fraction not in lowest terms: '" + text + "'");
    return Rational(num, den);
}

std::string Rational::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

std::ostream& operator<<(std::ostream& out, const Rational& r) {
    return out << r.str();
}

} // namespace kclab
