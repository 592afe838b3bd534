#include "decomp/rational.hpp"
#include "decomp/error.hpp"

#include <cctype>

namespace decomp {

const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidBasepoint: return "InvalidBasepoint";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::NotMono: return "NotMono";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NotDecomposition: return "NotDecomposition";
    case ErrorKind::IndexError: return "IndexError";
    case ErrorKind::TruncationTooShallow: return "TruncationTooShallow";
    case ErrorKind::UnknownClass: return "UnknownClass";
    case ErrorKind::TruncationUnsafe: return "TruncationUnsafe";
    case ErrorKind::NotTightAtTruncation: return "NotTightAtTruncation";
    case ErrorKind::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorKind::NotTriangular: return "NotTriangular";
    case ErrorKind::NotPolynomialAtTruncation: return "NotPolynomialAtTruncation";
    case ErrorKind::NoMonoidalStructure: return "NoMonoidalStructure";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::NotAPoset: return "NotAPoset";
    case ErrorKind::NotACategory: return "NotACategory";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidGroupoid: return "InvalidGroupoid";
    case ErrorKind::NotExplicit: return "NotExplicit";
    }
    return "Unknown";
}

Rational::Rational(long num, long den) {
    if (den == 0) throw DecompError(ErrorKind::ParseError, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

static bool all_digits(const std::string& s, size_t from) {
    if (from >= s.size()) return false;
    for (size_t i = from; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    std::string n = s.substr(0, slash);
    std::string d = slash == std::string::npos ? "1" : s.substr(slash + 1);
    size_t st = (!n.empty() && (n[0] == '-' || n[0] == '+')) ? 1 : 0;
    if (!all_digits(n, st) || !all_digits(d, 0))
        throw DecompError(ErrorKind::ParseError, "bad rational '" + s + "'");
    mpz_class N(n[0] == '+' ? n.substr(1) : n), D(d);
    if (D == 0) throw DecompError(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    return Rational(mpq_class(N, D));
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::pq() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class a = abs(v_.get_num()) * scale * 2 + v_.get_den();
    mpz_class q = a / (v_.get_den() * 2);  // round half up on |x|
    std::string s = q.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string ip = s.substr(0, s.size() - digits), fp = s.substr(s.size() - digits);
    while (!fp.empty() && fp.back() == '0') fp.pop_back();
    std::string out = (sign() < 0 && (q != 0)) ? "-" : "";
    out += ip;
    if (!fp.empty()) out += "." + fp;
    return out;
}

Rational pow(const Rational& base, unsigned e) {
    Rational r(1);
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational binomial(long n, long k) {
    if (k < 0) return Rational(0);
    Rational r(1);
    for (long i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
    return r;
}

}  // namespace decomp
