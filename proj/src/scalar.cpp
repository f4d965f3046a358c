#include "vaform/scalar.hpp"

#include <cctype>

namespace vaform {

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("scalar with zero denominator");
    reduce();
}

void Scalar::reduce() {
    if (num_.is_zero()) {
        den_ = Poly(GaussRat(1));
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    GaussRat lead = den_.leading();
    if (!(lead == GaussRat(1))) {
        GaussRat inv = lead.inv();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

GaussRat Scalar::constant() const {
    if (!is_constant()) throw Error("scalar is not constant: " + str());
    return num_.is_zero() ? GaussRat() : num_.coeff(0);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Scalar operator-(const Scalar& a, const Scalar& b) {
    return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Scalar operator-(const Scalar& a) {
    Scalar r = a;
    r.num_ = -r.num_;
    return r;
}
Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(a.num_ * b.num_, a.den_ * b.den_);
}
Scalar Scalar::inv() const {
    if (is_zero()) throw Error("scalar division by zero");
    return Scalar(den_, num_);
}
Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

Scalar Scalar::conj() const { return Scalar(num_.conj(), den_.conj()); }

GaussRat specialize(const Scalar& s, const Rat& k0) {
    GaussRat d = s.den().eval(GaussRat(k0));
    if (d.is_zero()) {
        // Identify the vanishing factor (k - k0)^m of the denominator.
        Poly lin;
        lin.push_coeff(GaussRat(-k0));
        lin.push_coeff(GaussRat(Rat(1)));
        int mult = 0;
        Poly rest = s.den();
        while (true) {
            Poly q, r;
            Poly::divrem(rest, lin, q, r);
            if (!r.is_zero()) break;
            rest = q;
            ++mult;
        }
        throw PoleError("pole at k=" + rat_str(k0) + ": denominator factor (k-(" + rat_str(k0) +
                        "))^" + std::to_string(mult) + " of " + s.str());
    }
    return s.num().eval(GaussRat(k0)) / d;
}

Phase phase_of(HalfInt delta, int parity) {
    if (delta < HalfInt(0)) throw Error("invalid weight: negative");
    if (parity != 0 && parity != 1) throw Error("invalid parity");
    return Phase(static_cast<int>(delta.twice % 4) + parity);
}

namespace {

std::string poly_str(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int d = p.degree(); d >= 0; --d) {
        GaussRat c = p.coeff(d);
        if (c.is_zero()) continue;
        std::string cs;
        bool negated = false;
        bool pure = c.is_real() || c.re == 0;
        if (pure && !out.empty() && (c.is_real() ? c.re < 0 : c.im < 0)) {
            negated = true;
            cs = (-c).str();
        } else {
            cs = c.str();
        }
        if (!pure) cs = "(" + cs + ")";
        std::string term = cs + (d > 0 ? "*k^" + std::to_string(d) : "");
        if (out.empty())
            out = term;
        else
            out += (negated ? "-" : "+") + term;
    }
    return out;
}

} // namespace

std::string Scalar::str() const {
    if (den_.is_one()) return poly_str(num_);
    return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

// ---------------------------------------------------------------------------
// Expression parser: rational literals, i, k, + - * / ^, parentheses.

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    Scalar parse_expr() {
        Scalar acc = parse_term();
        while (true) {
            if (eat('+'))
                acc += parse_term();
            else if (eat('-'))
                acc -= parse_term();
            else
                return acc;
        }
    }

    Scalar parse_term() {
        Scalar acc = parse_power();
        while (true) {
            if (eat('*'))
                acc *= parse_power();
            else if (eat('/')) {
                Scalar d = parse_power();
                if (d.is_zero()) throw ParseError("division by zero in scalar expression");
                acc = acc / d;
            } else
                return acc;
        }
    }

    Scalar parse_power() {
        Scalar base = parse_atom();
        if (eat('^')) {
            bool neg = eat('-');
            std::string digits;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
            if (digits.empty()) throw ParseError("exponent expected");
            long e = std::stol(digits);
            Scalar acc(1);
            for (long t = 0; t < e; ++t) acc *= base;
            return neg ? acc.inv() : acc;
        }
        return base;
    }

    Scalar parse_atom() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of scalar expression");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Scalar inner = parse_expr();
            if (!eat(')')) throw ParseError("missing ')' in scalar expression");
            return inner;
        }
        if (c == '-') {
            ++pos;
            return -parse_atom();
        }
        if (c == '+') {
            ++pos;
            return parse_atom();
        }
        if (c == 'i') {
            ++pos;
            return Scalar::i();
        }
        if (c == 'k') {
            ++pos;
            return Scalar::k();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
            return Scalar(GaussRat(parse_rat(digits)));
        }
        throw ParseError(std::string("unexpected character '") + c + "' in scalar expression");
    }
};

} // namespace

Scalar parse_scalar(const std::string& str) {
    Parser p(str);
    Scalar r = p.parse_expr();
    p.skip_ws();
    if (p.pos != str.size()) throw ParseError("trailing input in scalar expression: '" + str + "'");
    return r;
}

GaussRat parse_gauss_impl(const std::string& s) {
    Scalar sc = parse_scalar(s);
    if (!sc.is_constant()) throw ParseError("expected a constant, got '" + s + "'");
    return sc.constant();
}

} // namespace vaform
