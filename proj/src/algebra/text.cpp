#include "corrdyn/algebra/text.hpp"

#include <cctype>
#include <sstream>

#include "corrdyn/error.hpp"

namespace corrdyn::algebra {

namespace {

// num / den with den > 0.
struct Rational2 {
    BiPoly num;
    mpz_class den = 1;

    bool is_constant() const { return num.deg_z() <= 0 && num.deg_w() <= 0; }
    mpz_class constant_num() const { return num.is_zero() ? mpz_class(0) : num.coeff(0, 0); }
};

class Parser {
public:
    Parser(std::string_view text, const VarNames& names) : s_(text), names_(names) {}

    Rational2 parse() {
        Rational2 r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw DomainError("parse_error", "polynomial parse error at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek_mul() {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '*') {
            ++pos_;
            return true;
        }
        // U+00B7 middle dot, as printed for chain multiplicities
        if (s_.substr(pos_, 2) == "\xC2\xB7") {
            pos_ += 2;
            return true;
        }
        return false;
    }

    bool starts_primary() {
        skip_ws();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }

    static Rational2 add(const Rational2& a, const Rational2& b, bool negate_b) {
        BiPoly rhs = b.den * a.num;
        BiPoly lhs = a.den * b.num;
        Rational2 r{negate_b ? rhs - lhs : rhs + lhs, a.den * b.den};
        return simplify(r);
    }

    static Rational2 simplify(Rational2 r) {
        if (r.num.is_zero()) return {BiPoly{}, 1};
        mpz_class g = content(r.num);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.den.get_mpz_t());
        if (g > 1) {
            std::vector<std::vector<mpz_class>> rows(static_cast<std::size_t>(r.num.deg_z() + 1), std::vector<mpz_class>(static_cast<std::size_t>(r.num.deg_w() + 1)));
            for (int i = 0; i <= r.num.deg_z(); ++i)
                for (int j = 0; j <= r.num.deg_w(); ++j)
                    mpz_divexact(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get_mpz_t(), r.num.coeff(i, j).get_mpz_t(), g.get_mpz_t());
            r.num = BiPoly(rows);
            mpz_divexact(r.den.get_mpz_t(), r.den.get_mpz_t(), g.get_mpz_t());
        }
        return r;
    }

    Rational2 expr() {
        Rational2 acc = term();
        for (;;) {
            skip_ws();
            if (pos_ >= s_.size()) return acc;
            char c = s_[pos_];
            if (c != '+' && c != '-') return acc;
            ++pos_;
            acc = add(acc, term(), c == '-');
        }
    }

    Rational2 term() {
        Rational2 acc = unary();
        for (;;) {
            if (peek_mul()) {
                Rational2 rhs = unary();
                acc = simplify({acc.num * rhs.num, acc.den * rhs.den});
                continue;
            }
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                Rational2 rhs = unary();
                if (!rhs.is_constant() || rhs.num.is_zero()) fail("division only by nonzero constants");
                mpz_class c = rhs.constant_num();
                mpz_class num_scale = rhs.den;
                mpz_class den = acc.den * c;
                if (den < 0) {
                    den = -den;
                    num_scale = -num_scale;
                }
                acc = simplify({num_scale * acc.num, den});
                continue;
            }
            if (starts_primary()) {  // implicit multiplication, e.g. 2z
                Rational2 rhs = power();
                acc = simplify({acc.num * rhs.num, acc.den * rhs.den});
                continue;
            }
            return acc;
        }
    }

    Rational2 unary() {
        skip_ws();
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            bool neg = s_[pos_] == '-';
            ++pos_;
            Rational2 r = unary();
            if (neg) r.num = -r.num;
            return r;
        }
        return power();
    }

    Rational2 power() {
        Rational2 base = primary();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("exponent must be a non-negative integer");
            if (pos_ - start > 4) fail("exponent too large");
            int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
            mpz_class den;
            mpz_pow_ui(den.get_mpz_t(), base.den.get_mpz_t(), static_cast<unsigned long>(e));
            return {pow(base.num, e), den};
        }
        return base;
    }

    Rational2 primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Rational2 r = expr();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) fail("floating-point literals are not accepted");
            return {BiPoly::constant(mpz_class(std::string(s_.substr(start, pos_ - start)))), 1};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string_view id = s_.substr(start, pos_ - start);
            if (id == names_.first) return {BiPoly::z(), 1};
            if (id == names_.second) return {BiPoly::w(), 1};
            pos_ = start;
            fail("unknown variable '" + std::string(id) + "'");
        }
        if (c == '.') fail("floating-point literals are not accepted");
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    const VarNames& names_;
    std::size_t pos_ = 0;
};

}  // namespace

ParsedPoly parse_poly(std::string_view text, const VarNames& names) {
    Rational2 r = Parser(text, names).parse();
    return {r.num, r.den};
}

namespace {

std::string monomial(int i, const std::string& v) {
    if (i == 0) return {};
    if (i == 1) return v;
    return v + "^" + std::to_string(i);
}

void append_term(std::ostringstream& os, bool first, const mpz_class& c, const std::string& mono) {
    mpz_class a = abs(c);
    if (first) {
        if (c < 0) os << "-";
    } else {
        os << (c < 0 ? " - " : " + ");
    }
    if (mono.empty()) {
        os << a.get_str();
    } else {
        if (a != 1) os << a.get_str() << "*";
        os << mono;
    }
}

}  // namespace

std::string to_string(const BiPoly& p, const VarNames& names) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int j = p.deg_w(); j >= 0; --j)
        for (int i = p.deg_z(); i >= 0; --i) {
            const mpz_class& c = p.coeff(i, j);
            if (sgn(c) == 0) continue;
            std::string zs = monomial(i, names.first), ws = monomial(j, names.second);
            std::string mono = zs.empty() ? ws : (ws.empty() ? zs : zs + "*" + ws);
            append_term(os, first, c, mono);
            first = false;
        }
    return os.str();
}

std::string to_string(const ZPoly& p, std::string_view var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const mpz_class& c = p.coeffs()[static_cast<std::size_t>(i)];
        if (sgn(c) == 0) continue;
        append_term(os, first, c, monomial(i, std::string(var)));
        first = false;
    }
    return os.str();
}

}  // namespace corrdyn::algebra
