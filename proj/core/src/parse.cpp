#include "ivpfactor/parse.hpp"

#include <cctype>
#include <map>

namespace ivp {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    bool done() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) throw SyntaxError(std::string("expected ") + what, pos_);
    }
    std::size_t pos() const { return pos_; }

    Int integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        std::size_t digits = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
            ++digits;
        }
        if (digits == 0) throw SyntaxError("expected integer", start);
        return Int(std::string(text_.substr(start, pos_ - start)), 10);
    }

    long positive_long(const char* what) {
        std::size_t start = pos_;
        Int v = integer();
        if (v < 1 || !v.fits_slong_p()) {
            throw SyntaxError(std::string("expected positive ") + what, start);
        }
        return v.get_si();
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

// term := [sign] [integer ['*']] ['x' ['^' exponent]]
// polynomial := term (term)*      (subsequent terms start with a sign)
Polynomial polynomial_body(Cursor& cur, char terminator) {
    std::map<long, Int> terms;
    bool first = true;
    while (true) {
        cur.skip_ws();
        char c = cur.peek();
        if (c == terminator || c == '\0') break;
        int sign = 1;
        if (cur.accept('+')) {
            sign = 1;
        } else if (cur.accept('-')) {
            sign = -1;
        } else if (!first) {
            throw SyntaxError("expected '+' or '-' between terms", cur.pos());
        }
        first = false;

        Int coeff(1);
        bool have_coeff = false;
        c = cur.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coeff = cur.integer();
            have_coeff = true;
            cur.accept('*');
        }
        long exponent = 0;
        if (cur.accept('x')) {
            exponent = 1;
            if (cur.accept('^')) exponent = cur.positive_long("exponent");
        } else if (!have_coeff) {
            throw SyntaxError("expected coefficient or 'x'", cur.pos());
        }
        terms[exponent] += sign * coeff;
    }
    if (terms.empty()) throw SyntaxError("empty polynomial", cur.pos());
    std::vector<Rational> coeffs(static_cast<std::size_t>(terms.rbegin()->first) + 1, Rational(0));
    for (const auto& [e, c] : terms) coeffs[static_cast<std::size_t>(e)] = Rational(c);
    return Polynomial(std::move(coeffs));
}

}  // namespace

Polynomial parse_integer_polynomial(std::string_view text) {
    Cursor cur(text);
    Polynomial f = polynomial_body(cur, '\0');
    if (!cur.done()) throw SyntaxError("trailing characters after polynomial", cur.pos());
    return f;
}

ParseResult parse_factored_poly(std::string_view text, const PadicContext& ctx) {
    Cursor cur(text);
    std::vector<Factor> factors;
    while (true) {
        cur.expect('(', "'('");
        Polynomial g = polynomial_body(cur, ')');
        cur.expect(')', "')'");
        unsigned long mult = 1;
        if (cur.accept('^')) mult = static_cast<unsigned long>(cur.positive_long("multiplicity"));
        if (g.degree() < 1) {
            throw SyntaxError("constant factor " + format_polynomial(g), cur.pos());
        }
        factors.push_back({std::move(g), mult});
        if (!cur.accept('*')) break;
    }

    std::optional<long> claimed_n;
    std::vector<std::string> warnings;
    if (cur.accept('/')) {
        cur.skip_ws();
        if (cur.accept('p')) {
            cur.expect('^', "'^' after p");
            claimed_n = cur.positive_long("exponent");
        } else {
            Int base = cur.integer();
            if (cur.accept('^')) {
                long e = cur.positive_long("exponent");
                Int full;
                mpz_pow_ui(full.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
                base = full;
            }
            Valuation v = ctx.valuation(base);
            if (v.is_infinite() || v.value() == 0) {
                throw SyntaxError("denominator must be a positive power of p", cur.pos());
            }
            claimed_n = v.value();
            Int expected;
            mpz_pow_ui(expected.get_mpz_t(), ctx.prime().get_mpz_t(),
                       static_cast<unsigned long>(*claimed_n));
            if (base != expected) {
                warnings.push_back("denominator " + base.get_str() + " is not an exact power of " +
                                   ctx.prime().get_str() + "; using its valuation " +
                                   std::to_string(*claimed_n));
            }
        }
    }
    if (!cur.done()) throw SyntaxError("trailing characters after expression", cur.pos());

    FactoredPolynomial fp(ctx, std::move(factors));
    ValidationReport report = validate_factored(fp);
    if (!report.ok()) {
        throw ComputeError("invalid factored polynomial: " + report.first_failure());
    }
    for (const std::string& w : report.warnings()) warnings.push_back(w);
    return ParseResult{std::move(fp), claimed_n, std::move(warnings)};
}

std::string format_factored(const FactoredPolynomial& fp) {
    std::string out;
    for (const Factor& f : fp.factors()) {
        if (!out.empty()) out += "*";
        out += "(" + format_polynomial(f.g) + ")";
        if (f.multiplicity != 1) out += "^" + std::to_string(f.multiplicity);
    }
    return out;
}

}  // namespace ivp
