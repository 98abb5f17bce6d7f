#include "ivpfactor/rational.hpp"

#include <array>
#include <cctype>

namespace ivp {

namespace {

// Miller-Rabin round for witness a; n odd, n - 1 = d * 2^s.
bool mr_composite(const Int& n, const Int& d, unsigned long s, unsigned long a) {
    Int base(a);
    if (mpz_divisible_p(base.get_mpz_t(), n.get_mpz_t())) return false;
    Int x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

bool is_prime_deterministic(const Int& n) {
    if (n < 2) return false;
    // The first twelve primes are a complete witness set below 3.3 * 10^24,
    // which covers the whole 64-bit range.
    static constexpr std::array<unsigned long, 12> witnesses = {2,  3,  5,  7,  11, 13,
                                                                17, 19, 23, 29, 31, 37};
    for (unsigned long w : witnesses) {
        if (n == w) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return false;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (unsigned long w : witnesses) {
        if (mr_composite(n, d, s, w)) return false;
    }
    return true;
}

PadicContext::PadicContext(Int p) : p_(std::move(p)) {
    if (mpz_sizeinbase(p_.get_mpz_t(), 2) > 64) {
        throw ComputeError("PadicContext: primes >= 2^64 are not supported");
    }
    if (!is_prime_deterministic(p_)) {
        throw ComputeError("PadicContext: " + p_.get_str() + " is not prime");
    }
}

Valuation PadicContext::valuation(const Int& x) const {
    if (x == 0) return Valuation::infinity();
    Int reduced;
    mp_bitcnt_t count = mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), p_.get_mpz_t());
    return Valuation(static_cast<long>(count));
}

Valuation PadicContext::valuation(const Rational& x) const {
    if (x == 0) return Valuation::infinity();
    Int scratch;
    long num = static_cast<long>(
        mpz_remove(scratch.get_mpz_t(), x.get_num().get_mpz_t(), p_.get_mpz_t()));
    long den = static_cast<long>(
        mpz_remove(scratch.get_mpz_t(), x.get_den().get_mpz_t(), p_.get_mpz_t()));
    return Valuation(num - den);
}

Rational parse_rational(std::string_view text) {
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto read_int = [&]() -> Int {
        skip_ws();
        size_t start = i;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
        size_t digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            ++digits;
        }
        if (digits == 0) throw SyntaxError("expected integer", start);
        return Int(std::string(text.substr(start, i - start)), 10);
    };

    Int num = read_int();
    skip_ws();
    Int den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        den = read_int();
        if (den == 0) throw SyntaxError("zero denominator", i);
        skip_ws();
    }
    if (i != text.size()) throw SyntaxError("trailing characters in rational literal", i);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace ivp
