#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

#include "ivpfactor/errors.hpp"

namespace ivp {

// Arbitrary-precision integers and rationals.  mpq_class values produced by
// GMP arithmetic are always in lowest terms with positive denominator, which
// is exactly the canonical form we rely on; parse_rational() canonicalizes
// explicitly.
using Int = mpz_class;
using Rational = mpq_class;

// An element of Z ∪ {∞}.  ∞ is the valuation of 0 and absorbs addition;
// min(v, ∞) = v.  Valuations of p-integral values are nonnegative, rationals
// may have negative valuation.
class Valuation {
public:
    Valuation(long value) : value_(value), infinite_(false) {}  // NOLINT(google-explicit-constructor)
    static Valuation infinity() { return Valuation(InfinityTag{}); }

    bool is_infinite() const { return infinite_; }
    long value() const {
        if (infinite_) throw ComputeError("valuation: infinite value has no finite part");
        return value_;
    }

    Valuation operator+(const Valuation& o) const {
        if (infinite_ || o.infinite_) return infinity();
        return Valuation(value_ + o.value_);
    }
    Valuation& operator+=(const Valuation& o) {
        *this = *this + o;
        return *this;
    }
    // Scaling by a nonnegative weight; 0·∞ = 0 so that absent factors do not
    // force the product valuation to ∞.
    Valuation scaled(long w) const {
        if (w == 0) return Valuation(0);
        if (infinite_) return infinity();
        return Valuation(value_ * w);
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
        if (a.infinite_) return std::strong_ordering::greater;
        if (b.infinite_) return std::strong_ordering::less;
        return a.value_ <=> b.value_;
    }

    friend Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

    std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    struct InfinityTag {};
    explicit Valuation(InfinityTag) : value_(0), infinite_(true) {}
    long value_;
    bool infinite_;
};

// Deterministic Miller-Rabin primality test; the fixed witness set is a
// proven complete certificate for n < 3.3 * 10^24 (in particular for the
// whole 64-bit range).
bool is_prime_deterministic(const Int& n);

// The ring Z_(p): integers localized at the prime p.  The residue field has
// size q = p.  Primality of p is verified at construction; primes >= 2^64
// are rejected.
class PadicContext {
public:
    explicit PadicContext(Int p);

    const Int& prime() const { return p_; }
    const Int& residue_field_size() const { return p_; }  // q = p for Z_(p)

    Valuation valuation(const Int& x) const;
    Valuation valuation(const Rational& x) const;
    bool is_p_integral(const Rational& x) const { return valuation(x) >= Valuation(0); }
    bool is_unit(const Rational& x) const { return valuation(x) == Valuation(0); }

    friend bool operator==(const PadicContext& a, const PadicContext& b) { return a.p_ == b.p_; }

private:
    Int p_;
};

// "a" or "a/b" literal.  Result is canonical (lowest terms, positive
// denominator).
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& x);

}  // namespace ivp
