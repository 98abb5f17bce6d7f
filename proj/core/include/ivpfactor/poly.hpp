#pragma once

#include <span>
#include <string>
#include <vector>

#include "ivpfactor/rational.hpp"

namespace ivp {

// Dense univariate polynomial over the rationals, coefficients stored lowest
// degree first.  The zero polynomial has an empty coefficient vector; the
// leading coefficient is otherwise nonzero.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial constant(Rational c);
    static Polynomial from_int_coeffs(const std::vector<Int>& coeffs);
    // x - a
    static Polynomial linear_root(const Int& a);

    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is -1 by convention.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const Rational& coeff(std::size_t i) const;
    std::span<const Rational> coefficients() const { return coeffs_; }
    bool has_integer_coefficients() const;

    Rational evaluate(const Rational& a) const;
    Rational evaluate(const Int& a) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial pow(unsigned long e) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<Rational> coeffs_;
};

bool is_p_integral(const Polynomial& f, const PadicContext& ctx);
// Minimum coefficient valuation is zero.  False for the zero polynomial.
bool is_primitive_at(const Polynomial& f, const PadicContext& ctx);
// h = u*f for a constant u with valuation 0.
bool are_associated(const Polynomial& f, const Polynomial& h, const PadicContext& ctx);
// Every coefficient of f - h has valuation >= k.
bool congruent_mod_power(const Polynomial& f, const Polynomial& h, long k,
                         const PadicContext& ctx);

// "x^2+9", "2x-2", "-x", ... with integer coefficients where possible.
std::string format_polynomial(const Polynomial& f);

struct Factor {
    Polynomial g;
    unsigned long multiplicity = 1;
};

// f = prod g^m_g over Z_(p): an irreducible divisor set with multiplicities.
// Construction checks only cheap structural facts (non-constant factors,
// positive multiplicities); run validate_factored for the full contract.
class FactoredPolynomial {
public:
    FactoredPolynomial(PadicContext ctx, std::vector<Factor> factors);

    const PadicContext& ctx() const { return ctx_; }
    const std::vector<Factor>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    std::vector<long> multiplicities() const;

    Polynomial expand() const;
    unsigned long multiplicity_gcd() const;

private:
    PadicContext ctx_;
    std::vector<Factor> factors_;
};

enum class CheckStatus { pass, fail, unverified };

struct ValidationCheck {
    std::string name;
    CheckStatus status;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool ok() const;  // no failed check
    std::vector<std::string> warnings() const;
    std::string first_failure() const;
};

// Structural checks (p-integrality, pairwise non-association, primitivity of
// the expanded product) fail hard; irreducibility of each factor over Q is
// verified best-effort (degree <= 3 exactly, Eisenstein otherwise) and
// reported as unverified when no method applies.
ValidationReport validate_factored(const FactoredPolynomial& fp);
// Throws ComputeError on the first failed check.
void validate_factored_strict(const FactoredPolynomial& fp);

enum class IrredStatus { irreducible, reducible, unknown };
// Best-effort irreducibility over Q for a nonconstant polynomial with
// rational coefficients.
IrredStatus check_irreducible_over_q(const Polynomial& f);

}  // namespace ivp
