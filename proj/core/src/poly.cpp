#include "ivpfactor/poly.hpp"

#include <algorithm>
#include <numeric>

namespace ivp {

namespace {

void trim(std::vector<Rational>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

const Rational& zero_rational() {
    static const Rational z(0);
    return z;
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    trim(coeffs_);
}

Polynomial Polynomial::constant(Rational c) {
    std::vector<Rational> v;
    if (c != 0) v.push_back(std::move(c));
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_int_coeffs(const std::vector<Int>& coeffs) {
    std::vector<Rational> v;
    v.reserve(coeffs.size());
    for (const Int& c : coeffs) v.emplace_back(c);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_root(const Int& a) {
    return Polynomial({Rational(-a), Rational(1)});
}

const Rational& Polynomial::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : zero_rational();
}

bool Polynomial::has_integer_coefficients() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return c.get_den() == 1; });
}

Rational Polynomial::evaluate(const Rational& a) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * a + *it;
    return acc;
}

Rational Polynomial::evaluate(const Int& a) const {
    if (has_integer_coefficients()) {
        Int acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc *= a;
            acc += it->get_num();
        }
        return Rational(acc);
    }
    return evaluate(Rational(a));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] -= o.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
            c[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::pow(unsigned long e) const {
    Polynomial result = Polynomial::constant(Rational(1));
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

bool is_p_integral(const Polynomial& f, const PadicContext& ctx) {
    for (const Rational& c : f.coefficients()) {
        if (!ctx.is_p_integral(c)) return false;
    }
    return true;
}

bool is_primitive_at(const Polynomial& f, const PadicContext& ctx) {
    bool unit_seen = false;
    for (const Rational& c : f.coefficients()) {
        Valuation v = ctx.valuation(c);
        if (v < Valuation(0)) return false;
        if (v == Valuation(0)) unit_seen = true;
    }
    return unit_seen;
}

bool are_associated(const Polynomial& f, const Polynomial& h, const PadicContext& ctx) {
    if (f.is_zero() || h.is_zero())
        throw ComputeError("are_associated: arguments must be nonzero");
    if (f.degree() != h.degree()) return false;
    std::size_t k = 0;
    while (f.coeff(k) == 0) ++k;
    if (h.coeff(k) == 0) return false;
    Rational u = h.coeff(k) / f.coeff(k);
    if (!ctx.is_unit(u)) return false;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(f.degree()); ++i) {
        if (h.coeff(i) != u * f.coeff(i)) return false;
    }
    return true;
}

bool congruent_mod_power(const Polynomial& f, const Polynomial& h, long k,
                         const PadicContext& ctx) {
    Polynomial d = f - h;
    for (const Rational& c : d.coefficients()) {
        if (ctx.valuation(c) < Valuation(k)) return false;
    }
    return true;
}

std::string format_polynomial(const Polynomial& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (long i = f.degree(); i >= 0; --i) {
        const Rational& c = f.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        bool negative = c < 0;
        Rational abs_c = negative ? Rational(-c) : c;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? "-" : "+";
        }
        bool unit_coeff = (abs_c == 1);
        if (i == 0 || !unit_coeff) out += format_rational(abs_c);
        if (i > 0) {
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

FactoredPolynomial::FactoredPolynomial(PadicContext ctx, std::vector<Factor> factors)
    : ctx_(std::move(ctx)), factors_(std::move(factors)) {
    if (factors_.empty()) throw ComputeError("factored polynomial: no factors");
    for (const Factor& f : factors_) {
        if (f.g.degree() < 1)
            throw ComputeError("factored polynomial: factors must be non-constant");
        if (f.multiplicity == 0)
            throw ComputeError("factored polynomial: multiplicities must be positive");
    }
}

std::vector<long> FactoredPolynomial::multiplicities() const {
    std::vector<long> m;
    m.reserve(factors_.size());
    for (const Factor& f : factors_) m.push_back(static_cast<long>(f.multiplicity));
    return m;
}

Polynomial FactoredPolynomial::expand() const {
    Polynomial result = Polynomial::constant(Rational(1));
    for (const Factor& f : factors_) result = result * f.g.pow(f.multiplicity);
    return result;
}

unsigned long FactoredPolynomial::multiplicity_gcd() const {
    unsigned long g = 0;
    for (const Factor& f : factors_) g = std::gcd(g, f.multiplicity);
    return g;
}

bool ValidationReport::ok() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const ValidationCheck& c) { return c.status == CheckStatus::fail; });
}

std::vector<std::string> ValidationReport::warnings() const {
    std::vector<std::string> w;
    for (const ValidationCheck& c : checks) {
        if (c.status == CheckStatus::unverified) w.push_back(c.name + ": " + c.detail);
    }
    return w;
}

std::string ValidationReport::first_failure() const {
    for (const ValidationCheck& c : checks) {
        if (c.status == CheckStatus::fail) return c.name + ": " + c.detail;
    }
    return {};
}

namespace {

struct SmallFactorization {
    std::vector<std::pair<Int, unsigned long>> factors;  // (prime, exponent)
    bool complete = true;
};

// Trial division up to 10^6.  A leftover cofactor is kept when it is
// certifiably prime (below 10^12 it must be; otherwise the deterministic
// Miller-Rabin range applies); the factorization is marked incomplete when
// the cofactor resists both.
SmallFactorization factor_small(Int n) {
    SmallFactorization result;
    if (n < 0) n = -n;
    if (n <= 1) return result;
    for (unsigned long d = 2; d <= 1000000; d = (d == 2 ? 3 : d + 2)) {
        Int dd(d);
        if (dd * dd > n) break;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            ++e;
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
        }
        if (e > 0) result.factors.emplace_back(dd, e);
    }
    if (n > 1) {
        static const Int mr_limit("3317044064679887385961980");
        if (Int("1000000000000") >= n || (n < mr_limit && is_prime_deterministic(n))) {
            result.factors.emplace_back(n, 1);
        } else {
            result.complete = false;
        }
    }
    return result;
}

bool all_divisors(const Int& n, std::vector<Int>& out) {
    SmallFactorization fac = factor_small(n);
    if (!fac.complete) return false;
    out = {Int(1)};
    for (const auto& [p, e] : fac.factors) {
        std::size_t count = out.size();
        Int pk(1);
        for (unsigned long k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < count; ++i) {
                out.push_back(out[i] * pk);
                if (out.size() > 4096) return false;
            }
        }
    }
    return true;
}

// Content-free integer version of f (multiplied by the lcm of denominators,
// divided by the gcd of numerators).
std::vector<Int> primitive_int_coeffs(const Polynomial& f) {
    Int lcm_den(1);
    for (const Rational& c : f.coefficients()) {
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    }
    std::vector<Int> coeffs;
    Int content(0);
    for (const Rational& c : f.coefficients()) {
        Rational scaled = c * Rational(lcm_den);
        coeffs.push_back(scaled.get_num());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), coeffs.back().get_mpz_t());
    }
    if (content > 1) {
        for (Int& c : coeffs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
    }
    return coeffs;
}

// Eisenstein criterion at every prime we can extract from the gcd of the
// non-leading coefficients.  A partial factorization still yields usable
// candidate primes.
IrredStatus eisenstein(const std::vector<Int>& c) {
    Int lower_gcd(0);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        mpz_gcd(lower_gcd.get_mpz_t(), lower_gcd.get_mpz_t(), c[i].get_mpz_t());
    }
    if (lower_gcd <= 1) return IrredStatus::unknown;
    SmallFactorization fac = factor_small(lower_gcd);
    for (const auto& [p, e] : fac.factors) {
        if (mpz_divisible_p(c.back().get_mpz_t(), p.get_mpz_t())) continue;
        Int p2 = p * p;
        if (!mpz_divisible_p(c.front().get_mpz_t(), p2.get_mpz_t())) {
            return IrredStatus::irreducible;
        }
    }
    return IrredStatus::unknown;
}

}  // namespace

IrredStatus check_irreducible_over_q(const Polynomial& f) {
    if (f.degree() < 1) throw ComputeError("irreducibility check: constant polynomial");
    if (f.degree() == 1) return IrredStatus::irreducible;
    std::vector<Int> c = primitive_int_coeffs(f);
    if (c.front() == 0) return IrredStatus::reducible;  // x divides f

    if (f.degree() == 2) {
        // Rational root iff the discriminant is a perfect square.
        Int disc = c[1] * c[1] - 4 * c[2] * c[0];
        if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) return IrredStatus::reducible;
        return IrredStatus::irreducible;
    }

    if (f.degree() == 3) {
        // A cubic is reducible over Q iff it has a rational root a/b with
        // a | c0 and b | c3.
        std::vector<Int> num_div, den_div;
        if (all_divisors(c[0], num_div) && all_divisors(c[3], den_div)) {
            for (const Int& a : num_div) {
                for (const Int& b : den_div) {
                    for (int sign : {1, -1}) {
                        Rational root(sign * a, b);
                        root.canonicalize();
                        if (f.evaluate(root) == 0) return IrredStatus::reducible;
                    }
                }
            }
            return IrredStatus::irreducible;
        }
        return eisenstein(c);
    }

    return eisenstein(c);
}

ValidationReport validate_factored(const FactoredPolynomial& fp) {
    ValidationReport report;
    const auto& factors = fp.factors();
    const PadicContext& ctx = fp.ctx();

    bool integral = true;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (!is_p_integral(factors[i].g, ctx)) {
            integral = false;
            report.checks.push_back({"p-integrality", CheckStatus::fail,
                                     "factor " + format_polynomial(factors[i].g) +
                                         " has a coefficient with negative valuation"});
        }
    }
    if (integral) {
        report.checks.push_back({"p-integrality", CheckStatus::pass, ""});
    }

    bool associated = false;
    for (std::size_t i = 0; i < factors.size() && !associated; ++i) {
        for (std::size_t j = i + 1; j < factors.size() && !associated; ++j) {
            if (are_associated(factors[i].g, factors[j].g, ctx)) {
                associated = true;
                report.checks.push_back({"pairwise non-association", CheckStatus::fail,
                                         "factors " + format_polynomial(factors[i].g) + " and " +
                                             format_polynomial(factors[j].g) + " are associated"});
            }
        }
    }
    if (!associated) {
        report.checks.push_back({"pairwise non-association", CheckStatus::pass, ""});
    }

    if (integral) {
        if (is_primitive_at(fp.expand(), ctx)) {
            report.checks.push_back({"primitivity", CheckStatus::pass, ""});
        } else {
            report.checks.push_back(
                {"primitivity", CheckStatus::fail, "expanded product is not primitive at p"});
        }
    }

    for (const Factor& f : factors) {
        switch (check_irreducible_over_q(f.g)) {
            case IrredStatus::irreducible:
                report.checks.push_back(
                    {"irreducibility of " + format_polynomial(f.g), CheckStatus::pass, ""});
                break;
            case IrredStatus::reducible:
                report.checks.push_back({"irreducibility of " + format_polynomial(f.g),
                                         CheckStatus::fail, "factor is reducible over Q"});
                break;
            case IrredStatus::unknown:
                report.checks.push_back({"irreducibility of " + format_polynomial(f.g),
                                         CheckStatus::unverified,
                                         "no applicable exact test; trusted as given"});
                break;
        }
    }
    return report;
}

void validate_factored_strict(const FactoredPolynomial& fp) {
    ValidationReport report = validate_factored(fp);
    if (!report.ok()) throw ComputeError("invalid factored polynomial: " + report.first_failure());
}

}  // namespace ivp
