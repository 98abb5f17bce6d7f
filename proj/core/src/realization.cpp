#include "ivpfactor/realization.hpp"

#include <algorithm>
#include <map>

namespace ivp {

namespace {

Int next_prime(const Int& x) {
    Int p;
    mpz_nextprime(p.get_mpz_t(), x.get_mpz_t());
    return p;
}

void require(bool condition, const std::string& hypothesis) {
    if (!condition) throw VerifyError("realization verification failed: " + hypothesis);
}

// c = 0 mod modulus, c = target mod coprime; minimal nonnegative solution.
Int crt_solve(const Int& modulus, const Int& coprime, const Int& target) {
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), coprime.get_mpz_t()) == 0) {
        throw VerifyError("CRT moduli are not coprime");
    }
    Int t;
    mpz_fdiv_r(t.get_mpz_t(), target.get_mpz_t(), coprime.get_mpz_t());
    Int c = modulus * ((inv * t) % coprime);
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), Int(modulus * coprime).get_mpz_t());
    return c;
}

long h_value_valuation(const RealizationSpec& spec, const PadicContext& ctx, std::size_t j,
                       const Int& point) {
    Valuation v = ctx.valuation(spec.h_family[j].evaluate(point));
    require(!v.is_infinite(), "h_" + std::to_string(j + 1) + " does not vanish at the test point");
    return v.value();
}

// Valuation table of the tightness construction (with the r = 2
// overlap resolved so that row w_r stays (0,...,0,n)).
long expected_h_at_w(long r, long n, long i, long j) {
    if (i == j && j <= r - 1) return 1;
    if (i == j - 1 && 2 <= j && j <= r) return n - 1;
    if (i == r && j == r + 1) return n;
    return 0;
}

}  // namespace

Int expected_S(long r, long n) {
    if (r < 2 || n < 2) throw ComputeError("expected_S requires r, n >= 2");
    Int base(n - 1);
    Int high, low;
    mpz_pow_ui(high.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(r - 1));
    mpz_pow_ui(low.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(r - 2));
    return Int(n + 1) * (high + low);
}

RealizationSpec choose_parameters(long r, long n) {
    if (r < 2 || n < 2) throw ComputeError("choose_parameters requires r, n >= 2");
    RealizationSpec spec;
    spec.r = r;
    spec.n = n;
    spec.p = next_prime(Int(r + 1));  // smallest prime >= r + 2

    // Multiples of the primorial of p are distinct mod p but all congruent
    // mod every smaller prime, so the residue system is complete mod p and
    // mod no smaller prime.
    spec.primorial = 1;
    for (Int q(2); q < spec.p; q = next_prime(q)) spec.primorial *= q;

    long index = 0;
    for (long i = 0; i < r; ++i) spec.w.push_back(spec.primorial * index++);
    for (long i = 0; i < 2; ++i) spec.a.push_back(spec.primorial * index++);
    for (Int k = index; k < spec.p; ++k) spec.z.push_back(spec.primorial * k);

    for (const Int& wi : spec.w) spec.b.push_back(wi + spec.p);
    for (const Int& ai : spec.a) spec.c.push_back(ai + spec.p);
    spec.expected_s = expected_S(r, n);
    return spec;
}

void build_h_family(RealizationSpec& spec) {
    const long r = spec.r;
    const unsigned long n = static_cast<unsigned long>(spec.n);
    auto root = [](const Int& a) { return Polynomial::linear_root(a); };

    spec.h_family.clear();
    for (long j = 1; j <= r + 1; ++j) {
        Polynomial h;
        if (j == 1) {
            h = root(spec.b[0]) * root(spec.c[0]).pow(n + 1);
        } else if (j == 2 && r == 2) {
            // The j = 2 and j = r cases of the construction coincide for r = 2;
            // dropping the (x - b_2) factor keeps row w_2 equal to (0, ..., 0, n).
            h = root(spec.b[0]).pow(n - 1) * root(spec.c[1]).pow(n + 1);
        } else if (j == 2) {
            h = root(spec.b[0]).pow(n - 1) * root(spec.b[1]) * root(spec.c[1]).pow(n + 1);
        } else if (j <= r - 1) {
            h = root(spec.b[j - 2]).pow(n - 1) * root(spec.b[j - 1]);
        } else if (j == r) {
            h = root(spec.b[r - 2]).pow(n - 1);
        } else {
            h = root(spec.b[r - 1]).pow(n);
            for (const Int& z : spec.z) h = h * root(z).pow(n + 1);
        }
        spec.h_family.push_back(std::move(h));
    }
}

void crt_irreducible_replacement(RealizationSpec& spec) {
    long degree_sum = 0;
    for (const Polynomial& h : spec.h_family) {
        require(!h.is_zero() && h.coefficients().back() == 1, "h_j is monic");
        degree_sum += h.degree();
    }
    require(spec.p <= degree_sum,
            "p <= sum of degrees, so the congruence covers p^{n+2}");

    std::vector<const Polynomial*> h_ptr;
    for (const Polynomial& h : spec.h_family) h_ptr.push_back(&h);
    std::vector<long> ones(h_ptr.size(), 1);

    spec.small_prime_exponents.clear();
    spec.small_prime_modulus = 1;
    for (Int l(2); l <= degree_sum; l = next_prime(l)) {
        FactorEvaluator eval(PadicContext(l), h_ptr);
        long e = weighted_global_min(eval, ones).min.value();
        spec.small_prime_exponents.emplace_back(l, e);
        Int power;
        mpz_pow_ui(power.get_mpz_t(), l.get_mpz_t(),
                   static_cast<unsigned long>(e + spec.n + 2));
        spec.small_prime_modulus *= power;
    }
    spec.aux_prime = next_prime(Int(degree_sum));

    const Int& big_n = spec.small_prime_modulus;
    const Int& q = spec.aux_prime;
    Int q2 = q * q;

    spec.g_family.clear();
    for (const Polynomial& h : spec.h_family) {
        std::vector<Rational> coeffs(h.coefficients().begin(), h.coefficients().end());
        std::size_t deg = static_cast<std::size_t>(h.degree());
        for (std::size_t j = 0; j < deg; ++j) {
            Int hj = coeffs[j].get_num();
            Int c = j == 0 ? crt_solve(big_n, q2, q - hj) : crt_solve(big_n, q, -hj);
            coeffs[j] += Rational(c);
        }
        spec.g_family.emplace_back(std::move(coeffs));
    }

    // Constant terms must be pairwise distinct so the g_j are pairwise
    // non-associated; bump by the full CRT modulus until they are.
    Int bump = big_n * q2;
    for (std::size_t i = 1; i < spec.g_family.size(); ++i) {
        bool collision = true;
        while (collision) {
            collision = false;
            for (std::size_t k = 0; k < i; ++k) {
                if (spec.g_family[k].coeff(0) == spec.g_family[i].coeff(0)) {
                    std::vector<Rational> coeffs(spec.g_family[i].coefficients().begin(),
                                                 spec.g_family[i].coefficients().end());
                    coeffs[0] += Rational(bump);
                    spec.g_family[i] = Polynomial(std::move(coeffs));
                    collision = true;
                    break;
                }
            }
        }
    }

    PadicContext ctx_q(q);
    PadicContext ctx_p(spec.p);
    for (std::size_t i = 0; i < spec.g_family.size(); ++i) {
        const Polynomial& g = spec.g_family[i];
        const Polynomial& h = spec.h_family[i];
        require(g.degree() == h.degree(), "deg(g_j) = deg(h_j)");
        require(g.coefficients().back() == 1, "g_j is monic");
        for (long j = 0; j < g.degree(); ++j) {
            require(ctx_q.valuation(g.coeff(static_cast<std::size_t>(j))) >= Valuation(1),
                    "Eisenstein at Q: Q divides every lower coefficient of g_j");
        }
        require(ctx_q.valuation(g.coeff(0)) == Valuation(1),
                "Eisenstein at Q: Q^2 does not divide the constant term of g_j");
        require(congruent_mod_power(g, h, spec.n + 2, ctx_p), "g_j = h_j mod p^{n+2}");
    }
}

GeneratedFamily generate_and_verify(long r, long n, const GenerateOptions& opts) {
    RealizationSpec spec = choose_parameters(r, n);
    build_h_family(spec);
    PadicContext ctx(spec.p);

    // Valuation table of the h-family at the witness residues.
    for (long i = 1; i <= r; ++i) {
        for (long j = 1; j <= r + 1; ++j) {
            long got = h_value_valuation(spec, ctx, static_cast<std::size_t>(j - 1),
                                         spec.w[static_cast<std::size_t>(i - 1)]);
            require(got == expected_h_at_w(r, n, i, j),
                    "v(h_" + std::to_string(j) + "(w_" + std::to_string(i) + ")) = " +
                        std::to_string(expected_h_at_w(r, n, i, j)) + ", got " +
                        std::to_string(got));
        }
    }
    // v(h_j(a_l)) = n+1 for j = l and 0 otherwise.
    for (long l = 1; l <= 2; ++l) {
        for (long j = 1; j <= r + 1; ++j) {
            long expected = j == l ? n + 1 : 0;
            long got = h_value_valuation(spec, ctx, static_cast<std::size_t>(j - 1),
                                         spec.a[static_cast<std::size_t>(l - 1)]);
            require(got == expected, "v(h_" + std::to_string(j) + "(a_" + std::to_string(l) +
                                         ")) = " + std::to_string(expected) + ", got " +
                                         std::to_string(got));
        }
    }
    {
        std::vector<const Polynomial*> h_ptr;
        for (const Polynomial& h : spec.h_family) h_ptr.push_back(&h);
        std::vector<long> ones(h_ptr.size(), 1);
        FactorEvaluator eval(ctx, h_ptr);
        require(weighted_global_min(eval, ones, opts.refine).min == Valuation(n),
                "v(fixdiv(prod h_j)) = n");
    }

    crt_irreducible_replacement(spec);

    // The congruence transfers every relevant valuation from h to g.
    for (long i = 1; i <= r; ++i) {
        for (long j = 1; j <= r + 1; ++j) {
            Valuation got = ctx.valuation(
                spec.g_family[static_cast<std::size_t>(j - 1)].evaluate(
                    spec.w[static_cast<std::size_t>(i - 1)]));
            require(got == Valuation(expected_h_at_w(r, n, i, j)),
                    "v(g_j(w_i)) matches the h-family table");
        }
    }
    for (long l = 1; l <= 2; ++l) {
        for (long j = 1; j <= r + 1; ++j) {
            Valuation got = ctx.valuation(
                spec.g_family[static_cast<std::size_t>(j - 1)].evaluate(
                    spec.a[static_cast<std::size_t>(l - 1)]));
            require(got == Valuation(j == l ? n + 1 : 0), "v(g_j(a_l)) matches the h-family");
        }
    }

    std::vector<Factor> factors;
    for (const Polynomial& g : spec.g_family) factors.push_back({g, 1});
    FactoredPolynomial fp(ctx, std::move(factors));

    AnalyzeOptions analyze_opts;
    analyze_opts.refine = opts.refine;
    Analysis analysis = analyze(fp, analyze_opts);
    require(analysis.warnings.empty(), "all factors certified irreducible");
    require(analysis.n == n, "v(fixdiv(f)) = n");

    // Reduced fdp matrix is the bidiagonal target, up to row order.
    require(analysis.reduced.rank == static_cast<std::size_t>(r), "rank(A) = r");
    std::vector<std::vector<long>> expected_rows;
    for (long i = 1; i <= r; ++i) {
        std::vector<long> row(static_cast<std::size_t>(r + 1), 0);
        for (long j = 1; j <= r + 1; ++j) {
            row[static_cast<std::size_t>(j - 1)] = expected_h_at_w(r, n, i, j);
        }
        expected_rows.push_back(std::move(row));
    }
    std::vector<std::vector<long>> got_rows = analysis.reduced.rows;
    std::sort(got_rows.begin(), got_rows.end());
    std::sort(expected_rows.begin(), expected_rows.end());
    require(got_rows == expected_rows, "reduced fdp matrix equals the bidiagonal form");

    // Kernel generated by v_i = (-1)^(r-i) (n-1)^(r-i), v_{r+1} = 0.
    require(analysis.kernel.dimension == 1, "dim fdk(f) = 1");
    std::vector<Int> predicted(static_cast<std::size_t>(r + 1), Int(0));
    for (long i = 1; i <= r; ++i) {
        Int mag;
        mpz_pow_ui(mag.get_mpz_t(), Int(n - 1).get_mpz_t(), static_cast<unsigned long>(r - i));
        predicted[static_cast<std::size_t>(i - 1)] = (r - i) % 2 == 0 ? mag : -mag;
    }
    for (Int& x : predicted) {
        if (x != 0) {
            if (x < 0) {
                for (Int& y : predicted) y = -y;
            }
            break;
        }
    }
    require(analysis.kernel.sample_integer_vectors.front() == predicted,
            "kernel generator proportional to (-1)^(r-i)(n-1)^(r-i)");

    require(analysis.verdict.irreducible, "F is irreducible");
    require(analysis.verdict.absolutely_irreducible == TriState::no,
            "F is not absolutely irreducible");
    require(analysis.min_k.has_value(), "minimal K exists");
    require(Int(n + 1) * analysis.min_k->k == spec.expected_s,
            "(n+1) K equals the predicted minimal exponent");

    GeneratedFamily out{std::move(spec), std::move(fp), std::move(analysis), std::nullopt};
    if (opts.oracle_j_max) {
        OracleOptions oracle_opts;
        oracle_opts.mode = opts.oracle_mode;
        oracle_opts.j_max = *opts.oracle_j_max;
        oracle_opts.refine = opts.refine;
        out.oracle = min_nonunique_power(out.fp, oracle_opts);
        if (out.spec.expected_s <= *opts.oracle_j_max) {
            require(out.oracle.has_value(), "oracle finds a non-unique power within j_max");
            require(Int(out.oracle->s) == out.spec.expected_s,
                    "oracle minimal S equals (n+1)((n-1)^(r-1)+(n-1)^(r-2))");
        } else {
            require(!out.oracle.has_value(), "no non-unique power below the predicted S");
        }
    }
    return out;
}

}  // namespace ivp
