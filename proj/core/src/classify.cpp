#include "ivpfactor/classify.hpp"

#include <algorithm>
#include <numeric>

namespace ivp {

namespace {

Int ceil_div_max(const std::vector<Int>& num, std::span<const long> den) {
    Int best(0);
    for (std::size_t i = 0; i < num.size(); ++i) {
        Int q;
        mpz_cdiv_q(q.get_mpz_t(), num[i].get_mpz_t(), Int(den[i]).get_mpz_t());
        if (q > best) best = q;
    }
    return best;
}

}  // namespace

Int nonunique_power_bound(const KernelVector& v, std::span<const long> m, long n) {
    if (v.v.size() != m.size()) {
        throw ComputeError("nonunique_power_bound: vector and multiplicities disagree in length");
    }
    if (std::all_of(v.v.begin(), v.v.end(), [](const Int& x) { return x == 0; })) {
        throw ComputeError("nonunique_power_bound: kernel vector must be nonzero");
    }
    Int s_plus = ceil_div_max(v.positive_part(), m);
    Int s_minus = ceil_div_max(v.negative_part(), m);
    Int bound = Int(n + 1) * (s_plus + s_minus);
    return bound < 2 ? Int(2) : bound;
}

UniquenessBounds uniqueness_check_bounds(long n, const Int& q, std::size_t r, std::size_t u) {
    if (n < 1) throw ComputeError("uniqueness_check_bounds: requires n >= 1");
    if (u > r) throw ComputeError("uniqueness_check_bounds: u exceeds r");
    UniquenessBounds out;

    Int power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(n),
                  static_cast<unsigned long>(r - u));
    out.bound_rank = 2 * Int(n + 1) * power;

    Int exponent;
    mpz_pow_ui(exponent.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>((n + 1) / 2));
    if (exponent > Int(1) << 22) {
        throw LimitError("residue-field uniqueness bound exponent q^ceil(n/2) = " + exponent.get_str() +
                         " is too large to materialize exactly");
    }
    Int q_power;
    mpz_ui_pow_ui(q_power.get_mpz_t(), static_cast<unsigned long>(n), exponent.get_ui());
    out.bound_q = 2 * Int(n + 1) * q_power;

    if (n == 1) out.sharper_n1 = 2;
    return out;
}

Analysis analyze(const FactoredPolynomial& fp, const AnalyzeOptions& opts) {
    Analysis a;
    if (opts.validate) {
        ValidationReport validation = validate_factored(fp);
        if (!validation.ok()) {
            throw ComputeError("invalid factored polynomial: " + validation.first_failure());
        }
        a.warnings = validation.warnings();
    }

    a.report = witness_classes(fp, opts.refine);
    a.n = a.report.n;
    a.matrix = build_fdp_matrix(a.report);
    a.reduced = reduce_fdp_matrix(a.matrix);
    a.kernel = rational_kernel_basis(a.reduced);

    std::vector<long> m = fp.multiplicities();
    Verdict& v = a.verdict;
    v.n = a.n;
    v.fdk_trivial = a.kernel.dimension == 0;
    v.proper_power = fp.multiplicity_gcd() > 1;
    v.kernel_criterion_applies = !v.proper_power && a.n >= 1;

    if (a.n >= 1) {
        v.irreducible = is_irreducible_element(fp, opts.refine);
    } else {
        // n = 0: F = f lies in R[x] and its divisors in Int(R) are plain
        // polynomial products, so F is irreducible exactly when it is a
        // single factor, and then every power factors uniquely.
        long total = std::accumulate(m.begin(), m.end(), 0L);
        v.irreducible = total == 1;
    }

    if (v.kernel_criterion_applies) {
        v.absolutely_irreducible = v.fdk_trivial ? TriState::yes : TriState::no;
        if (v.fdk_trivial && !v.irreducible) {
            throw VerifyError("trivial kernel with gcd(m) = 1 forces F irreducible, "
                              "but the divisor search found a split");
        }
    } else if (a.n == 0) {
        v.absolutely_irreducible = v.irreducible ? TriState::yes : TriState::no;
    } else {
        // Proper power with n >= 1: F = (prod g^{m/t} / p^{n/t})^t is a
        // product of non-units, hence reducible.
        v.absolutely_irreducible = TriState::no;
        if (v.irreducible) {
            throw VerifyError("f is a proper power, so F must be reducible, "
                              "but the divisor search found no split");
        }
    }

    if (a.n >= 1) {
        v.uniqueness_bounds = uniqueness_check_bounds(a.n, fp.ctx().residue_field_size(), a.reduced.rank,
                                     a.reduced.single_entry_rows);
        Int rows_cap;
        mpz_pow_ui(rows_cap.get_mpz_t(), fp.ctx().residue_field_size().get_mpz_t(),
                   static_cast<unsigned long>((a.n + 1) / 2));
        if (Int(static_cast<long>(a.reduced.rank - a.reduced.single_entry_rows)) <= rows_cap &&
            v.uniqueness_bounds->bound_rank > v.uniqueness_bounds->bound_q) {
            throw VerifyError("rank bound exceeds the q bound although r - u <= q^ceil(n/2)");
        }
    }

    if (!v.fdk_trivial && a.n >= 1) {
        std::size_t s = a.reduced.cols() - a.reduced.rank;
        a.siegel = siegel_bound(a.n, a.reduced.rank, a.reduced.single_entry_rows, s);
        Int radius = 2 * (*a.siegel);
        if (radius < 1) radius = 1;
        std::vector<KernelVector> vectors =
            enumerate_integer_kernel_parametrized(a.reduced, radius, opts.enumerate);
        if (vectors.empty()) {
            throw VerifyError("Siegel box of radius " + radius.get_str() +
                              " contains no integer kernel vector");
        }
        a.min_k = MinimalK{vectors.front().k_value(), vectors.front()};
        for (const KernelVector& kv : vectors) {
            Int bound = nonunique_power_bound(kv, m, a.n);
            if (!v.min_nonunique_bound || bound < *v.min_nonunique_bound) {
                v.min_nonunique_bound = bound;
                a.min_bound_vector = kv;
            }
        }
    }
    return a;
}

Verdict is_absolutely_irreducible(const FactoredPolynomial& fp, const AnalyzeOptions& opts) {
    return analyze(fp, opts).verdict;
}

}  // namespace ivp
