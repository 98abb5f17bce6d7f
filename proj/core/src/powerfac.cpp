#include "ivpfactor/powerfac.hpp"

#include <algorithm>

namespace ivp {

namespace {

std::vector<const Polynomial*> factor_pointers(const FactoredPolynomial& fp) {
    std::vector<const Polynomial*> out;
    out.reserve(fp.size());
    for (const Factor& f : fp.factors()) out.push_back(&f.g);
    return out;
}

void check_element_shape(const FactoredPolynomial& fp, const IvpElement& e) {
    if (e.exponents.size() != fp.size()) {
        throw ComputeError("element exponent vector does not match the factor set");
    }
    for (long k : e.exponents) {
        if (k < 0) throw ComputeError("element exponents must be nonnegative");
    }
    if (e.denominator_exponent < 0) {
        throw ComputeError("denominator exponent must be nonnegative");
    }
}

bool is_integer_valued_impl(FactorEvaluator& eval, const IvpElement& e,
                            const RefinementOptions& opts) {
    bool zero = std::all_of(e.exponents.begin(), e.exponents.end(),
                            [](long k) { return k == 0; });
    if (zero) return e.denominator_exponent <= 0;
    return weighted_min_at_least(eval, e.exponents, e.denominator_exponent, opts);
}

Int ceil_div_max(const std::vector<Int>& num, std::span<const long> den) {
    Int best(0);
    for (std::size_t i = 0; i < num.size(); ++i) {
        Int q;
        mpz_cdiv_q(q.get_mpz_t(), num[i].get_mpz_t(), Int(den[i]).get_mpz_t());
        if (q > best) best = q;
    }
    return best;
}

long to_long(const Int& x, const char* what) {
    if (!x.fits_slong_p()) throw ComputeError(std::string(what) + " does not fit a machine word");
    return x.get_si();
}

// Shared state for the divisor searches: the witness rows give a cheap
// kernel-coset membership test and the evaluator caches factor valuations
// across all candidates.
struct Session {
    const FactoredPolynomial& fp;
    std::vector<long> m;
    long n;
    WitnessReport report;
    FdpMatrix reduced;
    FactorEvaluator eval;
    RefinementOptions refine;

    Session(const FactoredPolynomial& fp_in, const RefinementOptions& opts)
        : fp(fp_in),
          m(fp_in.multiplicities()),
          n(0),
          report(witness_classes(fp_in, opts)),
          reduced(reduce_fdp_matrix(build_fdp_matrix(report))),
          eval(fp_in.ctx(), factor_pointers(fp_in)),
          refine(opts) {
        n = report.n;
    }

    // Coset law: an integer-valued divisor prod g^k / p^l of a power
    // of F satisfies <k, v_P(w)> = l for every witness w.
    bool in_kernel_coset(std::span<const long> k, long l) const {
        for (const auto& row : reduced.rows) {
            long dot = 0;
            for (std::size_t i = 0; i < row.size(); ++i) dot += row[i] * k[i];
            if (dot != l) return false;
        }
        return true;
    }

    bool integer_valued(const IvpElement& e) {
        return is_integer_valued_impl(eval, e, refine);
    }
};

// Walks candidates (j fixed) in (l ascending, k lexicographic) order and
// calls visit for each split where both sides are integer-valued.  visit
// returns true to stop the scan.
template <typename Visit>
void scan_splits(Session& session, long j, const OracleOptions& opts, Visit visit) {
    OracleMode mode = opts.mode;
    const std::vector<long>& m = session.m;
    long n = session.n;
    std::size_t cols = m.size();
    std::vector<long> bound(cols);
    for (std::size_t i = 0; i < cols; ++i) bound[i] = j * m[i];

    if (mode == OracleMode::full) {
        Int candidates(j * n + 1);
        for (std::size_t i = 0; i < cols; ++i) candidates *= Int(bound[i] + 1);
        if (candidates > Int(static_cast<unsigned long>(opts.candidate_limit))) {
            throw LimitError("full-mode search at power " + std::to_string(j) + " would visit " +
                             candidates.get_str() + " candidates (limit " +
                             std::to_string(opts.candidate_limit) +
                             "); use kernel-pruned mode");
        }
    }

    std::vector<long> k(cols, 0);
    std::vector<long> complement(cols);
    for (long l = 0; l <= j * n; ++l) {
        std::fill(k.begin(), k.end(), 0L);
        while (true) {
            if (mode != OracleMode::kernel_pruned || session.in_kernel_coset(k, l)) {
                for (std::size_t i = 0; i < cols; ++i) complement[i] = bound[i] - k[i];
                IvpElement left{k, l};
                IvpElement right{complement, j * n - l};
                if (session.integer_valued(left) && session.integer_valued(right)) {
                    if (visit(FactorizationPair{j, std::move(left), std::move(right)})) return;
                }
            }
            bool done = true;
            for (std::size_t i = cols; i-- > 0;) {
                if (k[i] < bound[i]) {
                    ++k[i];
                    done = false;
                    break;
                }
                k[i] = 0;
            }
            if (done) break;
        }
    }
}

bool nontrivial(const FactorizationPair& pair, std::span<const long> m, long n) {
    return !is_power_of_F(pair.left, m, n) && !is_power_of_F(pair.right, m, n);
}

bool irreducible_impl(Session& session) {
    if (session.n < 1) throw ComputeError("is_irreducible_element requires n >= 1");
    const std::vector<long>& m = session.m;
    std::size_t cols = m.size();
    std::vector<long> k(cols, 0);
    for (long l = 0; l <= session.n; ++l) {
        std::fill(k.begin(), k.end(), 0L);
        while (true) {
            bool low = l == 0 && std::all_of(k.begin(), k.end(), [](long x) { return x == 0; });
            bool high = l == session.n && k == m;
            if (!low && !high) {
                IvpElement side{k, l};
                std::vector<long> comp(cols);
                for (std::size_t i = 0; i < cols; ++i) comp[i] = m[i] - k[i];
                IvpElement other{comp, session.n - l};
                if (session.integer_valued(side) && session.integer_valued(other)) {
                    return false;
                }
            }
            bool done = true;
            for (std::size_t i = cols; i-- > 0;) {
                if (k[i] < m[i]) {
                    ++k[i];
                    done = false;
                    break;
                }
                k[i] = 0;
            }
            if (done) break;
        }
    }
    return true;
}

}  // namespace

bool is_integer_valued(const FactoredPolynomial& fp, const IvpElement& e,
                       const RefinementOptions& opts) {
    check_element_shape(fp, e);
    FactorEvaluator eval(fp.ctx(), factor_pointers(fp));
    return is_integer_valued_impl(eval, e, opts);
}

bool is_power_of_F(const IvpElement& e, std::span<const long> m, long n) {
    if (e.exponents.size() != m.size()) {
        throw ComputeError("is_power_of_F: exponent vector does not match the factor set");
    }
    bool zero = std::all_of(e.exponents.begin(), e.exponents.end(),
                            [](long k) { return k == 0; });
    if (zero) return e.denominator_exponent == 0;  // F^0 = 1
    if (m.empty() || m[0] <= 0) throw ComputeError("is_power_of_F: invalid multiplicities");
    if (e.exponents[0] % m[0] != 0) return false;
    long t = e.exponents[0] / m[0];
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (e.exponents[i] != t * m[i]) return false;
    }
    return e.denominator_exponent == t * n;
}

namespace {

// Kernel membership of v against the witness rows, plus the s+/s- exponent
// thresholds of the pair construction.
struct ConstructionContext {
    Session session;
    Int s_plus;
    Int s_minus;

    ConstructionContext(const FactoredPolynomial& fp, const KernelVector& v,
                        const RefinementOptions& opts)
        : session(fp, opts) {
        if (v.v.size() != fp.size()) {
            throw ComputeError("kernel vector length does not match the factor set");
        }
        bool zero = std::all_of(v.v.begin(), v.v.end(), [](const Int& x) { return x == 0; });
        if (zero) throw ComputeError("kernel vector must be nonzero");
        for (const auto& row : session.report.classes) {
            Int dot(0);
            for (std::size_t i = 0; i < v.v.size(); ++i) dot += Int(row.valuations[i]) * v.v[i];
            if (dot != 0) {
                throw ComputeError("vector is not in the fixed divisor kernel (witness class " +
                                   row.cls.representative.get_str() + ")");
            }
        }
        s_plus = ceil_div_max(v.positive_part(), session.m);
        s_minus = ceil_div_max(v.negative_part(), session.m);
    }
};

IvpElement build_element(const std::vector<long>& m, const std::vector<Int>& signed_v, long k,
                         long n, int sign) {
    IvpElement e;
    e.exponents.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        Int kexp = Int(k) * m[i] - sign * signed_v[i];
        if (kexp < 0) {
            throw ComputeError("exponent k*m - v has a negative component; increase k");
        }
        e.exponents[i] = to_long(kexp, "element exponent");
    }
    e.denominator_exponent = k * n;
    return e;
}

}  // namespace

IvpElement construct_H(const FactoredPolynomial& fp, const KernelVector& v, long k,
                       const RefinementOptions& opts) {
    ConstructionContext cc(fp, v, opts);
    Int k_min = (cc.session.n + 1) * cc.s_plus;
    if (k < 1 || k_min > k) {
        throw ComputeError("k = " + std::to_string(k) + " violates k >= max(1, (n+1)ceil(v+/m)) = " +
                           (k_min > 1 ? k_min : Int(1)).get_str());
    }
    IvpElement h = build_element(cc.session.m, v.v, k, cc.session.n, +1);
    if (!cc.session.integer_valued(h)) {
        throw VerifyError("constructed H is not integer-valued");
    }
    if (is_power_of_F(h, cc.session.m, cc.session.n)) {
        throw VerifyError("constructed H is a power of F");
    }
    return h;
}

FactorizationPair construct_factorization_pair(const FactoredPolynomial& fp, const KernelVector& v,
                                               long k, long l, const RefinementOptions& opts) {
    ConstructionContext cc(fp, v, opts);
    long n = cc.session.n;
    Int k_min = (n + 1) * cc.s_plus;
    Int l_min = (n + 1) * cc.s_minus;
    if (k < 1 || k_min > k) {
        throw ComputeError("k = " + std::to_string(k) + " violates k >= max(1, (n+1)ceil(v+/m))");
    }
    if (l < 1 || l_min > l) {
        throw ComputeError("l = " + std::to_string(l) + " violates l >= max(1, (n+1)ceil(v-/m))");
    }

    FactorizationPair pair;
    pair.j = k + l;
    pair.left = build_element(cc.session.m, v.v, k, n, +1);
    pair.right = build_element(cc.session.m, v.v, l, n, -1);
    if (!cc.session.integer_valued(pair.left) || !cc.session.integer_valued(pair.right)) {
        throw VerifyError("constructed factorization pair has a non-integer-valued side");
    }
    if (is_power_of_F(pair.left, cc.session.m, n) || is_power_of_F(pair.right, cc.session.m, n)) {
        throw VerifyError("constructed factorization pair degenerates to powers of F");
    }
    for (std::size_t i = 0; i < cc.session.m.size(); ++i) {
        if (pair.left.exponents[i] + pair.right.exponents[i] != pair.j * cc.session.m[i]) {
            throw VerifyError("factorization pair exponent bookkeeping is broken");
        }
    }
    if (pair.left.denominator_exponent + pair.right.denominator_exponent != pair.j * n) {
        throw VerifyError("factorization pair denominator bookkeeping is broken");
    }
    return pair;
}

bool is_irreducible_element(const FactoredPolynomial& fp, const RefinementOptions& opts) {
    Session session(fp, opts);
    return irreducible_impl(session);
}

std::optional<OracleResult> min_nonunique_power(const FactoredPolynomial& fp,
                                                const OracleOptions& opts) {
    if (opts.j_max < 2) throw ComputeError("oracle requires j_max >= 2");
    Session session(fp, opts.refine);
    if (session.n < 1) throw ComputeError("oracle requires n >= 1");
    if (!irreducible_impl(session)) {
        throw ComputeError("oracle requires F irreducible; F itself already factors");
    }

    for (long j = 2; j <= opts.j_max; ++j) {
        std::optional<OracleResult> found;
        scan_splits(session, j, opts, [&](FactorizationPair pair) {
            if (!nontrivial(pair, session.m, session.n)) return false;
            found = OracleResult{j, std::move(pair)};
            return true;
        });
        if (found) return found;
    }
    return std::nullopt;
}

std::vector<FactorizationPair> enumerate_splits(const FactoredPolynomial& fp, long j,
                                                const OracleOptions& opts) {
    if (j < 1) throw ComputeError("enumerate_splits requires j >= 1");
    Session session(fp, opts.refine);
    std::vector<FactorizationPair> out;
    scan_splits(session, j, opts, [&](FactorizationPair pair) {
        out.push_back(std::move(pair));
        return false;
    });
    return out;
}

}  // namespace ivp
