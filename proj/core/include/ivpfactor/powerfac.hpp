#pragma once

#include <optional>

#include "ivpfactor/fdkernel.hpp"

namespace ivp {

// prod g^{k_g} / p^l, a candidate element of Int(R) over the factor base of
// some FactoredPolynomial.
struct IvpElement {
    std::vector<long> exponents;
    long denominator_exponent = 0;

    friend bool operator==(const IvpElement& a, const IvpElement& b) {
        return a.exponents == b.exponents && a.denominator_exponent == b.denominator_exponent;
    }
};

// F^j = left * right with exact exponent bookkeeping:
// left.exponents + right.exponents = j*m, left.l + right.l = j*n.
struct FactorizationPair {
    long j = 0;
    IvpElement left;
    IvpElement right;
};

// fixdiv(prod g^{k_g}) >= p^l, decided by threshold refinement.
bool is_integer_valued(const FactoredPolynomial& fp, const IvpElement& e,
                       const RefinementOptions& opts = {});

// exponents = t*m and l = t*n for some t >= 0.
bool is_power_of_F(const IvpElement& e, std::span<const long> m, long n);

// H = prod g^{k*m_g - v_g} / p^{kn} for a nonzero integer kernel vector v and
// k >= max(1, (n+1)*ceil(max_g v+_g/m_g)).  Integer-valuedness and
// not-a-power-of-F are verified; violations are hard errors.
IvpElement construct_H(const FactoredPolynomial& fp, const KernelVector& v, long k,
                       const RefinementOptions& opts = {});

// left = prod g^{km-v}/p^{kn}, right = prod g^{lm+v}/p^{ln}; the product is
// F^{k+l} exactly and neither side is a power of F.
FactorizationPair construct_factorization_pair(const FactoredPolynomial& fp, const KernelVector& v,
                                               long k, long l, const RefinementOptions& opts = {});

// Exhaustive two-factor split search of F itself over 0 <= k <= m,
// 0 <= l <= n.  Requires n >= 1.
bool is_irreducible_element(const FactoredPolynomial& fp, const RefinementOptions& opts = {});

enum class OracleMode { full, kernel_pruned };

struct OracleOptions {
    OracleMode mode = OracleMode::kernel_pruned;
    long j_max = 12;
    // Cap on candidate pairs (k, l) per power in full mode.
    unsigned long long candidate_limit = 100'000'000;
    RefinementOptions refine;
};

struct OracleResult {
    long s = 0;
    FactorizationPair witness;
};

// Smallest 2 <= j <= j_max such that F^j splits into two integer-valued
// factors neither of which is a power of F, with the witness split found
// first in (j, l, lexicographic k) order.  Requires F irreducible.
//
// Candidates in kernel-pruned mode are restricted to k - (l/n) m in ker(A),
// which every true divisor satisfies; full mode decides every candidate by
// the integer-valuedness test alone.
std::optional<OracleResult> min_nonunique_power(const FactoredPolynomial& fp,
                                                const OracleOptions& opts = {});

// Every split of F^j into two integer-valued factors, trivial powers of F
// included, in canonical order.
std::vector<FactorizationPair> enumerate_splits(const FactoredPolynomial& fp, long j,
                                                const OracleOptions& opts = {});

}  // namespace ivp
