#pragma once

#include "ivpfactor/powerfac.hpp"

namespace ivp {

// (n+1)(ceil(max_g v+_g/m_g) + ceil(max_g v-_g/m_g)): F^j factors
// non-uniquely for every j at least this, given a nonzero integer kernel
// vector v and irreducible F.  Reported at least 2 so that the exponent pair
// construction with k, l >= 1 stays admissible for one-sided vectors.
Int nonunique_power_bound(const KernelVector& v, std::span<const long> m, long n);

struct UniquenessBounds {
    Int bound_rank;                  // 2(n+1)n^(r-u)
    Int bound_q;                     // 2(n+1)n^(q^ceil(n/2))
    std::optional<long> sharper_n1;  // 2 when n = 1 (the known square-free denominator bound)
};

UniquenessBounds uniqueness_check_bounds(long n, const Int& q, std::size_t r, std::size_t u);

enum class TriState { yes, no, not_applicable };

struct Verdict {
    long n = 0;
    bool irreducible = false;
    bool proper_power = false;  // gcd of multiplicities > 1
    bool fdk_trivial = false;
    // The kernel characterization applies when f is not a proper power and
    // n >= 1; absolutely_irreducible then equals fdk_trivial.
    bool kernel_criterion_applies = false;
    TriState absolutely_irreducible = TriState::not_applicable;
    std::optional<Int> min_nonunique_bound;
    std::optional<UniquenessBounds> uniqueness_bounds;  // set when n >= 1
};

struct Analysis {
    long n = 0;
    WitnessReport report;
    FdpMatrix matrix;   // unreduced, one row per witness class
    FdpMatrix reduced;  // Q-linearly independent rows
    KernelDescription kernel;
    std::optional<Int> siegel;      // floor(n^((r-u)/s)) when the kernel is nontrivial and n >= 1
    std::optional<MinimalK> min_k;  // minimal ||v+|| + ||v-|| witness
    // Kernel vector minimizing the non-uniqueness bound; may differ from the
    // minimal-K vector when multiplicities are not all 1.
    std::optional<KernelVector> min_bound_vector;
    Verdict verdict;
    std::vector<std::string> warnings;
};

struct AnalyzeOptions {
    RefinementOptions refine;
    EnumerationOptions enumerate;
    bool validate = true;
};

Analysis analyze(const FactoredPolynomial& fp, const AnalyzeOptions& opts = {});

Verdict is_absolutely_irreducible(const FactoredPolynomial& fp, const AnalyzeOptions& opts = {});

}  // namespace ivp
