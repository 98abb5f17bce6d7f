#pragma once

#include "ivpfactor/classify.hpp"

namespace ivp {

// Construction data for the tightness family with fdp-matrix rank r and
// fixed divisor valuation n: a prime p >= r+2, a complete residue system
// carried by primorial multiples, the shifted roots b_i, c_i, the h-family
// and its irreducible CRT replacements g_j.
struct RealizationSpec {
    long r = 0;
    long n = 0;
    Int p;
    Int primorial;  // product of all primes < p; the residue scale
    std::vector<Int> w;  // witness residues w_1..w_r
    std::vector<Int> a;  // a_1, a_2
    std::vector<Int> z;  // z_{r+3}..z_p (possibly empty)
    std::vector<Int> b;  // b_i = w_i + p
    std::vector<Int> c;  // c_i = a_i + p
    std::vector<Polynomial> h_family;
    std::vector<Polynomial> g_family;
    Int aux_prime;                                            // Q, Eisenstein prime
    Int small_prime_modulus;                                  // prod l^(e_l + n + 2)
    std::vector<std::pair<Int, long>> small_prime_exponents;  // (l, e_l) for primes l <= d
    Int expected_s;
};

// (n+1)((n-1)^(r-1) + (n-1)^(r-2)), the minimal non-uniquely-factoring power
// of the generated family.
Int expected_S(long r, long n);

// Prime, residues and shifts only; h and g families are filled by the
// builders below.
RealizationSpec choose_parameters(long r, long n);

void build_h_family(RealizationSpec& spec);

// Replaces each h_j by a monic g_j, Eisenstein at a fresh prime Q, with
// g_j = h_j mod l^(e_l+n+2) for every prime l up to the total degree; the
// congruence preserves all witness valuations.
void crt_irreducible_replacement(RealizationSpec& spec);

struct GeneratedFamily {
    RealizationSpec spec;
    FactoredPolynomial fp;
    Analysis analysis;
    std::optional<OracleResult> oracle;
};

struct GenerateOptions {
    std::optional<long> oracle_j_max;
    OracleMode oracle_mode = OracleMode::kernel_pruned;
    RefinementOptions refine;
};

// Runs the full pipeline and hard-verifies every hypothesis: the valuation
// table of the h-family, fixdiv = p^n, the bidiagonal reduced fdp matrix,
// the predicted kernel generator, irreducibility of F, and (when the oracle
// runs) minimality of expected_S.
GeneratedFamily generate_and_verify(long r, long n, const GenerateOptions& opts = {});

}  // namespace ivp
