#pragma once

#include <optional>
#include <vector>

#include "ivpfactor/fixdiv.hpp"

namespace ivp {

// Matrix whose rows are witness valuation vectors; ker(A) over Q is the
// fixed divisor kernel of f.  Entries are nonnegative and bounded by n.
struct FdpMatrix {
    std::vector<std::vector<long>> rows;
    std::vector<Int> row_labels;  // witness class representatives
    std::size_t num_cols = 0;
    bool reduced = false;
    std::size_t rank = 0;               // r, valid once reduced
    std::size_t single_entry_rows = 0;  // u, valid once reduced

    std::size_t cols() const { return num_cols; }
};

FdpMatrix build_fdp_matrix(const WitnessReport& report);

// Removes duplicate rows, then keeps a maximal Q-linearly independent subset
// (first occurrences win).  The kernel is unchanged.
FdpMatrix reduce_fdp_matrix(const FdpMatrix& a);

struct KernelDescription {
    std::size_t dimension = 0;
    // One vector per free column of the reduced row echelon form; entry 1 at
    // the free column itself.
    std::vector<std::vector<Rational>> rational_basis;
    // The same vectors scaled primitive-integer, first nonzero entry positive.
    std::vector<std::vector<Int>> sample_integer_vectors;
};

KernelDescription rational_kernel_basis(const FdpMatrix& a);  // requires reduced

// floor(n^((r-u)/s)), computed exactly.  s = |P| - r must be positive.
Int siegel_bound(long n, std::size_t r, std::size_t u, std::size_t s);

// Integer kernel vector with positive/negative part bookkeeping.
struct KernelVector {
    std::vector<Int> v;

    std::vector<Int> positive_part() const;
    std::vector<Int> negative_part() const;
    Int inf_norm() const;
    Int positive_inf_norm() const;
    Int negative_inf_norm() const;
    // ||v+||_inf + ||v-||_inf
    Int k_value() const;

    friend bool operator==(const KernelVector& a, const KernelVector& b) { return a.v == b.v; }
};

struct EnumerationOptions {
    unsigned long long candidate_limit = 100'000'000;
};

// All nonzero integer vectors v with ||v||_inf <= radius and A v = 0, up to
// sign (first nonzero entry positive), sorted by (k_value, lexicographic).
// Walks the full coordinate box; errors out above the candidate limit.
std::vector<KernelVector> enumerate_integer_kernel(const FdpMatrix& a, const Int& radius,
                                                   const EnumerationOptions& opts = {});
// Identical output, but walks only the kernel's free coordinates; the
// fallback the box enumeration error suggests.
std::vector<KernelVector> enumerate_integer_kernel_parametrized(const FdpMatrix& a,
                                                                const Int& radius,
                                                                const EnumerationOptions& opts = {});

struct MinimalK {
    Int k;
    KernelVector vector;
};

// Minimizes ||v+||_inf + ||v-||_inf over nonzero integer kernel vectors.
// Searching the box of radius 2*siegel_bound suffices: a global minimizer v*
// has ||v*||_inf <= K(v*) <= K(v_Siegel) <= 2*siegel_bound.
std::optional<MinimalK> minimal_K(const FdpMatrix& a, long n, const EnumerationOptions& opts = {});

}  // namespace ivp
