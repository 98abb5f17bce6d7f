#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ivpfactor/poly.hpp"

namespace ivp {

// The residue class representative + p^depth Z_(p).
struct ClassId {
    Int representative;
    int depth = 1;
};

struct RefinementOptions {
    // Maximum residue-class refinement depth before giving up.
    int depth_cap = 64;
    // Maximum number of residue classes enumerated at witness depth
    // (q^ceil(n/2) grows quickly).
    unsigned long long class_limit = 1ull << 22;
};

// Memoizes v(g_i(a)) per factor and evaluation point.  The refinement walks
// of different weight vectors over the same factor set revisit the same
// points constantly, so this cache is what makes the divisor searches cheap.
class FactorEvaluator {
public:
    FactorEvaluator(PadicContext ctx, std::vector<const Polynomial*> factors);

    const PadicContext& ctx() const { return ctx_; }
    std::size_t factor_count() const { return factors_.size(); }

    Valuation factor_valuation(std::size_t i, const Int& a);
    // sum_i weights[i] * v(g_i(a)) with 0 * infinity = 0.
    Valuation weighted_valuation(std::span<const long> weights, const Int& a);
    std::vector<Valuation> valuation_vector(const Int& a);

private:
    PadicContext ctx_;
    std::vector<const Polynomial*> factors_;
    // Integer coefficient fast path, lowest degree first; empty when a factor
    // has a genuinely rational coefficient.
    std::vector<std::vector<Int>> int_coeffs_;
    std::vector<std::map<Int, Valuation>> cache_;
};

struct ClassMin {
    Valuation min;
    // Smallest nonnegative integer found attaining the minimum; present
    // whenever the minimum is finite.
    std::optional<Int> point;
};

// Exact minimum of the weighted valuation over one residue class, by
// breadth-first class refinement.
ClassMin weighted_class_min(FactorEvaluator& eval, std::span<const long> weights,
                            const ClassId& cls, const RefinementOptions& opts = {});
// Exact minimum over all of Z_(p).
ClassMin weighted_global_min(FactorEvaluator& eval, std::span<const long> weights,
                             const RefinementOptions& opts = {});
// Decides min >= threshold without computing the exact minimum; refinement
// is pruned at depth threshold+1, so this is fast for rejections.
bool weighted_min_at_least(FactorEvaluator& eval, std::span<const long> weights, long threshold,
                           const RefinementOptions& opts = {});

// min over a in the class of v(f(a)) together with an attaining integer.
ClassMin class_min_valuation(const Polynomial& f, const ClassId& cls, const PadicContext& ctx,
                             const RefinementOptions& opts = {});

// n = v(fixdiv(f)), the minimum of v(f(a)) over a in Z_(p).
long fixed_divisor_valuation(const Polynomial& f, const PadicContext& ctx,
                             const RefinementOptions& opts = {});
// Same, for prod g^weights[i] without expanding the product.
long weighted_fixed_divisor_valuation(const FactoredPolynomial& fp, std::span<const long> weights,
                                      const RefinementOptions& opts = {});
long fixed_divisor_valuation(const FactoredPolynomial& fp, const RefinementOptions& opts = {});

struct WitnessClass {
    ClassId cls;
    Int witness;                   // v(f(witness)) = n exactly
    std::vector<long> valuations;  // (v(g(witness)))_{g in P}
};

// All residue classes mod p^max(ceil(n/2),1) whose minimum valuation equals
// n, with one witness and its valuation vector each.  By construction the
// vector does not depend on the witness chosen within the class.
struct WitnessReport {
    long n = 0;
    int depth = 1;
    std::vector<WitnessClass> classes;  // ascending representative
};

WitnessReport witness_classes(const FactoredPolynomial& fp, const RefinementOptions& opts = {});

}  // namespace ivp
