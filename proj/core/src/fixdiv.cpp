#include "ivpfactor/fixdiv.hpp"

#include <deque>

namespace ivp {

namespace {

// Residue class splitting enumerates p children per class.
void check_refinable_prime(const Int& p) {
    if (p > (1 << 20)) {
        throw LimitError("residue field of size " + p.get_str() +
                         " is too large for class refinement");
    }
}

}  // namespace

FactorEvaluator::FactorEvaluator(PadicContext ctx, std::vector<const Polynomial*> factors)
    : ctx_(std::move(ctx)), factors_(std::move(factors)) {
    int_coeffs_.resize(factors_.size());
    cache_.resize(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i]->has_integer_coefficients() && !factors_[i]->is_zero()) {
            auto& c = int_coeffs_[i];
            c.reserve(factors_[i]->coefficients().size());
            for (const Rational& q : factors_[i]->coefficients()) c.push_back(q.get_num());
        }
    }
}

Valuation FactorEvaluator::factor_valuation(std::size_t i, const Int& a) {
    auto& cache = cache_[i];
    auto it = cache.find(a);
    if (it != cache.end()) return it->second;
    Valuation v(0);
    if (!int_coeffs_[i].empty()) {
        Int acc(0);
        for (auto c = int_coeffs_[i].rbegin(); c != int_coeffs_[i].rend(); ++c) {
            acc *= a;
            acc += *c;
        }
        v = ctx_.valuation(acc);
    } else {
        v = ctx_.valuation(factors_[i]->evaluate(a));
    }
    cache.emplace(a, v);
    return v;
}

Valuation FactorEvaluator::weighted_valuation(std::span<const long> weights, const Int& a) {
    if (weights.size() != factors_.size()) {
        throw ComputeError("weighted valuation: weight vector has wrong length");
    }
    long total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] == 0) continue;
        if (weights[i] < 0) throw ComputeError("weighted valuation: negative weight");
        Valuation v = factor_valuation(i, a);
        if (v.is_infinite()) return Valuation::infinity();
        total += weights[i] * v.value();
    }
    return Valuation(total);
}

std::vector<Valuation> FactorEvaluator::valuation_vector(const Int& a) {
    std::vector<Valuation> vec;
    vec.reserve(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) vec.push_back(factor_valuation(i, a));
    return vec;
}

namespace {

struct Node {
    Int rep;
    int depth;
};

// Per-class certificate.  A factor g_i is settled on the class rep + p^d R
// when v(g_i(rep)) < d: every member then shares that factor valuation.  An
// unsettled factor is certified >= d on the whole class.  Settling factors
// individually (rather than the weighted product as a whole) keeps the
// refinement tree narrow near clustered p-adic roots, where the product
// valuation stays above the depth long after each factor is determined.
struct ClassCertificate {
    bool exact;  // all contributing factors settled
    long value;  // exact weighted valuation, or a lower bound for the class
};

ClassCertificate certify(FactorEvaluator& eval, std::span<const long> weights, const Int& rep,
                         int depth) {
    ClassCertificate cert{true, 0};
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] == 0) continue;
        if (weights[i] < 0) throw ComputeError("weighted valuation: negative weight");
        Valuation v = eval.factor_valuation(i, rep);
        if (!v.is_infinite() && v < Valuation(depth)) {
            cert.value += weights[i] * v.value();
        } else {
            cert.exact = false;
            cert.value += weights[i] * depth;
        }
    }
    return cert;
}

void split(std::deque<Node>& queue, const Node& node, const Int& p, unsigned long p_ul,
           const RefinementOptions& opts) {
    if (node.depth + 1 > opts.depth_cap) {
        throw LimitError("refinement depth cap " + std::to_string(opts.depth_cap) +
                         " exceeded in class " + node.rep.get_str() + " + " + p.get_str() + "^" +
                         std::to_string(node.depth) + " Z_(p)");
    }
    Int step;
    mpz_pow_ui(step.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(node.depth));
    Int child = node.rep;
    for (unsigned long i = 0; i < p_ul; ++i) {
        queue.push_back({child, node.depth + 1});
        child += step;
    }
}

ClassMin refine_min(FactorEvaluator& eval, std::span<const long> weights, std::deque<Node> queue,
                    const RefinementOptions& opts) {
    const Int& p = eval.ctx().prime();
    check_refinable_prime(p);
    unsigned long p_ul = p.get_ui();

    Valuation best = Valuation::infinity();
    std::optional<Int> best_point;
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        ClassCertificate cert = certify(eval, weights, node.rep, node.depth);
        if (cert.exact) {
            Valuation v(cert.value);
            if (v < best || (v == best && (!best_point || node.rep < *best_point))) {
                best = v;
                best_point = node.rep;
            }
            continue;
        }
        // Every member of the class is >= cert.value; only subtrees that can
        // still reach the minimum (or tie it, for the smallest witness) are
        // expanded.
        if (!best.is_infinite() && Valuation(cert.value) > best) continue;
        split(queue, node, p, p_ul, opts);
    }
    return {best, std::move(best_point)};
}

std::deque<Node> depth_one_classes(const Int& p) {
    check_refinable_prime(p);
    std::deque<Node> queue;
    for (Int rep(0); rep < p; ++rep) queue.push_back({rep, 1});
    return queue;
}

void check_engine_input(const Polynomial& f, const PadicContext& ctx) {
    if (f.is_zero()) throw ComputeError("fixed divisor: zero polynomial");
    if (!is_p_integral(f, ctx)) throw ComputeError("fixed divisor: polynomial is not p-integral");
    if (!is_primitive_at(f, ctx)) throw ComputeError("fixed divisor: polynomial is not primitive");
}

}  // namespace

ClassMin weighted_class_min(FactorEvaluator& eval, std::span<const long> weights,
                            const ClassId& cls, const RefinementOptions& opts) {
    if (cls.depth < 1) throw ComputeError("class depth must be positive");
    Int modulus;
    mpz_pow_ui(modulus.get_mpz_t(), eval.ctx().prime().get_mpz_t(),
               static_cast<unsigned long>(cls.depth));
    Int rep;
    mpz_fdiv_r(rep.get_mpz_t(), cls.representative.get_mpz_t(), modulus.get_mpz_t());
    return refine_min(eval, weights, {{rep, cls.depth}}, opts);
}

ClassMin weighted_global_min(FactorEvaluator& eval, std::span<const long> weights,
                             const RefinementOptions& opts) {
    return refine_min(eval, weights, depth_one_classes(eval.ctx().prime()), opts);
}

bool weighted_min_at_least(FactorEvaluator& eval, std::span<const long> weights, long threshold,
                           const RefinementOptions& opts) {
    if (threshold <= 0) return true;
    const Int& p = eval.ctx().prime();
    unsigned long p_ul = (check_refinable_prime(p), p.get_ui());
    std::deque<Node> queue = depth_one_classes(p);
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        ClassCertificate cert = certify(eval, weights, node.rep, node.depth);
        if (cert.exact) {
            if (cert.value < threshold) return false;
            continue;
        }
        if (cert.value >= threshold) continue;
        // The lower bound grows with the depth, so this terminates within
        // threshold levels.
        split(queue, node, p, p_ul, opts);
    }
    return true;
}

ClassMin class_min_valuation(const Polynomial& f, const ClassId& cls, const PadicContext& ctx,
                             const RefinementOptions& opts) {
    check_engine_input(f, ctx);
    FactorEvaluator eval(ctx, {&f});
    const long weights[] = {1};
    return weighted_class_min(eval, weights, cls, opts);
}

long fixed_divisor_valuation(const Polynomial& f, const PadicContext& ctx,
                             const RefinementOptions& opts) {
    check_engine_input(f, ctx);
    FactorEvaluator eval(ctx, {&f});
    const long weights[] = {1};
    return weighted_global_min(eval, weights, opts).min.value();
}

long weighted_fixed_divisor_valuation(const FactoredPolynomial& fp, std::span<const long> weights,
                                      const RefinementOptions& opts) {
    std::vector<const Polynomial*> factors;
    for (const Factor& f : fp.factors()) factors.push_back(&f.g);
    FactorEvaluator eval(fp.ctx(), std::move(factors));
    return weighted_global_min(eval, weights, opts).min.value();
}

long fixed_divisor_valuation(const FactoredPolynomial& fp, const RefinementOptions& opts) {
    return weighted_fixed_divisor_valuation(fp, fp.multiplicities(), opts);
}

WitnessReport witness_classes(const FactoredPolynomial& fp, const RefinementOptions& opts) {
    std::vector<const Polynomial*> factors;
    for (const Factor& f : fp.factors()) factors.push_back(&f.g);
    FactorEvaluator eval(fp.ctx(), std::move(factors));
    std::vector<long> m = fp.multiplicities();

    WitnessReport report;
    report.n = weighted_global_min(eval, m, opts).min.value();
    report.depth = static_cast<int>(std::max<long>((report.n + 1) / 2, 1));

    Int class_count;
    mpz_pow_ui(class_count.get_mpz_t(), fp.ctx().prime().get_mpz_t(),
               static_cast<unsigned long>(report.depth));
    if (class_count > Int(static_cast<unsigned long>(opts.class_limit))) {
        throw LimitError("witness enumeration needs " + class_count.get_str() +
                         " residue classes, above the configured limit");
    }

    for (Int rep(0); rep < class_count; ++rep) {
        ClassId cls{rep, report.depth};
        ClassMin cm = weighted_class_min(eval, m, cls, opts);
        if (!(cm.min == Valuation(report.n))) continue;
        if (!cm.point) throw VerifyError("witness class has no attaining point");
        std::vector<long> vec;
        long inner = 0;
        std::vector<Valuation> vals = eval.valuation_vector(*cm.point);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (vals[i].is_infinite()) {
                throw VerifyError("witness " + cm.point->get_str() +
                                  " is a root of a factor, contradicting v(f(w)) = n");
            }
            vec.push_back(vals[i].value());
            inner += m[i] * vals[i].value();
        }
        if (inner != report.n) {
            throw VerifyError("witness " + cm.point->get_str() + " has <m, v_P(w)> = " +
                              std::to_string(inner) + " but n = " + std::to_string(report.n));
        }
        report.classes.push_back({cls, *cm.point, std::move(vec)});
    }
    if (report.classes.empty()) {
        throw VerifyError("no witness class found; contradicts the definition of the fixed divisor");
    }
    return report;
}

}  // namespace ivp
