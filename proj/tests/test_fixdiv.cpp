#include <doctest.h>

#include "ivpfactor/fixdiv.hpp"
#include "ivpfactor/parse.hpp"

using namespace ivp;

namespace {

FactoredPolynomial running_example() {
    PadicContext p3{Int(3)};
    return parse_factored_poly("(x^2+9)*(x-5)^3*(x-1)*(x-7)", p3).fp;
}

FactoredPolynomial binomial_numerator() {
    PadicContext p2{Int(2)};
    return parse_factored_poly("(x)*(x-1)", p2).fp;
}

}  // namespace

TEST_CASE("class minimum by refinement") {
    PadicContext p2{Int(2)};
    Polynomial f = binomial_numerator().expand();

    ClassMin even = class_min_valuation(f, {Int(0), 1}, p2);
    CHECK(even.min == Valuation(1));
    CHECK(even.point == Int(2));

    Polynomial x({Rational(0), Rational(1)});
    ClassMin odd = class_min_valuation(x, {Int(1), 1}, p2);
    CHECK(odd.min == Valuation(0));
    CHECK(odd.point == Int(1));

    PadicContext p3{Int(3)};
    ClassMin skipped = class_min_valuation(running_example().expand(), {Int(2), 1}, p3);
    CHECK(skipped.min == Valuation(3));
    CHECK(skipped.point == Int(2));
}

TEST_CASE("class representatives are normalized into range") {
    PadicContext p2{Int(2)};
    Polynomial f = binomial_numerator().expand();
    ClassMin from_negative = class_min_valuation(f, {Int(-2), 1}, p2);
    CHECK(from_negative.min == Valuation(1));
    CHECK(from_negative.point == Int(2));
}

TEST_CASE("fixed divisor valuation") {
    PadicContext p3{Int(3)};
    PadicContext p2{Int(2)};
    CHECK(fixed_divisor_valuation(running_example().expand(), p3) == 2);
    CHECK(fixed_divisor_valuation(Polynomial({Rational(0), Rational(1)}), p2) == 0);
    CHECK(fixed_divisor_valuation(binomial_numerator().expand(), p2) == 1);
    CHECK(fixed_divisor_valuation(running_example()) == 2);
}

TEST_CASE("engine preconditions") {
    PadicContext p3{Int(3)};
    CHECK_THROWS_AS(fixed_divisor_valuation(Polynomial(), p3), ComputeError);
    CHECK_THROWS_AS(fixed_divisor_valuation(Polynomial({Rational(9), Rational(3)}), p3),
                    ComputeError);  // not primitive
    CHECK_THROWS_AS(fixed_divisor_valuation(Polynomial({Rational(1, 3), Rational(1)}), p3),
                    ComputeError);  // not p-integral
    CHECK_THROWS_AS(class_min_valuation(Polynomial({Rational(0), Rational(1)}), {Int(0), 0}, p3),
                    ComputeError);  // depth must be positive
}

TEST_CASE("refinement depth cap is reported") {
    PadicContext p2{Int(2)};
    Polynomial f = Polynomial({Rational(0), Rational(1)}).pow(10);  // x^10
    RefinementOptions opts;
    opts.depth_cap = 5;
    CHECK_THROWS_AS(class_min_valuation(f, {Int(0), 1}, p2, opts), LimitError);
    // The global minimum is found at odd points before the cap matters.
    CHECK(fixed_divisor_valuation(f, p2, opts) == 0);
}

TEST_CASE("witness classes of the running example") {
    WitnessReport report = witness_classes(running_example());
    CHECK(report.n == 2);
    CHECK(report.depth == 1);
    REQUIRE(report.classes.size() == 2);
    CHECK(report.classes[0].cls.representative == 0);
    CHECK(report.classes[0].witness == 0);
    CHECK(report.classes[0].valuations == std::vector<long>{2, 0, 0, 0});
    CHECK(report.classes[1].cls.representative == 1);
    CHECK(report.classes[1].witness == 4);
    CHECK(report.classes[1].valuations == std::vector<long>{0, 0, 1, 1});
}

TEST_CASE("witness classes of the binomial numerator") {
    WitnessReport report = witness_classes(binomial_numerator());
    CHECK(report.n == 1);
    REQUIRE(report.classes.size() == 2);
    CHECK(report.classes[0].witness == 2);
    CHECK(report.classes[0].valuations == std::vector<long>{1, 0});
    CHECK(report.classes[1].witness == 3);
    CHECK(report.classes[1].valuations == std::vector<long>{0, 1});
}

TEST_CASE("witness classes with n = 0 still partition mod p") {
    PadicContext p2{Int(2)};
    FactoredPolynomial fp(p2, {{Polynomial({Rational(0), Rational(1)}), 1}});
    WitnessReport report = witness_classes(fp);
    CHECK(report.n == 0);
    CHECK(report.depth == 1);
    REQUIRE(report.classes.size() == 1);
    CHECK(report.classes[0].cls.representative == 1);
    CHECK(report.classes[0].witness == 1);
    CHECK(report.classes[0].valuations == std::vector<long>{0});
}

TEST_CASE("witness invariants") {
    for (FactoredPolynomial fp : {running_example(), binomial_numerator()}) {
        WitnessReport report = witness_classes(fp);
        Polynomial f = fp.expand();
        std::vector<long> m = fp.multiplicities();
        Int modulus;
        mpz_pow_ui(modulus.get_mpz_t(), fp.ctx().prime().get_mpz_t(),
                   static_cast<unsigned long>(report.depth));
        for (const WitnessClass& wc : report.classes) {
            // The witness attains n exactly.
            CHECK(fp.ctx().valuation(f.evaluate(wc.witness)) == Valuation(report.n));
            // <m, v_P(w)> = n.
            long inner = 0;
            for (std::size_t i = 0; i < m.size(); ++i) inner += m[i] * wc.valuations[i];
            CHECK(inner == report.n);
            // Every entry is at most n and the witness lies in its class.
            for (long v : wc.valuations) CHECK(v <= report.n);
            CHECK((wc.witness - wc.cls.representative) % modulus == 0);

            // Witnesses deeper in the same class carry the same vector.
            Int step;
            mpz_pow_ui(step.get_mpz_t(), fp.ctx().prime().get_mpz_t(),
                       static_cast<unsigned long>(report.n + 1));
            for (long t = 1; t <= 2; ++t) {
                Int other = wc.witness + t * step;
                std::vector<const Polynomial*> ptrs;
                for (const Factor& fac : fp.factors()) ptrs.push_back(&fac.g);
                FactorEvaluator eval(fp.ctx(), ptrs);
                CHECK(fp.ctx().valuation(f.evaluate(other)) == Valuation(report.n));
                for (std::size_t i = 0; i < ptrs.size(); ++i) {
                    CHECK(eval.factor_valuation(i, other) == Valuation(wc.valuations[i]));
                }
            }
        }
    }
}

TEST_CASE("fixed divisor scales linearly in the exponent") {
    for (FactoredPolynomial fp : {running_example(), binomial_numerator()}) {
        long n = fixed_divisor_valuation(fp);
        std::vector<long> m = fp.multiplicities();
        for (long j = 1; j <= 3; ++j) {
            std::vector<long> scaled;
            for (long mi : m) scaled.push_back(j * mi);
            CHECK(weighted_fixed_divisor_valuation(fp, scaled) == j * n);
        }
    }
}

TEST_CASE("threshold decision matches the exact minimum") {
    FactoredPolynomial fp = running_example();
    std::vector<const Polynomial*> ptrs;
    for (const Factor& fac : fp.factors()) ptrs.push_back(&fac.g);
    FactorEvaluator eval(fp.ctx(), ptrs);
    std::vector<long> weights = {1, 3, 1, 1};
    long n = weighted_global_min(eval, weights).min.value();
    CHECK(n == 2);
    for (long t = 0; t <= n + 2; ++t) {
        CHECK(weighted_min_at_least(eval, weights, t) == (t <= n));
    }
}
