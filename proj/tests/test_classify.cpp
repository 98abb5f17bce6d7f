#include <doctest.h>

#include "ivpfactor/classify.hpp"
#include "ivpfactor/parse.hpp"

using namespace ivp;

namespace {

KernelVector kv(std::vector<long> v) {
    KernelVector out;
    for (long x : v) out.v.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("non-uniqueness bound from a kernel vector") {
    std::vector<long> example_m = {1, 3, 1, 1};
    CHECK(nonunique_power_bound(kv({0, 1, 0, 0}), example_m, 2) == 3);
    std::vector<long> ones = {1, 1, 1};
    CHECK(nonunique_power_bound(kv({1, -1, 0}), ones, 2) == 6);
    CHECK(nonunique_power_bound(kv({1, -1, 0}), ones, 3) == 8);
    CHECK(nonunique_power_bound(kv({-2, 1, 0}), ones, 3) == 12);
    CHECK(nonunique_power_bound(kv({0, 3, 0, 0}), example_m, 2) == 3);  // ceil(3/3)
    CHECK_THROWS_AS(nonunique_power_bound(kv({0, 0, 0}), ones, 2), ComputeError);
}

TEST_CASE("uniqueness check bounds") {
    UniquenessBounds b = uniqueness_check_bounds(2, Int(3), 2, 1);
    CHECK(b.bound_rank == 12);
    CHECK(b.bound_q == 48);
    CHECK_FALSE(b.sharper_n1.has_value());

    UniquenessBounds b5 = uniqueness_check_bounds(2, Int(5), 2, 1);
    CHECK(b5.bound_rank == 12);
    CHECK(b5.bound_q == 192);

    UniquenessBounds unit = uniqueness_check_bounds(1, Int(7), 3, 1);
    CHECK(unit.bound_rank == 4);
    CHECK(unit.bound_q == 4);
    CHECK(unit.sharper_n1 == 2);

    CHECK_THROWS_AS(uniqueness_check_bounds(0, Int(3), 1, 0), ComputeError);
}

TEST_CASE("binomial numerator is absolutely irreducible") {
    PadicContext p2{Int(2)};
    Analysis a = analyze(parse_factored_poly("(x)*(x-1)", p2).fp);
    CHECK(a.n == 1);
    CHECK(a.verdict.fdk_trivial);
    CHECK(a.verdict.irreducible);
    CHECK(a.verdict.kernel_criterion_applies);
    CHECK(a.verdict.absolutely_irreducible == TriState::yes);
    CHECK_FALSE(a.verdict.min_nonunique_bound.has_value());
    REQUIRE(a.verdict.uniqueness_bounds.has_value());
    CHECK(a.verdict.uniqueness_bounds->sharper_n1 == 2);
}

TEST_CASE("running example is reducible with nontrivial kernel") {
    PadicContext p3{Int(3)};
    Analysis a = analyze(parse_factored_poly("(x^2+9)*(x-5)^3*(x-1)*(x-7)", p3).fp);
    CHECK(a.n == 2);
    CHECK_FALSE(a.verdict.fdk_trivial);
    CHECK_FALSE(a.verdict.irreducible);
    CHECK(a.verdict.absolutely_irreducible == TriState::no);
    REQUIRE(a.verdict.min_nonunique_bound.has_value());
    CHECK(*a.verdict.min_nonunique_bound == 3);
    REQUIRE(a.min_bound_vector.has_value());
    CHECK(a.min_bound_vector->v == std::vector<Int>{Int(0), Int(1), Int(0), Int(0)});
    REQUIRE(a.min_k.has_value());
    CHECK(a.min_k->k == 1);
    REQUIRE(a.verdict.uniqueness_bounds.has_value());
    CHECK(a.verdict.uniqueness_bounds->bound_rank == 12);
    CHECK(a.verdict.uniqueness_bounds->bound_q == 48);
    CHECK(a.siegel == Int(1));
}

TEST_CASE("proper powers are reducible and skip the kernel characterization") {
    PadicContext p2{Int(2)};
    FactoredPolynomial fp(p2, {{Polynomial({Rational(0), Rational(1)}), 2},
                               {Polynomial({Rational(-1), Rational(1)}), 2}});
    Analysis a = analyze(fp);
    CHECK(a.n == 2);
    CHECK(a.verdict.proper_power);
    CHECK_FALSE(a.verdict.kernel_criterion_applies);
    CHECK_FALSE(a.verdict.irreducible);
    CHECK(a.verdict.absolutely_irreducible == TriState::no);
}

TEST_CASE("unit fixed divisor stays classifiable") {
    PadicContext p2{Int(2)};
    FactoredPolynomial single(p2, {{Polynomial({Rational(0), Rational(1)}), 1}});
    Analysis a = analyze(single);
    CHECK(a.n == 0);
    CHECK(a.verdict.irreducible);
    CHECK_FALSE(a.verdict.kernel_criterion_applies);
    CHECK(a.verdict.absolutely_irreducible == TriState::yes);
    CHECK_FALSE(a.verdict.uniqueness_bounds.has_value());

    PadicContext p3{Int(3)};
    Analysis b = analyze(parse_factored_poly("(x)*(x-1)", p3).fp);
    CHECK(b.n == 0);
    CHECK_FALSE(b.verdict.irreducible);
    CHECK(b.verdict.absolutely_irreducible == TriState::no);
}

TEST_CASE("bound monotonicity") {
    PadicContext p3{Int(3)};
    Analysis a = analyze(parse_factored_poly("(x^2+9)*(x-5)^3*(x-1)*(x-7)", p3).fp);
    REQUIRE(a.verdict.min_nonunique_bound.has_value());
    CHECK(*a.verdict.min_nonunique_bound <= a.verdict.uniqueness_bounds->bound_rank);
    CHECK(a.verdict.uniqueness_bounds->bound_rank <= a.verdict.uniqueness_bounds->bound_q);
}
