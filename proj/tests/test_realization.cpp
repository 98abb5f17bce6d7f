#include <doctest.h>

#include <set>

#include "ivpfactor/realization.hpp"

using namespace ivp;

namespace {

Polynomial root(long a) { return Polynomial::linear_root(Int(a)); }

}  // namespace

TEST_CASE("parameter selection") {
    RealizationSpec spec = choose_parameters(2, 2);
    CHECK(spec.p == 5);
    CHECK(spec.primorial == 6);
    CHECK(spec.w == std::vector<Int>{Int(0), Int(6)});
    CHECK(spec.a == std::vector<Int>{Int(12), Int(18)});
    CHECK(spec.z == std::vector<Int>{Int(24)});
    CHECK(spec.b == std::vector<Int>{Int(5), Int(11)});
    CHECK(spec.c == std::vector<Int>{Int(17), Int(23)});
    CHECK(spec.expected_s == 6);

    CHECK(choose_parameters(3, 2).p == 5);
    CHECK(choose_parameters(3, 2).z.empty());
    CHECK(choose_parameters(4, 2).p == 7);
    CHECK_THROWS_AS(choose_parameters(1, 2), ComputeError);
    CHECK_THROWS_AS(choose_parameters(2, 1), ComputeError);
}

TEST_CASE("the residue system is complete mod p and mod no smaller prime") {
    for (long r : {2L, 3L, 4L, 5L}) {
        RealizationSpec spec = choose_parameters(r, 2);
        std::vector<Int> all;
        all.insert(all.end(), spec.w.begin(), spec.w.end());
        all.insert(all.end(), spec.a.begin(), spec.a.end());
        all.insert(all.end(), spec.z.begin(), spec.z.end());
        CHECK(Int(static_cast<long>(all.size())) == spec.p);
        std::set<Int> residues;
        for (const Int& x : all) residues.insert(x % spec.p);
        CHECK(Int(static_cast<long>(residues.size())) == spec.p);
        for (Int q(2); q < spec.p; ++q) {
            if (!is_prime_deterministic(q)) continue;
            std::set<Int> mod_q;
            for (const Int& x : all) mod_q.insert(x % q);
            CHECK(Int(static_cast<long>(mod_q.size())) < q);
        }
    }
}

TEST_CASE("expected minimal exponent") {
    CHECK(expected_S(2, 2) == 6);
    CHECK(expected_S(2, 3) == 12);
    CHECK(expected_S(3, 3) == 24);
    CHECK(expected_S(5, 2) == 6);
    CHECK(expected_S(3, 4) == 60);  // 5*(9+3)
}

TEST_CASE("h family for r = 2, n = 2") {
    RealizationSpec spec = choose_parameters(2, 2);
    build_h_family(spec);
    REQUIRE(spec.h_family.size() == 3);
    CHECK(spec.h_family[0] == root(5) * root(17).pow(3));
    CHECK(spec.h_family[1] == root(5) * root(23).pow(3));
    CHECK(spec.h_family[2] == root(11).pow(2) * root(24).pow(3));

    // Witness rows (1,1,0) at w_1 = 0 and (0,0,2) at w_2 = 6.
    PadicContext ctx{Int(5)};
    auto val = [&](std::size_t j, long at) {
        return ctx.valuation(spec.h_family[j].evaluate(Int(at)));
    };
    CHECK(val(0, 0) == Valuation(1));
    CHECK(val(1, 0) == Valuation(1));
    CHECK(val(2, 0) == Valuation(0));
    CHECK(val(0, 6) == Valuation(0));
    CHECK(val(1, 6) == Valuation(0));
    CHECK(val(2, 6) == Valuation(2));
    // v(h_j(a_j)) = n + 1
    CHECK(val(0, 12) == Valuation(3));
    CHECK(val(1, 18) == Valuation(3));

    std::vector<const Polynomial*> ptrs;
    for (const Polynomial& h : spec.h_family) ptrs.push_back(&h);
    FactorEvaluator eval(ctx, ptrs);
    std::vector<long> ones = {1, 1, 1};
    CHECK(weighted_global_min(eval, ones).min == Valuation(2));
}

TEST_CASE("h family shapes for larger parameters") {
    RealizationSpec r3 = choose_parameters(3, 2);
    build_h_family(r3);
    REQUIRE(r3.h_family.size() == 4);
    CHECK(r3.h_family[1] == root(5) * root(11) * root(29).pow(3));  // full j = 2 case
    CHECK(r3.h_family[2] == root(11));                              // j = r
    CHECK(r3.h_family[3] == root(17).pow(2));                       // empty z range

    RealizationSpec r4 = choose_parameters(4, 2);
    build_h_family(r4);
    REQUIRE(r4.h_family.size() == 5);
    CHECK(r4.h_family[2] == root(37) * root(67));  // 3 <= j <= r-1 case
}

TEST_CASE("irreducible replacements preserve the valuation data") {
    RealizationSpec spec = choose_parameters(2, 2);
    build_h_family(spec);
    crt_irreducible_replacement(spec);
    REQUIRE(spec.g_family.size() == 3);
    CHECK(spec.aux_prime == 17);  // degrees sum to 13

    PadicContext ctx{Int(5)};
    PadicContext ctx_q{spec.aux_prime};
    for (std::size_t i = 0; i < 3; ++i) {
        const Polynomial& g = spec.g_family[i];
        const Polynomial& h = spec.h_family[i];
        CHECK(g.degree() == h.degree());
        CHECK(g.coefficients().back() == 1);
        CHECK(congruent_mod_power(g, h, 4, ctx));  // mod p^{n+2}
        CHECK(check_irreducible_over_q(g) == IrredStatus::irreducible);
        CHECK(ctx_q.valuation(g.coeff(0)) == Valuation(1));
    }
    // pairwise distinct constant terms
    CHECK(spec.g_family[0].coeff(0) != spec.g_family[1].coeff(0));
    CHECK(spec.g_family[0].coeff(0) != spec.g_family[2].coeff(0));
    CHECK(spec.g_family[1].coeff(0) != spec.g_family[2].coeff(0));

    for (long at : {0L, 6L, 12L, 18L}) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(ctx.valuation(spec.g_family[j].evaluate(Int(at))) ==
                  ctx.valuation(spec.h_family[j].evaluate(Int(at))));
        }
    }
}

TEST_CASE("generated family verifies end to end") {
    GeneratedFamily fam = generate_and_verify(2, 2, {});
    CHECK(fam.analysis.n == 2);
    CHECK(fam.analysis.reduced.rows ==
          std::vector<std::vector<long>>{{1, 1, 0}, {0, 0, 2}});
    REQUIRE(fam.analysis.kernel.dimension == 1);
    CHECK(fam.analysis.kernel.sample_integer_vectors.front() ==
          std::vector<Int>{Int(1), Int(-1), Int(0)});
    CHECK(fam.analysis.verdict.irreducible);
    CHECK(fam.analysis.verdict.absolutely_irreducible == TriState::no);
    REQUIRE(fam.analysis.verdict.min_nonunique_bound.has_value());
    CHECK(*fam.analysis.verdict.min_nonunique_bound == 6);
    CHECK(fam.spec.expected_s == 6);

    GeneratedFamily deeper = generate_and_verify(2, 3, {});
    CHECK(deeper.analysis.reduced.rows ==
          std::vector<std::vector<long>>{{1, 2, 0}, {0, 0, 3}});
    CHECK(deeper.analysis.kernel.sample_integer_vectors.front() ==
          std::vector<Int>{Int(2), Int(-1), Int(0)});
    CHECK(deeper.spec.expected_s == 12);
    REQUIRE(deeper.analysis.min_k.has_value());
    CHECK(deeper.analysis.min_k->k == 3);

    GeneratedFamily wide = generate_and_verify(3, 2, {});
    CHECK(wide.analysis.reduced.rows ==
          std::vector<std::vector<long>>{{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 2}});
    CHECK(wide.analysis.kernel.sample_integer_vectors.front() ==
          std::vector<Int>{Int(1), Int(-1), Int(1), Int(0)});
    CHECK(wide.spec.expected_s == 6);
}

TEST_CASE("oracle minimality for the r = 3 family") {
    GenerateOptions opts;
    opts.oracle_j_max = 6;
    GeneratedFamily fam = generate_and_verify(3, 2, opts);
    REQUIRE(fam.oracle.has_value());
    CHECK(fam.oracle->s == 6);
}

TEST_CASE("expected S equals (n+1) times the minimal K") {
    for (auto [r, n] : {std::pair<long, long>{2, 2}, {2, 3}, {3, 2}}) {
        GeneratedFamily fam = generate_and_verify(r, n, {});
        REQUIRE(fam.analysis.min_k.has_value());
        CHECK(Int(n + 1) * fam.analysis.min_k->k == expected_S(r, n));
    }
}
