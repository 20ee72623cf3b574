#include <random>

#include "bpss/modcalc.hpp"
#include "doctest.h"

using namespace bpss;

TEST_CASE("partial derivations on generators") {
    MilnorContext ctx(2);
    auto p = [&](const char* s) { return Poly2::parse(ctx.bg(), s); };
    CHECK(partial(ctx, 2, p("x41")) == p("x41^2"));
    CHECK(partial(ctx, 3, p("x41")) == p("x2^4*x41^2 + x41^4"));
    CHECK(partial(ctx, 2, p("x3*x2^2")).is_zero());
    CHECK(partial(ctx, 2, p("x41^2*x42")) == p("x41^2*x42^2"));
    CHECK_THROWS_AS(partial(ctx, 2, p("x2*x41")), Error);
    CHECK_THROWS_AS(partial(ctx, 1, p("x41")), Error);
}

TEST_CASE("phi and the Moore determinant") {
    MilnorContext ctx(2);
    auto p = [&](const char* s) { return Poly2::parse(ctx.bg(), s); };
    CHECK(phi(ctx, 2, p("x41*x42")).to_string() == "x41^2*x42 + x41*x42^2");
    CHECK(moore_det({p("x41"), p("x42")}) == p("x41^2*x42 + x41*x42^2"));
    CHECK(phi(ctx, 1, p("x41*x42")) == p("x41*x42"));
    CHECK(phi(ctx, 3, p("x41*x42")) == moore_det({p("x41"), p("x42")}).square());
    CHECK(phi(ctx, 4, p("x41*x42")).is_zero());
}

TEST_CASE("phi_l of x_I is the Moore determinant, then its square, then zero") {
    for (int n = 1; n <= 4; ++n) {
        MilnorContext ctx(n);
        for (int l = 1; l <= n; ++l)
            for (auto& I : index_sets(n, l)) {
                std::vector<Poly2> vars;
                for (int i : I) vars.push_back(Poly2::generator(ctx.bg(), x4_index(i)));
                Poly2 e = moore_det(vars);
                Poly2 x = x_I(ctx, I);
                CHECK(phi(ctx, l, x) == e);
                CHECK(phi(ctx, l + 1, x) == e.square());
                CHECK(phi(ctx, l + 2, x).is_zero());
            }
    }
}

TEST_CASE("families for n = 2") {
    MilnorContext ctx(2);
    auto e2 = family_e(ctx, 2);
    REQUIRE(e2.size() == 2);
    CHECK(e2[0].value.to_string() == "x41^2");
    CHECK(e2[1].value.to_string() == "x42^2");
    CHECK(family_y(ctx, 2).empty());
    auto z2 = family_z(ctx, 2);
    REQUIRE(z2.size() == 1);
    CHECK(z2[0].value.to_string() == "x41^2*x42 + x41*x42^2");
    CHECK(family_y(ctx, 0).size() == 3);
    auto y1 = family_y(ctx, 1);
    REQUIRE(y1.size() == 1);
    CHECK(y1[0].value.to_string() == "x41*x42");
    CHECK(family_z(ctx, 1).size() == 2);
}

TEST_CASE("component split") {
    MilnorContext ctx(2);
    auto parts = component_split(ctx, Poly2::parse(ctx.bg(), "x41*x42 + x3*x41^2 + x2^2*x41*x42^2"));
    CHECK(parts.size() == 3);
    CHECK(parts.at(0).to_string() == "x3*x41^2");
    CHECK(parts.at(1).to_string() == "x2^2*x41*x42^2");
    CHECK(parts.at(2).to_string() == "x41*x42");
}

TEST_CASE("preimage of the simplest kernel element") {
    MilnorContext ctx(2);
    Poly2 f = Poly2::parse(ctx.bg(), "x41^2*x42 + x41*x42^2");
    CHECK(preimage(ctx, {2}, f, 1) == Poly2::parse(ctx.bg(), "x41*x42"));
    CHECK_THROWS_AS(preimage(ctx, {2}, Poly2::parse(ctx.bg(), "x41*x42"), 2), Error);
    CHECK_THROWS_AS(preimage(ctx, {2}, f, 2), Error);
}

namespace {

Poly2 random_element(const MilnorContext& ctx, std::mt19937& rng, int degree, int comp) {
    std::vector<int> step{2};
    std::vector<Monomial> pool;
    for (auto m : monomials_of_degree(*ctx.bg(), degree, step))
        if (odd_x4_count(m, ctx.n()) == comp) pool.push_back(m);
    std::vector<Monomial> pick;
    for (auto m : pool)
        if (rng() & 1) pick.push_back(m);
    return Poly2(ctx.bg(), pick);
}

}  // namespace

TEST_CASE("preimages of random boundaries") {
    std::mt19937 rng(3);
    PreimageStats stats;
    for (int n = 2; n <= 3; ++n) {
        MilnorContext ctx(n);
        for (std::vector<int> J : {std::vector<int>{2}, {3}, {2, 3}, {3, 4}}) {
            int r = static_cast<int>(J.size());
            for (int trial = 0; trial < 40; ++trial) {
                int i = 1 + trial % 2;
                if (i + r > n) continue;
                int deg = 4 * (i + r) + 4 * (trial % 4);
                Poly2 g = random_element(ctx, rng, deg, i + r);
                Poly2 f = partial_J(ctx, J, g);
                Poly2 h = preimage(ctx, J, f, i, &stats);
                CHECK(partial_J(ctx, J, h) == f);
            }
        }
    }
    CHECK(stats.peel_steps > 0);
}

TEST_CASE("lemma 3.3 solver on a known kernel element") {
    MilnorContext ctx(2);
    // Q2(x41*x42) = phi_2(x41*x42) * x3
    Poly2 x = phi(ctx, 2, Poly2::parse(ctx.bg(), "x41*x42")) * Poly2::parse(ctx.bg(), "x3");
    CHECK(milnor_q(ctx, 2, x).is_zero());
    Poly2 y = lemma33_solve(ctx, 1, x, 1);
    CHECK(y.to_string() == "x41*x42");
    CHECK(milnor_q(ctx, 2, y) == x);
}
