#include "bpss/milnor.hpp"
#include "doctest.h"

using namespace bpss;

TEST_CASE("alpha values") {
    CHECK(alpha(1, 0).to_string() == "1");
    CHECK(alpha(2, 0).to_string() == "x2^2");
    CHECK(alpha(2, 1).to_string() == "1");
    CHECK(alpha(3, 0).to_string() == "x2^6 + x3^4");
    CHECK(alpha(3, 1).to_string() == "x2^4");
    CHECK(alpha(3, 2).to_string() == "1");
    CHECK(alpha(4, 3).to_string() == "1");
    CHECK(alpha(4, 2).to_string() == "x2^8");
    CHECK(alpha(4, 1).to_string() == "x2^12 + x3^8");
    CHECK_THROWS_AS(alpha(2, 2), Error);
}

TEST_CASE("Q_j on generators") {
    MilnorContext ctx(2);
    auto p = [&](const char* s) { return Poly2::parse(ctx.bg(), s); };
    CHECK(milnor_q(ctx, 0, p("x2")) == p("x3"));
    CHECK(milnor_q(ctx, 0, p("x3")).is_zero());
    CHECK(milnor_q(ctx, 0, p("x41")).is_zero());
    CHECK(milnor_q(ctx, 1, p("x3")) == p("x3^2"));
    CHECK(milnor_q(ctx, 1, p("x41")) == p("x3*x41"));
    CHECK(milnor_q(ctx, 1, p("x3*x41")).is_zero());
    CHECK(milnor_q(ctx, 1, p("x2")) == p("x2*x3"));
    CHECK(milnor_q(ctx, 2, p("x3")) == p("x2^2*x3^2"));
    CHECK(milnor_q(ctx, 2, p("x42")) == p("x3*x42^2 + x2^2*x3*x42"));
}

TEST_CASE("the lowest alpha coefficient must be 1") {
    // with alpha_{1,0} = 0 the formula would give Q_1(x41) = 0
    MilnorContext ctx(1);
    Poly2 x4 = Poly2::generator(ctx.bg(), x4_index(1));
    Poly2 amb = milnor_q_ambient(1, restrict_to_ambient(ctx, x4));
    CHECK_FALSE(amb.is_zero());
    CHECK(amb == restrict_to_ambient(ctx, milnor_q(ctx, 1, x4)));
}

TEST_CASE("generator formulas agree with the ambient derivation") {
    for (int n = 1; n <= 2; ++n) {
        MilnorContext ctx(n, 4);
        for (int j = 0; j <= 4; ++j)
            for (int d = 0; d <= 14; ++d)
                for (auto m : monomials_of_degree(*ctx.bg(), d)) {
                    Poly2 x = Poly2::monomial(ctx.bg(), m);
                    CHECK(restrict_to_ambient(ctx, milnor_q(ctx, j, x)) ==
                          milnor_q_ambient(j, restrict_to_ambient(ctx, x)));
                }
    }
}

TEST_CASE("Q_j squares to zero and the Q_j commute") {
    MilnorContext ctx(2, 4);
    for (int d = 0; d <= 16; ++d)
        for (auto m : monomials_of_degree(*ctx.bg(), d)) {
            Poly2 x = Poly2::monomial(ctx.bg(), m);
            for (int i = 0; i <= 3; ++i) {
                CHECK(milnor_q(ctx, i, milnor_q(ctx, i, x)).is_zero());
                for (int j = i + 1; j <= 3; ++j)
                    CHECK(milnor_q(ctx, i, milnor_q(ctx, j, x)) == milnor_q(ctx, j, milnor_q(ctx, i, x)));
            }
        }
}

TEST_CASE("restriction is injective in low degrees") {
    CHECK(restriction_injective(MilnorContext(1), 20));
    CHECK(restriction_injective(MilnorContext(2), 14));
}

TEST_CASE("degree cap") {
    MilnorContext ctx(1, 3, 40);
    Poly2 x = Poly2::parse(ctx.bg(), "x41^8");
    CHECK_THROWS_AS(milnor_q(ctx, 3, x), Error);
    CHECK_THROWS_AS(milnor_q(ctx, 4, x), Error);
}
