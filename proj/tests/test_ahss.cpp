#include "bpss/ahss.hpp"
#include "bpss/error.hpp"
#include "bpss/modcalc.hpp"
#include "doctest.h"

using namespace bpss;

namespace {

bool has_label(const CellGroup& g, const std::string& l) {
    return std::find(g.labels.begin(), g.labels.end(), l) != g.labels.end();
}

}  // namespace

TEST_CASE("v-monomials of a fixed degree") {
    CHECK(v_degree(1) == -2);
    CHECK(v_degree(2) == -6);
    auto vm = v_monomials(2, -6);
    REQUIRE(vm.size() == 2);  // v1^3, v2
    CHECK(vmono_to_string(VMono{3, 0}) == "v1^3");
    CHECK(vmono_support(VMono{0, 1}) == 2u);
    CHECK(v_monomials(2, -1).empty());
    CHECK(differential_length(3) == 15);
}

TEST_CASE("E2 cells for n = 1") {
    EPage e2 = build_e2(1, 2, 16, 1);
    CellGroup c0 = e2.cell(0, 0, true);
    CHECK(c0.free == 1);
    CHECK(c0.torsion == 0);
    CHECK(has_label(c0, "1"));
    CellGroup c3 = e2.cell(3, 0, true);
    CHECK(c3.free == 0);
    CHECK(c3.torsion == 1);
    CHECK(has_label(c3, "x3"));
    CHECK(e2.cell(4, 0).free == 2);
    CHECK(e2.cell(6, -2).torsion == 1);  // v1 x3^2
    CHECK(e2.cell(1, 0).free + e2.cell(1, 0).torsion == 0);
}

TEST_CASE("d3 sends x3 to v1 x3^2") {
    EPage p = advance_to(build_e2(1, 1, 16, 1), 3);
    F2Differential d = differential_mod2(p, 3, 3, 0);
    CHECK(d.target == Bidegree{6, -2});
    REQUIRE(d.columns.size() == 1);
    CHECK(d.columns[0].count() == 1);

    CellDifferential full = differential(p, 3, 3, 0);
    CHECK(full.map.matrix().rows() == 1);

    EPage e4 = turn_page(p, 3);
    CHECK(e4.page() == 4);
    CHECK(e4.cell(3, 0).torsion == 0);
    CHECK(e4.cell(6, -2).torsion == 0);
}

TEST_CASE("turning the wrong page is rejected") {
    EPage p = build_e2(1, 1, 12, 1);
    CHECK_THROWS_AS(turn_page(p, 3), Error);
    CHECK_THROWS_AS(differential_mod2(p, 1, 0, 0), Error);
}

TEST_CASE("pages agree with the closed form") {
    for (auto [n, m] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
        EPage p = build_e2(n, m, 24, 1);
        for (int r = 0; r <= std::min(m, n + 1); ++r) {
            p = advance_to(p, 1 << (r + 1));
            auto cmp = compare_pages(p.summary(), closed_form_page(n, m, r, 24), true);
            INFO("n=" << n << " m=" << m << " r=" << r << " " << cmp.first_mismatch);
            CHECK(cmp.equal);
            CHECK(cmp.cells > 0);
        }
    }
}

TEST_CASE("integer route agrees with the fine-cell engine") {
    auto pages = snf_pages(1, 1, 10);
    EPage p = build_e2(1, 1, 10, 1);
    REQUIRE(pages.size() == 2);
    for (const auto& [u, sum] : pages) {
        p = advance_to(p, u);
        auto cmp = compare_pages(sum, p.summary());
        INFO("E" << u << " " << cmp.first_mismatch);
        CHECK(cmp.equal);
    }
}

TEST_CASE("compare_pages reports the first mismatch") {
    PageSummary a, b;
    a[{3, 0}] = CellGroup{0, 1, -1, {"x3"}};
    auto cmp = compare_pages(a, b);
    CHECK_FALSE(cmp.equal);
    CHECK(cmp.mismatches == 1);
    CHECK(cmp.first_mismatch.find("(3,0)") != std::string::npos);
    CHECK(cmp.first_mismatch.find("x3") != std::string::npos);
}

TEST_CASE("the page does not depend on the thread count") {
    auto one = e_infinity(build_e2(2, 2, 20, 1)).summary(true);
    auto two = e_infinity(build_e2(2, 2, 20, 2)).summary(true);
    REQUIRE(one.size() == two.size());
    for (auto i = one.begin(), j = two.begin(); i != one.end(); ++i, ++j) {
        CHECK(i->first == j->first);
        CHECK(i->second.labels == j->second.labels);
    }
}

TEST_CASE("integral cohomology of BG_1") {
    auto h = integral_cohomology(1, 12);
    CHECK(h[0].free == 1);
    CHECK(h[3].torsion == 1);
    CHECK(h[3].torsion_basis == std::vector<std::string>{"x3"});
    CHECK(h[6].free == 0);
    CHECK(h[6].torsion_basis == std::vector<std::string>{"x3^2"});
    CHECK(h[8].free == 3);
    CHECK(h[8].torsion == 0);
    auto b = integral_cohomology_bockstein(1, 12);
    for (int d = 0; d <= 12; ++d) {
        CHECK(h[d].free == b[d].free);
        CHECK(h[d].torsion == b[d].torsion);
    }
}

TEST_CASE("E-infinity for m = 0 is the integral cohomology") {
    EPage p = e_infinity(build_e2(2, 0, 20, 1));
    auto h = integral_cohomology(2, 20);
    for (int s = 0; s <= 20; ++s) {
        CellGroup g = p.cell(s, 0);
        CHECK(g.free == h[s].free);
        CHECK(g.torsion == h[s].torsion);
    }
}

TEST_CASE("odd degree classes") {
    ScanResult a = odd_degree_scan(1, 1, 24, 1);
    CHECK_FALSE(a.vanishes);
    CHECK(a.s == 7);
    CHECK(a.witness == "x3*x41");
    CHECK(odd_degree_scan(1, 2, 24, 1).vanishes);
    CHECK_FALSE(odd_degree_scan(2, 2, 24, 1).vanishes);
}

TEST_CASE("lift profile of x41 x42") {
    MilnorContext ctx(2, 4);
    Poly2 cls = phi(ctx, 1, x_I(ctx, {1, 2}));
    auto prof = lift_profile(2, cls, 0, 2);
    REQUIRE(prof.size() == 3);
    CHECK(prof[0].verdict == LiftVerdict::Lifts);
    CHECK(prof[1].verdict == LiftVerdict::Lifts);
    CHECK(prof[2].verdict == LiftVerdict::Obstructed);
    CHECK(prof[2].page == 7);
    CHECK(prof[2].image == "v2*(x3*x41^2*x42 + x3*x41*x42^2)");
}
