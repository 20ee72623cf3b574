#include <random>

#include "bpss/abgroup.hpp"
#include "bpss/error.hpp"
#include "doctest.h"

using namespace bpss;

namespace {

IntMatrix mat(int r, int c, std::initializer_list<int> v) {
    IntMatrix m(r, c);
    auto it = v.begin();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = *it++;
    return m;
}

GroupPresentation cyclic(int order) {
    return GroupPresentation({"g"}, mat(1, 1, {order}));
}

bool unimodular(const IntMatrix& U) {
    SmithForm s = smith_normal_form(U, false, false);
    if (s.rank != U.rows()) return false;
    for (auto& d : s.invariants())
        if (d != 1) return false;
    return true;
}

}  // namespace

TEST_CASE("smith normal form of a small matrix") {
    IntMatrix A = mat(2, 2, {2, 4, 6, 8});
    SmithForm s = smith_normal_form(A);
    CHECK(s.rank == 2);
    CHECK(s.D(0, 0) == 2);
    CHECK(s.D(1, 1) == 4);
    CHECK(s.U * A * s.V == s.D);
}

TEST_CASE("smith normal form on random matrices") {
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> e(-6, 6), dim(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        int r = dim(rng), c = dim(rng);
        IntMatrix A(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) A(i, j) = (rng() % 3 == 0) ? 0 : e(rng);
        SmithForm s = smith_normal_form(A);
        CHECK(s.U * A * s.V == s.D);
        CHECK(unimodular(s.U));
        CHECK(unimodular(s.V));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (i != j) CHECK(s.D(i, j) == 0);
        auto d = s.invariants();
        for (size_t i = 0; i + 1 < d.size(); ++i) CHECK((d[i + 1] % d[i]) == 0);
        for (auto& x : d) CHECK(x > 0);
    }
}

TEST_CASE("2-local normal forms") {
    CHECK(cyclic(6).normal_form().to_string() == "free 0, torsion {2}");
    CHECK(cyclic(3).normal_form().to_string() == "free 0, torsion {}");
    CHECK(cyclic(12).normal_form().to_string() == "free 0, torsion {4}");
    CHECK(cyclic(0).normal_form().to_string() == "free 1, torsion {}");
    GroupPresentation g({"a", "b", "c"}, mat(3, 2, {2, 0, 0, 4, 0, 0}));
    CHECK(g.normal_form().to_string() == "free 1, torsion {2,4}");
}

TEST_CASE("homology of Z -2-> Z -> 0") {
    auto Z = GroupPresentation::free({"x"});
    auto zero = GroupPresentation::free({});
    PresentationMap in(Z, Z, mat(1, 1, {2}));
    PresentationMap out(Z, zero, IntMatrix(0, 1));
    Homology h = complex_homology(in, out);
    CHECK(h.group.normal_form().to_string() == "free 0, torsion {2}");
}

TEST_CASE("homology rejects non-complexes and ill-defined maps") {
    auto Z = GroupPresentation::free({"x"});
    PresentationMap id(Z, Z, mat(1, 1, {1}));
    CHECK_THROWS_AS(complex_homology(id, id), Error);
    PresentationMap bad(cyclic(2), Z, mat(1, 1, {1}));
    CHECK_THROWS_AS(bad.check_well_defined(), Error);
    PresentationMap good(Z, cyclic(2), mat(1, 1, {1}));
    CHECK_NOTHROW(good.check_well_defined());
}

TEST_CASE("integer homology agrees with F2 counts on elementary abelian complexes") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        int a = 1 + rng() % 5, b = 1 + rng() % 6, c = 1 + rng() % 5;
        std::vector<BitVec> out_cols;
        for (int j = 0; j < b; ++j) {
            BitVec v(c);
            for (int i = 0; i < c; ++i)
                if (rng() & 1) v.set(i);
            out_cols.push_back(v);
        }
        std::vector<BitVec> units;
        for (int j = 0; j < b; ++j) units.push_back(BitVec::unit(b, j));
        auto ker = kernel_payloads(out_cols, units, nullptr);
        std::vector<BitVec> in_cols;
        for (int j = 0; j < a; ++j) {
            BitVec v(b);
            for (auto& k : ker)
                if (rng() & 1) v ^= k;
            in_cols.push_back(v);
        }
        auto elem = [](int k) {
            IntMatrix r(k, k);
            for (int i = 0; i < k; ++i) r(i, i) = 2;
            return GroupPresentation(std::vector<std::string>(k, "e"), r);
        };
        auto to_int = [](const std::vector<BitVec>& cols, int rows) {
            IntMatrix m(rows, static_cast<int>(cols.size()));
            for (int j = 0; j < m.cols(); ++j)
                for (int i = 0; i < rows; ++i) m(i, j) = cols[j].test(i) ? 1 : 0;
            return m;
        };
        PresentationMap in(elem(a), elem(b), to_int(in_cols, b));
        PresentationMap out(elem(b), elem(c), to_int(out_cols, c));
        NormalForm nf = complex_homology(in, out).group.normal_form();
        int d = f2_homology_dim(in_cols, out_cols, b);
        CHECK(nf.free_rank == 0);
        CHECK(static_cast<int>(nf.torsion.size()) == d);
        for (auto& t : nf.torsion) CHECK(t == 2);
    }
}
