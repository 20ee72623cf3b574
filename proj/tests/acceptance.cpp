#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "bpss/ahss.hpp"
#include "bpss/error.hpp"
#include "bpss/modcalc.hpp"
#include "bpss/verify.hpp"

using namespace bpss;

namespace {

struct Outcome {
    long checks = 0;
    long failures = 0;
    std::string first;
    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures++ == 0) first = what;
    }
    void add(const SuiteResult& r) {
        checks += r.checks;
        if (r.failures && failures == 0) first = r.suite + ": " + r.first_failure;
        failures += r.failures;
    }
};

int failed = 0;

void criterion(int id, const std::string& name, double budget, const std::function<void(Outcome&)>& body) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.check(false, std::string("exception: ") + e.what());
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = o.checks > 0 && o.failures == 0 && (budget <= 0 || dt <= budget);
    if (!ok) ++failed;
    std::printf("%s %d %s: %ld checks, %ld failures, %.1fs", ok ? "PASS" : "FAIL", id, name.c_str(), o.checks,
                o.failures, dt);
    if (budget > 0) std::printf(" (budget %.0fs)", budget);
    if (!o.first.empty()) std::printf(" first failure: %s", o.first.c_str());
    std::printf("\n");
    std::fflush(stdout);
}

void pages_match(Outcome& o, int n, int m, int cutoff, int r_from, int r_to) {
    EPage p = build_e2(n, m, cutoff);
    for (int r = r_from; r <= r_to; ++r) {
        int u = 1 << (r + 1);
        p = advance_to(p, u);
        auto cmp = compare_pages(p.summary(), closed_form_page(n, m, r, cutoff), true);
        o.check(cmp.equal && cmp.cells > 0, "n=" + std::to_string(n) + " m=" + std::to_string(m) + " E" +
                                                std::to_string(u) + " " + cmp.first_mismatch);
    }
}

}  // namespace

int main() {
    criterion(1, "n=1, m=2..4, cutoff 48: E2, E4, E8 equal the closed forms", 30, [](Outcome& o) {
        for (int m = 2; m <= 4; ++m) pages_match(o, 1, m, 48, 0, 2);
    });
    criterion(2, "n=2, m=3..4, cutoff 48: E4, E8, E16 equal the closed forms", 120, [](Outcome& o) {
        for (int m = 3; m <= 4; ++m) pages_match(o, 2, m, 48, 1, 3);
    });
    criterion(3, "odd degree part vanishes iff m >= n+1 (n=1..3, m=0..4)", 300, [](Outcome& o) {
        for (int n = 1; n <= 3; ++n)
            for (int m = 0; m <= 4; ++m) {
                ScanResult sr = odd_degree_scan(n, m, 48);
                o.check(sr.vanishes == (m >= n + 1), "n=" + std::to_string(n) + " m=" + std::to_string(m) + " " +
                                                         (sr.vanishes ? std::string("vanishes") : sr.witness));
            }
    });
    criterion(4, "phi_m(x41...x4,m+1) lifts to BP<m>, not to BP<m+1>, free part nonzero (m=0..2)", 0,
              [](Outcome& o) {
                  for (int m = 0; m <= 2; ++m) {
                      int n = m + 1;
                      MilnorContext ctx(n, 6);
                      IndexSet I;
                      for (int i = 1; i <= n; ++i) I.push_back(i);
                      Poly2 cls = phi(ctx, m, x_I(ctx, I));
                      auto prof = lift_profile(n, cls, m, m + 1);
                      std::string tag = "m=" + std::to_string(m) + " ";
                      o.check(prof[0].verdict == LiftVerdict::Lifts, tag + "does not lift");
                      o.check(prof[1].verdict == LiftVerdict::Obstructed &&
                                  prof[1].page == differential_length(m + 1),
                              tag + "not obstructed at m+1");
                      bool free_part = false;
                      for (Monomial mu : cls.terms()) free_part |= mu.exponent(kX3) == 0;
                      o.check(free_part, tag + "no free part");
                  }
              });
    criterion(5, "Q_j generator images against the restriction oracle (j<=5, degree<=32, n<=3)", 0,
              [](Outcome& o) { o.add(run_suite("prop23", {})); });
    criterion(6, "phi_r, d_j and preimage properties (l,r<=4, s<=3, n<=4; 500 targets per cell)", 0,
              [](Outcome& o) {
                  for (const char* s : {"lemma32", "prop31", "lemma33", "prop34"}) o.add(run_suite(s, {}));
              });
    criterion(7, "integral cohomology: closed form, Bockstein and UCT (s<=40, n<=3)", 0,
              [](Outcome& o) { o.add(run_suite("cohomology", {})); });
    criterion(8, "d o d = 0, fixed intermediate pages, torsion of order 2, thread independence", 0,
              [](Outcome& o) { o.add(run_suite("pages", {})); });
    std::printf("%d of 8 criteria failed\n", failed);
    return failed ? 1 : 0;
}
