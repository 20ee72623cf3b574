#include "bpss/verify.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "bpss/ahss.hpp"
#include "bpss/error.hpp"
#include "bpss/modcalc.hpp"

namespace bpss {

namespace {

class Tally {
public:
    explicit Tally(SuiteResult& r) : r_(r) {}
    void check(bool ok, const std::function<std::string()>& what) {
        ++r_.checks;
        if (ok) return;
        ++r_.failures;
        if (r_.first_failure.empty()) r_.first_failure = what();
    }
    void note(std::string s) { r_.notes.push_back(std::move(s)); }

private:
    SuiteResult& r_;
};

std::vector<int> range_or(int v, int lo, int hi) {
    std::vector<int> out;
    if (v > 0) return {v};
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

std::vector<Monomial> mn_monomials(const MilnorContext& ctx, int degree) {
    std::vector<int> step{2};
    return monomials_of_degree(*ctx.bg(), degree, step);
}

std::vector<Monomial> ln_monomials(const MilnorContext& ctx, int degree) {
    if (degree < 0) return {};
    std::vector<int> step(ctx.bg()->size(), 2);
    return monomials_of_degree(*ctx.bg(), degree, step);
}

// Basis of the common kernel of the given linear maps on span(domain).
std::vector<Poly2> kernel_basis(const std::vector<Poly2>& domain,
                                const std::function<std::vector<Poly2>(const Poly2&)>& maps) {
    if (domain.empty()) return {};
    std::vector<std::vector<Poly2>> imgs;
    std::map<std::pair<size_t, uint64_t>, int> index;
    for (const auto& d : domain) {
        imgs.push_back(maps(d));
        for (size_t k = 0; k < imgs.back().size(); ++k)
            for (Monomial mu : imgs.back()[k].terms()) index.emplace(std::make_pair(k, mu.bits()), 0);
    }
    int w = 0;
    for (auto& [key, v] : index) v = w++;
    int dn = static_cast<int>(domain.size());
    std::vector<BitVec> vecs, pays;
    for (int i = 0; i < dn; ++i) {
        BitVec v(std::max(w, 1));
        for (size_t k = 0; k < imgs[i].size(); ++k)
            for (Monomial mu : imgs[i][k].terms()) v.flip(index.at({k, mu.bits()}));
        vecs.push_back(std::move(v));
        pays.push_back(BitVec::unit(dn, i));
    }
    std::vector<Poly2> out;
    for (const auto& k : kernel_payloads(vecs, pays, nullptr)) {
        Poly2 p(domain[0].table());
        for (int i : k.ones()) p += domain[i];
        if (!p.is_zero()) out.push_back(std::move(p));
    }
    return out;
}

Poly2 random_combination(const std::vector<Poly2>& basis, std::mt19937_64& rng) {
    for (;;) {
        Poly2 p(basis[0].table());
        for (const auto& b : basis)
            if (rng() & 1) p += b;
        if (!p.is_zero()) return p;
    }
}

std::string join(const std::vector<int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

// ---- suites

void suite_prop23(const VerifyOptions& opt, Tally& t) {
    for (int n : range_or(opt.n, 1, 3)) {
        MilnorContext ctx(n, 5, 256);
        for (int s = 0; s <= 32; ++s)
            for (Monomial mu : mn_monomials(ctx, s)) {
                Poly2 p = Poly2::monomial(ctx.bg(), mu);
                Poly2 rp = restrict_to_ambient(ctx, p);
                for (int j = 0; j <= 5; ++j) {
                    Poly2 lhs = restrict_to_ambient(ctx, milnor_q(ctx, j, p));
                    Poly2 rhs = milnor_q_ambient(j, rp);
                    t.check(lhs == rhs, [&] {
                        return "n=" + std::to_string(n) + " j=" + std::to_string(j) + " on " + p.to_string();
                    });
                }
            }
    }
}

void suite_lemma32(const VerifyOptions& opt, Tally& t) {
    for (int n : range_or(opt.n, 1, 4)) {
        MilnorContext ctx(n, 6, 1024);
        for (int l = 1; l <= std::min(4, n); ++l)
            for (const auto& I : index_sets(n, l)) {
                std::vector<Poly2> vars;
                for (int i : I) vars.push_back(Poly2::generator(ctx.bg(), x4_index(i)));
                Poly2 xi = x_I(ctx, I);
                Poly2 pl = phi(ctx, l, xi);
                auto where = [&](const char* what) {
                    return [&, what] { return std::string(what) + " for n=" + std::to_string(n) + " I=" + index_set_name(I); };
                };
                t.check(pl == moore_det(vars), where("phi_l(x_I) = e_l"));
                t.check(!pl.is_zero(), where("phi_l(x_I) nonzero"));
                t.check(phi(ctx, l + 1, xi) == pl.square(), where("phi_{l+1}(x_I) = e_l^2"));
                t.check(phi(ctx, l + 2, xi).is_zero(), where("phi_{l+2}(x_I) = 0"));
                // the derivations lower the component by exactly one
                for (int j = 2; j <= 5; ++j) {
                    auto parts = component_split(ctx, partial(ctx, j, xi));
                    bool ok = parts.empty() || (parts.size() == 1 && parts.begin()->first == l - 1);
                    t.check(ok, where("component drop"));
                }
            }
        for (int i = 1; i <= n; ++i)
            for (int j1 = 2; j1 <= 6; ++j1)
                for (int j2 = 2; j2 <= 6; ++j2) {
                    Poly2 x = Poly2::generator(ctx.bg(), x4_index(i));
                    t.check(partial(ctx, j1, partial(ctx, j2, x)).is_zero(), [&] {
                        return "d" + std::to_string(j1) + " d" + std::to_string(j2) + " x4" + std::to_string(i);
                    });
                    t.check(partial(ctx, j1, partial(ctx, j2, x)) == partial(ctx, j2, partial(ctx, j1, x)),
                            [&] { return std::string("derivations commute"); });
                }
    }
}

void suite_prop31(const VerifyOptions& opt, Tally& t) {
    for (int n : range_or(opt.n, 1, 4)) {
        MilnorContext ctx(n, 6, 1024);
        Poly2 x3 = Poly2::generator(ctx.bg(), kX3);
        for (int l = 1; l <= std::min(4, n); ++l)
            for (const auto& I : index_sets(n, l))
                for (int r = 1; r <= 4; ++r)
                    for (int s = 0; s <= 3; ++s) {
                        if ((l - r + 1 + s) % 2 != 0) continue;
                        Poly2 xi = x_I(ctx, I);
                        Poly2 lhs = milnor_q(ctx, r + 1, phi(ctx, r, xi) * x3.pow(s));
                        Poly2 rhs = phi(ctx, r + 1, xi) * x3.pow(s + 1);
                        t.check(lhs == rhs, [&] {
                            return "n=" + std::to_string(n) + " I=" + index_set_name(I) + " r=" + std::to_string(r) +
                                   " s=" + std::to_string(s);
                        });
                    }
    }
}

void suite_lemma33(const VerifyOptions& opt, Tally& t) {
    std::mt19937_64 rng(opt.seed);
    PreimageStats stats;
    const int per_case = 12;
    for (int n : range_or(opt.n, 1, 4)) {
        MilnorContext ctx(n, 6, 1024);
        Poly2 x3 = Poly2::generator(ctx.bg(), kX3);
        for (int r = 1; r <= 4; ++r)
            for (int l = 1; l <= std::min(4, n); ++l) {
                int i = l - r + 1;
                if (i < 1) continue;
                std::vector<Poly2> gens;
                for (const auto& I : index_sets(n, l)) gens.push_back(phi(ctx, r, x_I(ctx, I)));
                for (int s = 1; s <= 3; ++s) {
                    if ((i + s) % 2 != 0) continue;
                    int found = 0;
                    for (int extra : {0, 4, 8, 12}) {
                        if (found >= per_case) break;
                        std::vector<Poly2> domain;
                        for (const auto& g : gens)
                            for (Monomial c : ln_monomials(ctx, extra)) domain.push_back(g.times(c) * x3.pow(s));
                        auto ker = kernel_basis(domain, [&](const Poly2& x) {
                            return std::vector<Poly2>{milnor_q(ctx, r + 1, x)};
                        });
                        if (ker.empty()) continue;
                        for (int k = 0; k < per_case / 2 && found < per_case; ++k, ++found) {
                            Poly2 x = random_combination(ker, rng);
                            std::string ctxs = "n=" + std::to_string(n) + " r=" + std::to_string(r) + " l=" +
                                               std::to_string(l) + " s=" + std::to_string(s) + " x=" + x.to_string();
                            try {
                                Poly2 y = lemma33_solve(ctx, r, x, s, &stats);
                                t.check(milnor_q(ctx, r + 1, y) == x, [&] { return ctxs; });
                            } catch (const Error& e) {
                                t.check(false, [&] { return ctxs + ": " + e.what(); });
                            }
                        }
                    }
                }
            }
    }
    t.note("preimage peel steps " + std::to_string(stats.peel_steps) + ", exceptional steps " +
           std::to_string(stats.exceptional_steps) + ", linear fallbacks " + std::to_string(stats.linear_fallbacks));
}

void suite_prop34(const VerifyOptions& opt, Tally& t) {
    std::mt19937_64 rng(opt.seed);
    PreimageStats stats;
    const int max_dim = 2500;
    for (int n : range_or(opt.n, 2, 4)) {
        MilnorContext ctx(n, 6, 1024);
        std::vector<std::vector<int>> Js;
        for (unsigned mask = 1; mask < 8; ++mask) {
            std::vector<int> J;
            for (int b = 0; b < 3; ++b)
                if (mask >> b & 1) J.push_back(b + 2);
            if (static_cast<int>(J.size()) <= n - 1) Js.push_back(J);
        }
        for (const auto& J : Js) {
            int r = static_cast<int>(J.size());
            int shift = 0;
            for (int j : J) shift += partial_degree(j);
            // kernels of the d_j on M_{n,i} in a few degrees
            std::vector<std::pair<int, std::vector<Poly2>>> pools;
            for (int i = 1; i + r <= n; ++i) {
                int dmin = 4 * (i + r) + shift;
                for (int D : {dmin, dmin + 3, dmin + 4, dmin + 7, dmin + 8}) {
                    std::vector<Poly2> domain;
                    for (Monomial mu : mn_monomials(ctx, D))
                        if (odd_x4_count(mu, n) == i) domain.push_back(Poly2::monomial(ctx.bg(), mu));
                    if (domain.empty() || static_cast<int>(domain.size()) > max_dim) continue;
                    auto ker = kernel_basis(domain, [&](const Poly2& x) {
                        std::vector<Poly2> out;
                        for (int j : J) out.push_back(partial(ctx, j, x));
                        return out;
                    });
                    if (!ker.empty()) pools.emplace_back(i, std::move(ker));
                }
            }
            std::string cell = "n=" + std::to_string(n) + " J=" + join(J);
            if (pools.empty()) {
                t.check(false, [&] { return cell + ": no targets in range"; });
                continue;
            }
            for (int k = 0; k < opt.samples; ++k) {
                const auto& [i, ker] = pools[k % pools.size()];
                Poly2 x = random_combination(ker, rng);
                try {
                    Poly2 g = preimage(ctx, J, x, i, &stats);
                    auto parts = component_split(ctx, g);
                    bool pure = parts.size() == 1 && parts.begin()->first == i + r;
                    t.check(partial_J(ctx, J, g) == x && pure,
                            [&] { return cell + " i=" + std::to_string(i) + " target " + x.to_string(); });
                } catch (const Error& e) {
                    t.check(false, [&] { return cell + " target " + x.to_string() + ": " + e.what(); });
                }
            }
            t.note(cell + ": " + std::to_string(opt.samples) + " targets from " + std::to_string(pools.size()) +
                   " kernel pools");
        }
    }
    t.note("preimage peel steps " + std::to_string(stats.peel_steps) + ", exceptional steps " +
           std::to_string(stats.exceptional_steps) + ", linear fallbacks " + std::to_string(stats.linear_fallbacks));
}

std::vector<int> default_ms(int n) {
    if (n == 1) return {2, 3, 4};
    if (n == 2) return {3, 4};
    return {std::min(n + 1, 4)};
}

// d_u followed by d_u is zero in the target group
void check_dd(const EPage& page, int u, Tally& t) {
    for (auto [s, tt] : report_region(page.m(), page.cutoff())) {
        if (!has_differential_target(page, u, s, tt)) continue;
        F2Differential d = differential_mod2(page, u, s, tt);
        auto [s2, t2] = d.target;
        if (!has_differential_target(page, u, s2, t2)) continue;
        F2Differential second = differential_mod2(page, u, s2, t2);
        bool ok = true;
        for (const auto& col : d.columns) {
            BitVec acc(second.target_gens);
            for (int i : col.ones()) acc ^= second.columns[i];
            if (acc.any()) ok = false;
        }
        t.check(ok, [&] {
            return "d" + std::to_string(u) + " o d" + std::to_string(u) + " nonzero from (" + std::to_string(s) + "," +
                   std::to_string(tt) + ")";
        });
    }
}

void suite_pages(const VerifyOptions& opt, Tally& t) {
    bool first = true;
    for (int n : range_or(opt.n, 1, 2)) {
        std::vector<int> ms = opt.m >= 0 ? std::vector<int>{opt.m} : default_ms(n);
        for (int m : ms) {
            int k = std::min(m, n + 1);
            EPage page = build_e2(n, m, opt.cutoff, opt.threads);
            for (int r = 0; r <= k + 1; ++r) {
                int u = 1 << (r + 1);
                page = advance_to(page, u);
                PageSummary computed = page.summary();
                auto cmp = compare_pages(computed, closed_form_page(n, m, r, opt.cutoff), true);
                t.check(cmp.equal, [&] {
                    return "n=" + std::to_string(n) + " m=" + std::to_string(m) + " E" + std::to_string(u) + " " +
                           cmp.first_mismatch;
                });
                // the differentials d_v for 2^{r+1} <= v < 2^{r+2} - 1 leave the page fixed
                EPage walk = page;
                for (int v = u; v < 2 * u - 1; ++v) {
                    walk = turn_page(walk, v);
                    t.check(compare_pages(walk.summary(), computed).equal,
                                [&] { return "page changed by d" + std::to_string(v); });
                }
                if (r + 1 <= m && r + 1 <= n + 2) check_dd(advance_to(page, 2 * u - 1), 2 * u - 1, t);
            }
            if (first) {
                // same output for 1, 2 and the default number of threads
                first = false;
                auto run = [&](int th) { return e_infinity(build_e2(n, m, opt.cutoff, th)).summary(true); };
                auto a = run(1), b = run(2), c = run(0);
                auto same = [](const PageSummary& x, const PageSummary& y) {
                    if (x.size() != y.size()) return false;
                    for (auto ix = x.begin(), iy = y.begin(); ix != x.end(); ++ix, ++iy)
                        if (ix->first != iy->first || ix->second.free != iy->second.free ||
                            ix->second.torsion != iy->second.torsion || ix->second.labels != iy->second.labels)
                            return false;
                    return true;
                };
                t.check(same(a, b) && same(a, c), [&] { return std::string("thread count changed the output"); });
            }
        }
    }
    // independent integer route at a small cutoff
    for (auto [n, m, c] : {std::tuple{1, 2, 12}, std::tuple{1, 1, 14}}) {
        if (opt.n > 0 && opt.n != n) continue;
        try {
            auto pages = snf_pages(n, m, c);
            EPage page = build_e2(n, m, c, opt.threads);
            for (const auto& [u, sum] : pages) {
                page = advance_to(page, u);
                auto cmp = compare_pages(sum, page.summary());
                t.check(cmp.equal, [&] { return "integer route E" + std::to_string(u) + " " + cmp.first_mismatch; });
            }
        } catch (const Error& e) {
            t.check(false, [&] { return std::string("integer route: ") + e.what(); });
        }
    }
}

void suite_theorems(const VerifyOptions& opt, Tally& t) {
    for (int n : range_or(opt.n, 1, 3))
        for (int m = 0; m <= 4; ++m) {
            if (opt.m >= 0 && m != opt.m) continue;
            ScanResult sr = odd_degree_scan(n, m, opt.cutoff, opt.threads);
            bool expect = m >= n + 1;
            t.check(sr.vanishes == expect, [&] {
                return "odd degree scan n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " +
                       (sr.vanishes ? std::string("vanishes") : "witness " + sr.witness);
            });
            t.note("n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " +
                   (sr.vanishes ? std::string("VANISHES")
                                : "WITNESS (" + std::to_string(sr.s) + "," + std::to_string(sr.t) + ") " + sr.witness));
        }
    for (int m = 0; m <= 2; ++m) {
        int n = m + 1;
        if (opt.n > 0 && opt.n != n) continue;
        MilnorContext ctx(n, 6, 1024);
        IndexSet I;
        for (int i = 1; i <= n; ++i) I.push_back(i);
        Poly2 cls = phi(ctx, m, x_I(ctx, I));
        auto prof = lift_profile(n, cls, m, m + 1);
        std::string name = "phi_" + std::to_string(m) + "(x_" + index_set_name(I) + ")";
        t.check(prof[0].verdict == LiftVerdict::Lifts, [&] { return name + " does not lift at m"; });
        t.check(prof[1].verdict == LiftVerdict::Obstructed && prof[1].page == differential_length(m + 1),
                [&] { return name + " is not obstructed at m+1"; });
        bool free_part = false;
        for (Monomial mu : cls.terms()) free_part |= mu.exponent(kX3) == 0;
        t.check(free_part, [&] { return name + " has no free part"; });
        t.note(name + " = " + cls.to_string() + ": lifts at m=" + std::to_string(m) + ", obstructed by d" +
               std::to_string(prof[1].page) + " -> " + prof[1].image);
    }
}

void suite_cohomology(const VerifyOptions& opt, Tally& t) {
    const int top = 40;
    for (int n : range_or(opt.n, 1, 3)) {
        auto closed = integral_cohomology(n, top + 1);
        auto bock = integral_cohomology_bockstein(n, top + 1);
        auto dims = mod2_cohomology_dims(n, top);
        for (int s = 0; s <= top; ++s) {
            const auto& a = closed.at(s);
            const auto& b = bock.at(s);
            t.check(a.normal_form() == b.normal_form(), [&] {
                return "n=" + std::to_string(n) + " degree " + std::to_string(s) + ": " + a.normal_form().to_string() +
                       " vs " + b.normal_form().to_string();
            });
            t.check(dims.at(s) == a.free + a.torsion + closed.at(s + 1).torsion,
                    [&] { return "universal coefficients fail in degree " + std::to_string(s); });
        }
    }
    // small degrees again through the integer homology of the Bockstein complex
    if (opt.n <= 1) {
        auto t1 = bg_table(1);
        auto bock = integral_cohomology_bockstein(1, 13);
        for (int s = 1; s <= 12; ++s) {
            auto pres = [&](int d) {
                auto mons = monomials_of_degree(*t1, d);
                std::vector<std::string> labels;
                for (auto mu : mons) labels.push_back(monomial_to_string(*t1, mu));
                IntMatrix rel(static_cast<int>(mons.size()), static_cast<int>(mons.size()));
                for (int i = 0; i < rel.rows(); ++i) rel(i, i) = 2;
                return std::make_pair(mons, GroupPresentation(labels, rel));
            };
            auto q0 = [&](const std::vector<Monomial>& src, const std::vector<Monomial>& dst) {
                IntMatrix M(static_cast<int>(dst.size()), static_cast<int>(src.size()));
                for (size_t j = 0; j < src.size(); ++j) {
                    int e = src[j].exponent(kX2);
                    if (!(e & 1)) continue;
                    Monomial img = src[j].with_exponent(kX2, e - 1) * Monomial::unit(kX3);
                    for (size_t i = 0; i < dst.size(); ++i)
                        if (dst[i] == img) M(static_cast<int>(i), static_cast<int>(j)) = 1;
                }
                return M;
            };
            auto [m0, p0] = pres(s - 1);
            auto [m1, p1] = pres(s);
            auto [m2, p2] = pres(s + 1);
            Homology h = complex_homology(PresentationMap(p0, p1, q0(m0, m1)), PresentationMap(p1, p2, q0(m1, m2)));
            NormalForm nf = h.group.normal_form();
            t.check(nf.free_rank == 0 && static_cast<int>(nf.torsion.size()) == bock.at(s).free,
                    [&] { return "Bockstein homology in degree " + std::to_string(s) + ": " + nf.to_string(); });
        }
        NormalForm six = bock.at(6).normal_form();
        t.check(six.free_rank == 0 && six.torsion == std::vector<Int>{2} && bock.at(6).torsion_basis ==
                    std::vector<std::string>{"x3^2"},
                [&] { return "degree 6 of BG_1: " + six.to_string(); });
    }
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"prop23", "prop31", "lemma32", "lemma33", "prop34", "pages", "theorems", "cohomology"};
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opt) {
    SuiteResult r;
    r.suite = name;
    Tally t(r);
    static const std::map<std::string, void (*)(const VerifyOptions&, Tally&)> table = {
        {"prop23", suite_prop23},   {"prop31", suite_prop31}, {"lemma32", suite_lemma32},
        {"lemma33", suite_lemma33}, {"prop34", suite_prop34}, {"pages", suite_pages},
        {"theorems", suite_theorems}, {"cohomology", suite_cohomology}};
    auto it = table.find(name);
    if (it == table.end()) throw Error(ErrorCode::InvalidArgument, "unknown suite " + name);
    it->second(opt, t);
    return r;
}

}  // namespace bpss
