#include "bpss/modcalc.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "bpss/f2linalg.hpp"

namespace bpss {

Poly2 x_I(const MilnorContext& ctx, const IndexSet& I) {
    Monomial m;
    for (int i : I) {
        if (i < 1 || i > ctx.n()) throw Error(ErrorCode::OutOfRange, "index set entry out of range");
        if (m.exponent(x4_index(i))) throw Error(ErrorCode::InvalidArgument, "repeated index");
        m = m.with_exponent(x4_index(i), 1);
    }
    return Poly2::monomial(ctx.bg(), m);
}

std::string index_set_name(const IndexSet& I) {
    std::string s = "{";
    for (size_t k = 0; k < I.size(); ++k) s += (k ? "," : "") + std::to_string(I[k]);
    return s + "}";
}

std::vector<IndexSet> index_sets(int n, int size) {
    std::vector<IndexSet> out;
    if (size < 0 || size > n) return out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != size) continue;
        IndexSet I;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) I.push_back(i + 1);
        out.push_back(I);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool in_Mn(const Poly2& p) {
    for (auto m : p.terms())
        if (m.exponent(kX2) & 1) return false;
    return true;
}

int odd_x4_count(Monomial m, int n) {
    int c = 0;
    for (int i = 1; i <= n; ++i) c += m.exponent(x4_index(i)) & 1;
    return c;
}

std::map<int, Poly2> component_split(const MilnorContext& ctx, const Poly2& p) {
    if (!in_Mn(p)) throw Error(ErrorCode::Precondition, "element is not in M_n");
    std::map<int, std::vector<Monomial>> parts;
    for (auto m : p.terms()) parts[odd_x4_count(m, ctx.n())].push_back(m);
    std::map<int, Poly2> out;
    for (auto& [i, v] : parts) out.emplace(i, Poly2(ctx.bg(), std::move(v)));
    return out;
}

int partial_degree(int j) { return (1 << (j + 1)) - 4; }

Poly2 partial(const MilnorContext& ctx, int j, const Poly2& x) {
    if (j < 2 || j > ctx.max_j()) throw Error(ErrorCode::OutOfRange, "d_j needs 2 <= j <= max_j");
    if (x.is_zero()) return Poly2(ctx.bg());
    require_same_table(ctx.bg(), x.table());
    if (!in_Mn(x)) throw Error(ErrorCode::Precondition, "element is not in M_n");
    std::vector<std::optional<Poly2>> ims(ctx.bg()->size(), Poly2(ctx.bg()));
    for (int i = 1; i <= ctx.n(); ++i) {
        Poly2 x4 = Poly2::generator(ctx.bg(), x4_index(i));
        Poly2 s(ctx.bg());
        for (int k = 1; k < j; ++k) s += ctx.alpha(j, k) * x4.frobenius(k);
        ims[x4_index(i)] = s;
    }
    return Derivation(ctx.bg(), std::move(ims)).apply(x);
}

Poly2 partial_J(const MilnorContext& ctx, const std::vector<int>& J, const Poly2& x) {
    Poly2 r = x;
    for (auto it = J.rbegin(); it != J.rend(); ++it) r = partial(ctx, *it, r);
    if (r.is_zero()) return Poly2(ctx.bg());
    return r;
}

Poly2 phi(const MilnorContext& ctx, int r, const Poly2& x) {
    std::vector<int> J;
    for (int j = 2; j <= r; ++j) J.push_back(j);
    return partial_J(ctx, J, x);
}

Poly2 moore_det(const std::vector<Poly2>& vars) {
    if (vars.empty()) throw Error(ErrorCode::InvalidArgument, "empty variable list");
    int k = static_cast<int>(vars.size());
    if (k > 8) throw Error(ErrorCode::OutOfRange, "too many variables");
    std::vector<Poly2> f(1u << k, Poly2(vars[0].table()));
    f[0] = Poly2::one(vars[0].table());
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        if (f[mask].is_zero()) continue;
        int row = std::popcount(mask);
        for (int c = 0; c < k; ++c)
            if (!(mask >> c & 1)) f[mask | (1u << c)] += f[mask] * vars[c].frobenius(row);
    }
    return f[(1u << k) - 1];
}

namespace {

std::vector<FamilyElement> family(const MilnorContext& ctx, int r, auto keep) {
    std::vector<FamilyElement> out;
    for (int l = 1; l <= ctx.n(); ++l) {
        if (!keep(l)) continue;
        for (auto& I : index_sets(ctx.n(), l)) out.push_back({I, phi(ctx, r, x_I(ctx, I))});
    }
    return out;
}

}  // namespace

std::vector<FamilyElement> family_e(const MilnorContext& ctx, int r) {
    if (r < 2) return {};
    return family(ctx, r, [&](int l) { return l == r - 1; });
}

std::vector<FamilyElement> family_y(const MilnorContext& ctx, int r) {
    if (r <= 0) return family(ctx, 0, [](int) { return true; });
    return family(ctx, r, [&](int l) { return l - r + 1 > 0 && (l - r + 1) % 2 == 0; });
}

std::vector<FamilyElement> family_z(const MilnorContext& ctx, int r) {
    if (r < 1) return {};
    return family(ctx, r, [&](int l) { return l - r + 1 > 0 && (l - r + 1) % 2 == 1; });
}

namespace {

struct Solver {
    const MilnorContext& ctx;
    std::vector<int> J;
    PreimageStats* stats;

    Poly2 coefficient(const Poly2& f, int var, int k) const {
        std::vector<Monomial> out;
        int g = x4_index(var);
        for (auto m : f.terms())
            if (m.exponent(g) == k) out.push_back(m.with_exponent(g, 0));
        return Poly2(ctx.bg(), std::move(out));
    }

    int lowest_power(const Poly2& f, int var) const {
        int g = x4_index(var), k = 1 << 30;
        for (auto m : f.terms()) k = std::min(k, m.exponent(g));
        return k;
    }

    bool killed(const std::vector<int>& js, const Poly2& f) const {
        for (int j : js)
            if (!partial(ctx, j, f).is_zero()) return false;
        return true;
    }

    // direct linear solve of d_J(g) = f with g in M_{v,comp} using x41..x4v
    std::optional<Poly2> linear(const std::vector<int>& js, const Poly2& f, int v, int comp) const {
        if (f.is_zero()) return Poly2(ctx.bg());
        int sh = 0;
        for (int j : js) sh += partial_degree(j);
        int d = *f.homogeneous_degree() - sh;
        if (d < 0) return std::nullopt;
        std::vector<int> step{2};
        std::vector<Monomial> basis;
        for (auto m : monomials_of_degree(*ctx.bg(), d, step)) {
            bool ok = true;
            for (int t = v + 1; t <= ctx.n(); ++t)
                if (m.exponent(x4_index(t))) ok = false;
            if (ok && odd_x4_count(m, ctx.n()) == comp) basis.push_back(m);
        }
        std::vector<Poly2> ims;
        std::unordered_map<uint64_t, int> index;
        for (auto m : basis) {
            ims.push_back(partial_J(ctx, js, Poly2::monomial(ctx.bg(), m)));
            for (auto x : ims.back().terms()) index.emplace(x.bits(), static_cast<int>(index.size()));
        }
        for (auto x : f.terms())
            if (!index.count(x.bits())) return std::nullopt;
        int w = static_cast<int>(index.size());
        std::vector<BitVec> cols;
        for (auto& p : ims) {
            BitVec c(w);
            for (auto x : p.terms()) c.set(index[x.bits()]);
            cols.push_back(std::move(c));
        }
        BitVec t(w);
        for (auto x : f.terms()) t.set(index[x.bits()]);
        auto sol = solve_f2(cols, t);
        if (!sol) return std::nullopt;
        std::vector<Monomial> g;
        for (int k : sol->ones()) g.push_back(basis[k]);
        return Poly2(ctx.bg(), std::move(g));
    }

    // f in M_{v,i} (variables x41..x4v), killed by d_j for j in js
    Poly2 solve(const std::vector<int>& js, Poly2 f, int v, int i) {
        Poly2 g(ctx.bg());
        if (f.is_zero()) return g;
        if (v == 0 || i < 1) throw Error(ErrorCode::Internal, "nonzero kernel element with no preimage");
        int top = *f.homogeneous_degree();
        int fuel = top / 4 + 2;
        Poly2 xv = Poly2::generator(ctx.bg(), x4_index(v));
        while (!f.is_zero()) {
            if (--fuel < 0) throw Error(ErrorCode::Internal, "preimage peeling did not terminate");
            if (stats) ++stats->peel_steps;
            int k = lowest_power(f, v);
            Poly2 fk = coefficient(f, v, k);
            Poly2 gk(ctx.bg());
            if (k % 2 == 0 || i >= 2) {
                gk = solve(js, fk, v - 1, k % 2 == 0 ? i : i - 1);
            } else {
                if (stats) ++stats->exceptional_steps;
                gk = exceptional(js, f, fk, k, v);
            }
            Poly2 term = gk * xv.pow(k);
            f += partial_J(ctx, js, term);
            g += term;
            if (!f.is_zero() && lowest_power(f, v) <= k)
                throw Error(ErrorCode::Internal, "preimage peeling made no progress");
        }
        return g;
    }

    // k odd and i = 1: f_k lies in M_{v-1,0}; look for g_k in M_{v-1,r} with d_J(g_k) = f_k
    Poly2 exceptional(const std::vector<int>& js, const Poly2& f, const Poly2& fk, int k, int v) {
        int r = static_cast<int>(js.size());
        int j1 = *std::min_element(js.begin(), js.end());
        std::vector<int> rest;
        for (int j : js)
            if (j != j1) rest.push_back(j);
        Poly2 h = coefficient(f, v, k + (1 << (j1 - 1)) - 1);
        std::optional<Poly2> gk;
        if (r == 1) {
            gk = h;
        } else if (killed(rest, h)) {
            gk = solve(rest, h, v - 1, 1);
        }
        if (gk && partial_J(ctx, js, *gk) == fk) return *gk;
        // the coefficient identity behind the step above only holds exactly
        // when no lower alpha terms interfere; fall back to a direct solve
        if (stats) ++stats->linear_fallbacks;
        auto lin = linear(js, fk, v - 1, r);
        if (!lin) throw Error(ErrorCode::Internal, "no preimage for a kernel element");
        return *lin;
    }
};

}  // namespace

Poly2 preimage(const MilnorContext& ctx, const std::vector<int>& J, const Poly2& target, int i,
               PreimageStats* stats) {
    if (J.empty()) throw Error(ErrorCode::InvalidArgument, "J must be nonempty");
    std::vector<int> js = J;
    std::sort(js.begin(), js.end());
    if (std::adjacent_find(js.begin(), js.end()) != js.end())
        throw Error(ErrorCode::InvalidArgument, "J has repeated entries");
    for (int j : js)
        if (j < 2 || j > ctx.max_j()) throw Error(ErrorCode::OutOfRange, "J entries must be in 2..max_j");
    if (i < 1) throw Error(ErrorCode::Precondition, "component index must be at least 1");
    if (target.is_zero()) return Poly2(ctx.bg());
    require_same_table(ctx.bg(), target.table());
    if (!target.homogeneous_degree()) throw Error(ErrorCode::Precondition, "target must be homogeneous");
    auto parts = component_split(ctx, target);
    if (parts.size() != 1 || parts.begin()->first != i)
        throw Error(ErrorCode::Precondition, "target is not in M_{n,i}");
    Solver sv{ctx, js, stats};
    if (!sv.killed(js, target)) throw Error(ErrorCode::Precondition, "target is not killed by every d_j");
    Poly2 g = sv.solve(js, target, ctx.n(), i);
    if (!(partial_J(ctx, js, g) == target)) throw Error(ErrorCode::Internal, "preimage check failed");
    return g;
}

Poly2 lemma33_solve(const MilnorContext& ctx, int r, const Poly2& x, int s, PreimageStats* stats) {
    if (r < 1 || r + 1 > ctx.max_j()) throw Error(ErrorCode::OutOfRange, "r out of range");
    if (s < 1) throw Error(ErrorCode::Precondition, "needs s >= 1");
    if (x.is_zero()) return Poly2(ctx.bg());
    std::vector<Monomial> w;
    for (auto m : x.terms()) {
        int e = m.exponent(kX3);
        if (e < s || (e - s) % 2) throw Error(ErrorCode::Precondition, "x is not x3^s times an even element");
        w.push_back(m.with_exponent(kX3, e - s));
    }
    Poly2 wp(ctx.bg(), std::move(w));
    auto parts = component_split(ctx, wp);
    if (parts.size() != 1) throw Error(ErrorCode::Precondition, "x is not in a single component");
    std::vector<int> J;
    for (int j = 2; j <= r + 1; ++j) J.push_back(j);
    Poly2 g = preimage(ctx, J, wp, parts.begin()->first, stats);
    std::vector<Monomial> even;
    for (auto m : g.terms())
        if (m.exponent(kX3) % 2 == 0) even.push_back(m);
    Poly2 y = phi(ctx, r, Poly2(ctx.bg(), std::move(even))) * Poly2::generator(ctx.bg(), kX3).pow(s - 1);
    if (!(milnor_q(ctx, r + 1, y) == x)) throw Error(ErrorCode::Internal, "Q_{r+1}(y) != x");
    return y;
}

}  // namespace bpss
