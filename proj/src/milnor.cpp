#include "bpss/milnor.hpp"

#include <unordered_map>

#include "bpss/f2linalg.hpp"

namespace bpss {

TablePtr bg_table(int n) {
    if (n < 1 || n > 6) throw Error(ErrorCode::OutOfRange, "n must be in 1..6");
    std::vector<Generator> g{{"x2", 2}, {"x3", 3}};
    for (int i = 1; i <= n; ++i) g.push_back({"x4" + std::to_string(i), 4});
    return make_table(std::move(g));
}

TablePtr ambient_table(int n) {
    if (n < 0 || n > 6) throw Error(ErrorCode::OutOfRange, "n must be in 0..6");
    std::vector<Generator> g{{"s1", 1}, {"s2", 1}};
    for (int i = 1; i <= n; ++i) g.push_back({"t" + std::to_string(i), 1});
    return make_table(std::move(g));
}

namespace {

std::vector<std::vector<Poly2>> alpha_table(const TablePtr& t, int maxj) {
    std::vector<std::vector<Poly2>> a(maxj + 1);
    Poly2 x2 = Poly2::generator(t, kX2), x3 = Poly2::generator(t, kX3);
    for (int j = 1; j <= maxj; ++j) {
        a[j].assign(j, Poly2(t));
        a[j][j - 1] = Poly2::one(t);
        if (j < 2) continue;
        Poly2 p2 = x2.frobenius(j - 1), p3 = x3.frobenius(j - 1);
        a[j][j - 2] = a[j - 1][j - 2] * p2;
        for (int k = 0; k <= j - 3; ++k) a[j][k] = a[j - 1][k] * p2 + a[j - 2][k] * p3;
    }
    return a;
}

}  // namespace

Poly2 alpha(int j, int k) {
    if (j < 1 || j > MilnorContext::kMaxJ || k < 0 || k >= j) throw Error(ErrorCode::OutOfRange, "alpha index");
    auto t = make_table({{"x2", 2}, {"x3", 3}});
    return alpha_table(t, j)[j][k];
}

MilnorContext::MilnorContext(int n, int max_j, int degree_cap)
    : n_(n), max_j_(max_j), degree_cap_(degree_cap), bg_(bg_table(n)), amb_(ambient_table(n)) {
    if (max_j < 0 || max_j > kMaxJ) throw Error(ErrorCode::OutOfRange, "max_j must be in 0..7");
    alpha_ = alpha_table(bg_, std::max(max_j, 1));

    Poly2 s1 = Poly2::generator(amb_, 0), s2 = Poly2::generator(amb_, 1);
    Poly2 r2 = s1 * s1 + s1 * s2 + s2 * s2;
    Poly2 r3 = s1 * s1 * s2 + s1 * s2 * s2;
    restr_ = {r2, r3};
    for (int i = 1; i <= n; ++i) {
        Poly2 t = Poly2::generator(amb_, 1 + i);
        restr_.push_back(t.pow(4) + r2 * t * t + r3 * t);
    }

    int ng = bg_->size();
    Poly2 x2 = Poly2::generator(bg_, kX2), x3 = Poly2::generator(bg_, kX3);
    q_.assign(max_j + 1, std::vector<Poly2>(ng, Poly2(bg_)));
    q_[0][kX2] = x3;
    for (int j = 1; j <= max_j; ++j) {
        // Q_j(x2) lies in F2[x2, x3]; recover it from the ambient ring
        Poly2 target = milnor_q_ambient(j, r2);
        auto expr = subalgebra_express({r2, r3}, target, degree_cap_);
        if (!expr) throw Error(ErrorCode::Internal, "Q_j(x2) is not expressible in x2, x3");
        RingMap back(expr->table(), bg_, {x2, x3});
        q_[j][kX2] = back.apply(*expr);
        q_[j][kX3] = alpha_[j][0] * x3 * x3;
        for (int i = 1; i <= n; ++i) {
            Poly2 x4 = Poly2::generator(bg_, x4_index(i));
            Poly2 sum(bg_);
            for (int k = 0; k < j; ++k) sum += alpha_[j][k] * x4.frobenius(k);
            q_[j][x4_index(i)] = x3 * sum;
        }
    }
}

const Poly2& MilnorContext::alpha(int j, int k) const {
    if (j < 1 || j >= static_cast<int>(alpha_.size()) || k < 0 || k >= j)
        throw Error(ErrorCode::OutOfRange, "alpha index");
    return alpha_[j][k];
}

const Poly2& MilnorContext::q_of_generator(int j, int gen) const {
    if (j < 0 || j > max_j_) throw Error(ErrorCode::OutOfRange, "Q_j index beyond the context");
    if (gen < 0 || gen >= bg_->size()) throw Error(ErrorCode::OutOfRange, "generator index");
    return q_[j][gen];
}

Poly2 milnor_q(const MilnorContext& ctx, int j, const Poly2& p) {
    if (j < 0 || j > ctx.max_j()) throw Error(ErrorCode::OutOfRange, "Q_j index beyond the context");
    if (p.is_zero()) return Poly2(ctx.bg());
    require_same_table(ctx.bg(), p.table());
    int top = p.terms().front().degree(*ctx.bg());
    if (top + (1 << (j + 1)) - 1 > ctx.degree_cap())
        throw Error(ErrorCode::DegreeOverflow, "result degree exceeds the configured cap");
    std::vector<Monomial> acc;
    int ng = ctx.bg()->size();
    for (auto m : p.terms()) {
        for (int g = 0; g < ng; ++g) {
            int e = m.exponent(g);
            if (!(e & 1)) continue;
            Monomial rest = m.with_exponent(g, e - 1);
            for (auto x : ctx.q_of_generator(j, g).terms()) acc.push_back(x * rest);
        }
    }
    return Poly2(ctx.bg(), std::move(acc));
}

Poly2 milnor_q_ambient(int j, const Poly2& p) {
    if (j < 0 || j > MilnorContext::kMaxJ) throw Error(ErrorCode::OutOfRange, "Q_j index");
    if (p.is_zero()) return p;
    const auto& t = *p.table();
    for (int i = 0; i < t.size(); ++i)
        if (t[i].degree != 1) throw Error(ErrorCode::InvalidArgument, "ambient generators must have degree 1");
    int pw = 1 << (j + 1);
    std::vector<Monomial> acc;
    for (auto m : p.terms())
        for (int g = 0; g < t.size(); ++g) {
            int e = m.exponent(g);
            if (e & 1) acc.push_back(m.with_exponent(g, e - 1 + pw));
        }
    return Poly2(p.table(), std::move(acc));
}

Poly2 restrict_to_ambient(const MilnorContext& ctx, const Poly2& p) {
    std::vector<Poly2> ims;
    for (int g = 0; g < ctx.bg()->size(); ++g) ims.push_back(ctx.restriction_of_generator(g));
    RingMap f(ctx.bg(), ctx.ambient(), ims);
    return f.apply(p);
}

bool restriction_injective(const MilnorContext& ctx, int max_degree) {
    std::vector<Poly2> ims;
    for (int g = 0; g < ctx.bg()->size(); ++g) ims.push_back(ctx.restriction_of_generator(g));
    RingMap f(ctx.bg(), ctx.ambient(), ims);
    for (int d = 0; d <= max_degree; ++d) {
        auto mons = monomials_of_degree(*ctx.bg(), d);
        std::vector<Poly2> rs;
        std::unordered_map<uint64_t, int> index;
        for (auto m : mons) {
            rs.push_back(f.apply(m));
            for (auto x : rs.back().terms()) index.emplace(x.bits(), static_cast<int>(index.size()));
        }
        std::vector<BitVec> vecs;
        for (auto& r : rs) {
            BitVec v(static_cast<int>(index.size()));
            for (auto x : r.terms()) v.set(index[x.bits()]);
            vecs.push_back(std::move(v));
        }
        if (rank_f2(vecs) != static_cast<int>(mons.size())) return false;
    }
    return true;
}

}  // namespace bpss
