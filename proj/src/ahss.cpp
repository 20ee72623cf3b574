#include "bpss/ahss.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

#include "bpss/error.hpp"
#include "bpss/internal.hpp"

namespace bpss {

int differential_length(int w) { return (1 << (w + 1)) - 1; }
int v_degree(int w) { return -((1 << (w + 1)) - 2); }

std::vector<VMono> v_monomials(int m, int t) {
    std::vector<VMono> out;
    if (t > 0 || t % 2 != 0) return out;
    VMono e(m, 0);
    std::function<void(int, int)> rec = [&](int w, int rem) {
        if (w == 0) {
            if (rem == 0) out.push_back(e);
            return;
        }
        int dw = -v_degree(w);
        for (int k = rem / dw; k >= 0; --k) {
            e[w - 1] = k;
            rec(w - 1, rem - k * dw);
        }
        e[w - 1] = 0;
    };
    rec(m, -t);
    return out;
}

std::string vmono_to_string(const VMono& e) {
    std::string s;
    for (size_t w = 0; w < e.size(); ++w) {
        if (!e[w]) continue;
        if (!s.empty()) s += "*";
        s += "v" + std::to_string(w + 1);
        if (e[w] > 1) s += "^" + std::to_string(e[w]);
    }
    return s.empty() ? "1" : s;
}

unsigned vmono_support(const VMono& e) {
    unsigned p = 0;
    for (size_t w = 0; w < e.size(); ++w)
        if (e[w]) p |= 1u << w;
    return p;
}

std::string class_label(const VMono& e, const std::string& poly, bool doubled) {
    std::string prefix = doubled ? "v0" : "";
    std::string v = vmono_to_string(e);
    if (v != "1") prefix += prefix.empty() ? v : "*" + v;
    if (prefix.empty()) return poly;
    if (poly == "1") return prefix;
    bool compound = poly.find(' ') != std::string::npos;
    return prefix + "*" + (compound ? "(" + poly + ")" : poly);
}

std::vector<Bidegree> report_region(int m, int cutoff) {
    std::vector<Bidegree> out;
    int tmin = m == 0 ? 0 : -cutoff;
    for (int s = 0; s <= 2 * cutoff; ++s)
        for (int t = 0; t >= tmin; t -= 2)
            if (s + t <= cutoff) out.emplace_back(s, t);
    return out;
}

NormalForm CellGroup::normal_form() const {
    NormalForm nf;
    nf.free_rank = free;
    nf.torsion.assign(torsion, Int(2));
    return nf;
}

NormalForm IntegralCell::normal_form() const {
    NormalForm nf;
    nf.free_rank = free;
    nf.torsion.assign(torsion, Int(2));
    return nf;
}

int default_threads() {
    if (const char* env = std::getenv("BPSS_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? static_cast<int>(h) : 1;
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!err) err = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    int k = std::min(threads, count);
    for (int i = 0; i < k; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// ---- M_n gradings

MnGrading::MnGrading(const MilnorContext& ctx, int max_degree)
    : table_(ctx.bg()), max_degree_(max_degree), basis_(max_degree + 1), free_(max_degree + 1, 0),
      index_(max_degree + 1) {
    std::vector<int> step(table_->size(), 1);
    step[kX2] = 2;
    for (int s = 0; s <= max_degree; ++s) {
        auto mons = monomials_of_degree(*table_, s, step);
        std::stable_partition(mons.begin(), mons.end(), [](Monomial m) { return m.exponent(kX3) == 0; });
        free_[s] = static_cast<int>(
            std::count_if(mons.begin(), mons.end(), [](Monomial m) { return m.exponent(kX3) == 0; }));
        for (size_t i = 0; i < mons.size(); ++i) index_[s][mons[i].bits()] = static_cast<int>(i);
        basis_[s] = std::move(mons);
    }
}

int MnGrading::index(int s, Monomial m) const {
    if (s < 0 || s > max_degree_) throw Error(ErrorCode::DegreeOverflow, "degree outside the grading");
    auto it = index_[s].find(m.bits());
    if (it == index_[s].end())
        throw Error(ErrorCode::Internal, "monomial " + monomial_to_string(*table_, m) + " not in M_n^" +
                                             std::to_string(s));
    return it->second;
}

BitVec MnGrading::to_vector(int s, const Poly2& p) const {
    BitVec v(dim(s));
    for (Monomial m : p.terms()) v.flip(index(s, m));
    return v;
}

Poly2 MnGrading::to_poly(int s, const BitVec& v) const {
    std::vector<Monomial> terms;
    for (int i : v.ones()) terms.push_back(basis_[s][i]);
    return Poly2(table_, std::move(terms));
}

// ---- stage engine

AhssContext::AhssContext(int n_, int m_, int cutoff_, int threads_)
    : n(n_), m(m_), cutoff(cutoff_), S(2 * cutoff_ + (m_ > 0 ? differential_length(m_) : 0)),
      threads(threads_ > 0 ? threads_ : default_threads()),
      milnor(n_, std::clamp(m_, 1, MilnorContext::kMaxJ), 2 * cutoff_ + 2 * differential_length(std::max(m_, 1)) + 8),
      grading(milnor, S) {}

BitVec AhssContext::q_vector(int W, int s, Monomial mu) const {
    int u = differential_length(W);
    BitVec out(grading.dim(s + u));
    for (int g = 0; g < static_cast<int>(milnor.bg()->size()); ++g) {
        int e = mu.exponent(g);
        if (!(e & 1)) continue;
        Monomial rest = mu.with_exponent(g, e - 1);
        for (Monomial q : milnor.q_of_generator(W, g).terms()) out.flip(grading.index(s + u, rest * q));
    }
    return out;
}

std::vector<BitVec> AhssContext::q_table(int W, int s) const {
    std::vector<BitVec> tab;
    tab.reserve(grading.dim(s));
    for (Monomial mu : grading.basis(s)) tab.push_back(q_vector(W, s, mu));
    return tab;
}

BitVec apply_table(const std::vector<BitVec>& tab, const BitVec& z, int width) {
    BitVec r(width);
    for (int i : z.ones()) r ^= tab[i];
    return r;
}

namespace {

int z_max_for(const AhssContext& c, int W) {
    return W < c.m ? c.S - differential_length(W + 1) : 2 * c.cutoff;
}
int b_max_for(const AhssContext& c, int W) { return W < c.m ? c.S : 2 * c.cutoff; }

unsigned low_bits(int k) { return k <= 0 ? 0u : (1u << k) - 1; }

std::shared_ptr<const StageData> stage_zero(const AhssContext& c) {
    auto d = std::make_shared<StageData>();
    d->stage = 0;
    d->z_max = z_max_for(c, 0);
    d->b_max = b_max_for(c, 0);
    int keys = 1 << c.m;
    d->Z.resize(d->z_max + 1);
    d->B.resize(d->b_max + 1);
    for (int s = 0; s <= d->z_max; ++s)
        d->Z[s].assign(keys, std::make_shared<const EchelonBasis>(EchelonBasis::full(c.grading.dim(s))));
    for (int s = 0; s <= d->b_max; ++s)
        d->B[s].assign(keys, std::make_shared<const EchelonBasis>(c.grading.dim(s)));
    return d;
}

std::shared_ptr<const StageData> next_stage(const AhssContext& c, const StageData& old) {
    const int W = old.stage + 1;
    const int u = differential_length(W);
    auto d = std::make_shared<StageData>();
    d->stage = W;
    d->z_max = z_max_for(c, W);
    d->b_max = b_max_for(c, W);
    const int keys = 1 << c.m;
    const unsigned zmask = low_bits(W - 1);
    const unsigned bmask = low_bits(W);
    const unsigned wbit = 1u << (W - 1);
    d->Z.assign(d->z_max + 1, std::vector<SubPtr>(keys));
    d->B.assign(d->b_max + 1, std::vector<SubPtr>(keys));

    // B cells without v_W are unchanged; those with v_W in degrees below u get no new images
    for (int s = 0; s <= d->b_max; ++s)
        for (int P = 0; P < keys; ++P)
            if (!(P & wbit) || s < u) d->B[s][P] = old.B[s][P & ~wbit];

    const int top = std::max(d->z_max, d->b_max - u);
    parallel_for(top + 1, c.threads, [&](int i) {
        const int s = top - i;
        const int ds = c.grading.dim(s), dt = c.grading.dim(s + u);
        const bool want_z = s <= d->z_max;
        const bool want_b = s + u <= d->b_max;
        std::vector<BitVec> tab = c.q_table(W, s);

        if (want_z) {
            std::map<std::pair<const EchelonBasis*, const EchelonBasis*>, SubPtr> memo;
            std::vector<SubPtr> byKey(keys);
            for (unsigned key = 0; key <= zmask; ++key) {
                if (key & ~zmask) continue;
                const SubPtr& zold = old.Z[s][key];
                const SubPtr& bt = old.B[s + u][key];
                auto mk = std::make_pair(zold.get(), bt.get());
                auto it = memo.find(mk);
                if (it != memo.end()) {
                    byKey[key] = it->second;
                    continue;
                }
                std::vector<BitVec> pays = zold->basis(), imgs;
                imgs.reserve(pays.size());
                for (const auto& z : pays) imgs.push_back(apply_table(tab, z, dt));
                auto ker = kernel_payloads(imgs, pays, bt.get());
                EchelonBasis e(ds);
                for (auto& k : ker) e.add(std::move(k));
                auto ptr = std::make_shared<const EchelonBasis>(std::move(e));
                memo[mk] = ptr;
                byKey[key] = ptr;
            }
            for (int P = 0; P < keys; ++P) d->Z[s][P] = byKey[P & zmask];
        }
        if (want_b) {
            std::map<std::pair<const EchelonBasis*, const EchelonBasis*>, SubPtr> memo;
            std::vector<SubPtr> byKey(keys);
            for (unsigned key = wbit; key <= bmask; ++key) {
                if (!(key & wbit) || (key & ~bmask)) continue;
                unsigned pm = key & ~wbit;
                const SubPtr& bold = old.B[s + u][pm];
                const SubPtr& zsrc = old.Z[s][pm];
                auto mk = std::make_pair(bold.get(), zsrc.get());
                auto it = memo.find(mk);
                if (it != memo.end()) {
                    byKey[key] = it->second;
                    continue;
                }
                EchelonBasis e = *bold;
                for (const auto& z : zsrc->basis()) e.add(apply_table(tab, z, dt));
                auto ptr = std::make_shared<const EchelonBasis>(std::move(e));
                memo[mk] = ptr;
                byKey[key] = ptr;
            }
            for (int P = 0; P < keys; ++P)
                if (P & wbit) d->B[s + u][P] = byKey[P & bmask];
        }
    });
    return d;
}

}  // namespace

// ---- pages

EPage::EPage(std::shared_ptr<const AhssContext> ctx, std::shared_ptr<const StageData> data, int page)
    : ctx_(std::move(ctx)), data_(std::move(data)), page_(page) {}

int EPage::n() const { return ctx_->n; }
int EPage::m() const { return ctx_->m; }
int EPage::cutoff() const { return ctx_->cutoff; }
int EPage::stage() const { return data_->stage; }

namespace {

void check_fine(const EPage& p, int s) {
    if (s < 0 || s > 2 * p.cutoff())
        throw Error(ErrorCode::OutOfRange, "degree " + std::to_string(s) + " outside the computed region");
}

}  // namespace

int EPage::fine_torsion(int s, unsigned P) const {
    check_fine(*this, s);
    const auto& z = *data_->Z[s][P];
    const auto& b = *data_->B[s][P];
    int fd = ctx_->grading.free_dim(s);
    return z.dim() - z.pivots_below(fd) - b.dim();
}

int EPage::fine_cycle_rank(int s, unsigned P) const {
    check_fine(*this, s);
    return data_->Z[s][P]->pivots_below(ctx_->grading.free_dim(s));
}

FineGenerators fine_generators(const EPage& page, int s, unsigned P) {
    check_fine(page, s);
    const auto& c = page.context();
    const auto& z = *page.data()->Z[s][P];
    const auto& b = *page.data()->B[s][P];
    int fd = c.grading.free_dim(s);
    FineGenerators g;
    std::vector<BitVec> rows = z.basis();
    std::sort(rows.begin(), rows.end(), [](const BitVec& a, const BitVec& x) { return a.lowest() < x.lowest(); });
    for (const auto& r : rows)
        if (r.lowest() < fd) g.free_lifts.push_back(r);
    for (int j = 0; j < fd; ++j)
        if (!z.is_pivot(j)) g.doubled.push_back(j);
    EchelonBasis acc = b;
    for (const auto& r : rows)
        if (r.lowest() >= fd && acc.add(r)) g.torsion.push_back(r);
    return g;
}

std::vector<std::string> fine_generator_labels(const EPage& page, int s, const VMono& e, const FineGenerators& g) {
    const auto& c = page.context();
    std::vector<std::string> out;
    for (const auto& r : g.free_lifts) out.push_back(class_label(e, c.grading.to_poly(s, r).to_string(), false));
    for (int j : g.doubled)
        out.push_back(class_label(e, monomial_to_string(*c.milnor.bg(), c.grading.basis(s)[j]), true));
    for (const auto& r : g.torsion) out.push_back(class_label(e, c.grading.to_poly(s, r).to_string(), false));
    return out;
}

std::vector<std::string> EPage::fine_labels(int s, const VMono& e) const {
    return fine_generator_labels(*this, s, e, fine_generators(*this, s, vmono_support(e)));
}

CellGroup EPage::cell(int s, int t, bool labels) const {
    CellGroup g;
    g.cycle_rank = 0;
    for (const auto& e : v_monomials(m(), t)) {
        unsigned P = vmono_support(e);
        g.free += ctx_->grading.free_dim(s);
        g.torsion += fine_torsion(s, P);
        g.cycle_rank += fine_cycle_rank(s, P);
        if (labels) {
            auto l = fine_labels(s, e);
            g.labels.insert(g.labels.end(), l.begin(), l.end());
        }
    }
    return g;
}

GroupPresentation EPage::presentation(int s, int t) const {
    std::vector<std::string> labels;
    std::vector<bool> tors;
    for (const auto& e : v_monomials(m(), t)) {
        auto g = fine_generators(*this, s, vmono_support(e));
        auto l = fine_generator_labels(*this, s, e, g);
        labels.insert(labels.end(), l.begin(), l.end());
        tors.insert(tors.end(), g.free_lifts.size() + g.doubled.size(), false);
        tors.insert(tors.end(), g.torsion.size(), true);
    }
    int k = static_cast<int>(std::count(tors.begin(), tors.end(), true));
    IntMatrix rel(static_cast<int>(labels.size()), k);
    int col = 0;
    for (size_t i = 0; i < tors.size(); ++i)
        if (tors[i]) rel(static_cast<int>(i), col++) = 2;
    return GroupPresentation(std::move(labels), std::move(rel));
}

PageSummary EPage::summary(bool labels) const {
    PageSummary out;
    for (auto [s, t] : report_region(m(), cutoff())) {
        CellGroup g = cell(s, t, labels);
        if (g.free || g.torsion) out[{s, t}] = std::move(g);
    }
    return out;
}

EPage build_e2(int n, int m, int cutoff, int threads) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
    if (m < 0) throw Error(ErrorCode::InvalidArgument, "m must be non-negative");
    if (cutoff < 0) throw Error(ErrorCode::InvalidArgument, "cutoff must be non-negative");
    if (m > MilnorContext::kMaxJ) throw Error(ErrorCode::InvalidArgument, "m too large");
    auto ctx = std::make_shared<const AhssContext>(n, m, cutoff, threads);
    auto d = stage_zero(*ctx);
    return EPage(ctx, d, 2);
}

EPage turn_page(const EPage& page, int u) {
    if (u != page.page())
        throw Error(ErrorCode::InvalidArgument,
                    "E_" + std::to_string(page.page()) + " can only be turned by d_" + std::to_string(page.page()));
    int W = page.stage() + 1;
    if (W <= page.m() && u == differential_length(W))
        return EPage(page.context_ptr(), next_stage(page.context(), *page.data()), u + 1);
    return EPage(page.context_ptr(), page.data(), u + 1);
}

EPage advance_to(const EPage& page, int u) {
    if (u < page.page()) throw Error(ErrorCode::InvalidArgument, "cannot go back to an earlier page");
    EPage p = page;
    while (p.page() < u) {
        int W = p.stage() + 1;
        int next = W <= p.m() ? differential_length(W) : u - 1;
        if (next >= u) next = u - 1;
        // skip the zero differentials in one step
        if (p.page() < next) p = EPage(p.context_ptr(), p.data(), next);
        p = turn_page(p, p.page());
    }
    return p;
}

EPage e_infinity(const EPage& page) {
    int target = std::max(page.page(), 1 << (page.m() + 1));
    return advance_to(page, target);
}

bool has_differential_target(const EPage& page, int u, int s, int t) {
    int s2 = s + u, t2 = t - u + 1;
    if (s2 + t2 > page.cutoff() || t2 < -page.cutoff()) return false;
    if (page.m() == 0 && t2 != 0) return false;
    return true;
}

F2Differential differential_mod2(const EPage& page, int u, int s, int t) {
    if (u < 2) throw Error(ErrorCode::InvalidArgument, "page index must be at least 2");
    if (!has_differential_target(page, u, s, t)) throw Error(ErrorCode::OutOfRange, "target outside the region");
    const auto& c = page.context();
    int W = page.stage() + 1;
    bool live = u == page.page() && W <= page.m() && u == differential_length(W);
    int s2 = s + u, t2 = t - u + 1;
    F2Differential out;
    out.source = {s, t};
    out.target = {s2, t2};

    std::map<VMono, std::pair<int, FineGenerators>> tblocks;
    for (const auto& e : v_monomials(page.m(), t2)) {
        auto g = fine_generators(page, s2, vmono_support(e));
        int sz = static_cast<int>(g.free_lifts.size() + g.doubled.size() + g.torsion.size());
        tblocks.emplace(e, std::make_pair(out.target_gens, std::move(g)));
        out.target_gens += sz;
    }
    std::vector<BitVec> tab;
    if (live) tab = c.q_table(W, s);
    for (const auto& e : v_monomials(page.m(), t)) {
        auto g = fine_generators(page, s, vmono_support(e));
        if (!live) {
            out.source_gens += static_cast<int>(g.free_lifts.size() + g.doubled.size() + g.torsion.size());
            continue;
        }
        VMono e2 = e;
        e2[W - 1] += 1;
        const auto& [toff, tg] = tblocks.at(e2);
        const auto& bt = *page.data()->B[s2][vmono_support(e2)];
        std::vector<BitVec> cols = bt.basis();
        int nb = static_cast<int>(cols.size());
        cols.insert(cols.end(), tg.torsion.begin(), tg.torsion.end());
        F2Solver solver(cols);
        int tors_off = toff + static_cast<int>(tg.free_lifts.size() + tg.doubled.size());
        auto map_vec = [&](const BitVec& z) {
            BitVec col(out.target_gens);
            BitVec y = apply_table(tab, z, c.grading.dim(s2));
            if (y.any()) {
                auto sol = solver.solve(y);
                if (!sol)
                    throw Error(ErrorCode::NotWellDefined, "image of " + c.grading.to_poly(s, z).to_string() +
                                                               " is not a cycle at (" + std::to_string(s2) + "," +
                                                               std::to_string(t2) + ")");
                for (int i : sol->ones())
                    if (i >= nb) col.set(tors_off + i - nb);
            }
            out.columns.push_back(std::move(col));
        };
        for (const auto& z : g.free_lifts) map_vec(z);
        for (size_t i = 0; i < g.doubled.size(); ++i) out.columns.emplace_back(out.target_gens);
        for (const auto& z : g.torsion) map_vec(z);
    }
    if (!live) out.columns.assign(out.source_gens, BitVec(out.target_gens));
    out.source_gens = static_cast<int>(out.columns.size());
    return out;
}

CellDifferential differential(const EPage& page, int u, int s, int t) {
    F2Differential d = differential_mod2(page, u, s, t);
    auto src = page.presentation(s, t);
    auto tgt = page.presentation(d.target.first, d.target.second);
    IntMatrix M(d.target_gens, d.source_gens);
    for (int j = 0; j < d.source_gens; ++j)
        for (int i : d.columns[j].ones()) M(i, j) = 1;
    PresentationMap pm(std::move(src), std::move(tgt), std::move(M));
    pm.check_well_defined();
    return {d.source, d.target, std::move(pm)};
}

// ---- comparisons

PageComparison compare_pages(const PageSummary& a, const PageSummary& b, bool cycle_ranks) {
    PageComparison r;
    std::set<Bidegree> keys;
    for (const auto& [k, v] : a) keys.insert(k);
    for (const auto& [k, v] : b) keys.insert(k);
    const CellGroup zero{0, 0, 0, {}};
    for (const auto& k : keys) {
        ++r.cells;
        auto ia = a.find(k);
        auto ib = b.find(k);
        const CellGroup& ga = ia == a.end() ? zero : ia->second;
        const CellGroup& gb = ib == b.end() ? zero : ib->second;
        bool ok = ga.free == gb.free && ga.torsion == gb.torsion;
        if (cycle_ranks && ga.cycle_rank >= 0 && gb.cycle_rank >= 0) ok = ok && ga.cycle_rank == gb.cycle_rank;
        if (ok) continue;
        ++r.mismatches;
        if (r.equal) {
            r.equal = false;
            r.first_mismatch = "(" + std::to_string(k.first) + "," + std::to_string(k.second) +
                               "): " + ga.normal_form().to_string() + " [cycle rank " +
                               std::to_string(ga.cycle_rank) + "] vs " + gb.normal_form().to_string() +
                               " [cycle rank " + std::to_string(gb.cycle_rank) + "]";
            auto add = [&](const char* tag, const CellGroup& g) {
                if (g.labels.empty()) return;
                r.first_mismatch += std::string("; ") + tag + ":";
                for (const auto& l : g.labels) r.first_mismatch += " " + l;
            };
            add("left", ga);
            add("right", gb);
        }
    }
    return r;
}

// ---- integral cohomology

namespace {

std::vector<int> mn_steps(const GeneratorTable& t) {
    std::vector<int> step(t.size(), 1);
    step[kX2] = 2;
    return step;
}

}  // namespace

std::map<int, IntegralCell> integral_cohomology(int n, int cutoff) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
    auto t = bg_table(n);
    auto step = mn_steps(*t);
    std::map<int, IntegralCell> out;
    for (int s = 0; s <= cutoff; ++s) {
        IntegralCell c;
        for (Monomial mu : monomials_of_degree(*t, s, step)) {
            if (mu.exponent(kX3) == 0) {
                ++c.free;
                c.free_basis.push_back(monomial_to_string(*t, mu));
            } else {
                ++c.torsion;
                c.torsion_basis.push_back(monomial_to_string(*t, mu));
            }
        }
        out[s] = std::move(c);
    }
    return out;
}

std::map<int, IntegralCell> integral_cohomology_bockstein(int n, int cutoff) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
    auto t = bg_table(n);
    std::vector<std::vector<Monomial>> basis(cutoff + 2);
    std::vector<std::unordered_map<uint64_t, int>> index(cutoff + 2);
    for (int s = 0; s <= cutoff + 1; ++s) {
        basis[s] = monomials_of_degree(*t, s);
        for (size_t i = 0; i < basis[s].size(); ++i) index[s][basis[s][i].bits()] = static_cast<int>(i);
    }
    // Q0 = Sq1: x2 -> x3, other generators -> 0
    auto q0 = [&](int s, Monomial mu) {
        BitVec v(static_cast<int>(basis[s + 1].size()));
        int e = mu.exponent(kX2);
        if (e & 1) v.set(index[s + 1].at((mu.with_exponent(kX2, e - 1) * Monomial::unit(kX3)).bits()));
        return v;
    };
    auto to_poly = [&](int s, const BitVec& v) {
        std::vector<Monomial> terms;
        for (int i : v.ones()) terms.push_back(basis[s][i]);
        return Poly2(t, std::move(terms)).to_string();
    };
    std::map<int, IntegralCell> out;
    // image of Q0 landing in degree s, as an echelon basis
    std::vector<EchelonBasis> image(cutoff + 2);
    image[0] = EchelonBasis(1);
    for (int s = 0; s <= cutoff; ++s) {
        int d = static_cast<int>(basis[s].size());
        if (s + 1 <= cutoff + 1) {
            std::vector<BitVec> imgs, pays;
            EchelonBasis img(static_cast<int>(basis[s + 1].size()));
            for (int i = 0; i < d; ++i) {
                imgs.push_back(q0(s, basis[s][i]));
                pays.push_back(BitVec::unit(d, i));
                img.add(imgs.back());
            }
            image[s + 1] = std::move(img);
            // kernel of Q0 in degree s
            auto ker = kernel_payloads(imgs, pays, nullptr);
            IntegralCell c;
            const EchelonBasis& im = image[s];
            EchelonBasis acc = im.ambient() == d ? im : EchelonBasis(d);
            for (auto& k : ker)
                if (acc.add(k)) {
                    ++c.free;
                    c.free_basis.push_back(to_poly(s, k));
                }
            if (s > 0)
                for (const auto& b : image[s].basis()) {
                    ++c.torsion;
                    c.torsion_basis.push_back(to_poly(s, b));
                }
            std::sort(c.free_basis.begin(), c.free_basis.end());
            std::sort(c.torsion_basis.begin(), c.torsion_basis.end());
            out[s] = std::move(c);
        }
    }
    return out;
}

std::map<int, int> mod2_cohomology_dims(int n, int cutoff) {
    auto t = bg_table(n);
    std::map<int, int> out;
    for (int s = 0; s <= cutoff; ++s) out[s] = static_cast<int>(graded_dim(*t, s));
    return out;
}

// ---- queries

std::vector<LiftResult> lift_profile(int n, const Poly2& cls, int m_min, int m_max) {
    if (m_min < 0 || m_max < m_min) throw Error(ErrorCode::InvalidArgument, "bad m range");
    if (cls.is_zero()) throw Error(ErrorCode::InvalidArgument, "class label not found at E2: zero class");
    auto deg = cls.homogeneous_degree();
    if (!deg || !in_Mn(cls))
        throw Error(ErrorCode::InvalidArgument, "class label not found at E2: " + cls.to_string());
    MilnorContext ctx(n, std::clamp(m_max, 1, MilnorContext::kMaxJ),
                      *deg + 2 * differential_length(std::max(m_max, 1)) + 8);
    require_same_table(cls.table(), ctx.bg());
    std::vector<LiftResult> out;
    for (int m = m_min; m <= m_max; ++m) {
        LiftResult r;
        r.m = m;
        // a filtration-0 class with trivial v-support meets no boundaries, so it
        // survives exactly while every Q_w, w <= m, kills it
        for (int w = 1; w <= m; ++w) {
            Poly2 img = milnor_q(ctx, w, cls);
            if (!img.is_zero()) {
                r.verdict = LiftVerdict::Obstructed;
                r.page = differential_length(w);
                VMono e(m, 0);
                e[w - 1] = 1;
                r.image = class_label(e, img.to_string(), false);
                break;
            }
        }
        out.push_back(r);
    }
    return out;
}

ScanResult odd_degree_scan(const EPage& einf) {
    ScanResult r;
    int c = einf.cutoff();
    for (int d = 1; d <= c; d += 2) {
        for (int t = 0; t >= (einf.m() == 0 ? 0 : -c); t -= 2) {
            int s = d - t;
            if (s > 2 * c) continue;
            for (const auto& e : v_monomials(einf.m(), t)) {
                if (einf.fine_torsion(s, vmono_support(e)) == 0) continue;
                r.vanishes = false;
                r.s = s;
                r.t = t;
                r.witness = einf.fine_labels(s, e).back();
                return r;
            }
        }
    }
    return r;
}

ScanResult odd_degree_scan(int n, int m, int cutoff, int threads) {
    return odd_degree_scan(e_infinity(build_e2(n, m, cutoff, threads)));
}

}  // namespace bpss
