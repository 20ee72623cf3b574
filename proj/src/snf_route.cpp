#include <map>
#include <memory>

#include "bpss/ahss.hpp"
#include "bpss/error.hpp"
#include "bpss/internal.hpp"

namespace bpss {

namespace {

struct Cell {
    IntMatrix Z;  // cycle lattice in E2 cover coordinates
    GroupPresentation pres;
    IntMatrix B;  // boundary lattice in cover coordinates
    bool has_z = false;
};

class SnfRoute {
public:
    SnfRoute(int n, int m, int cutoff) : m_(m), c_(cutoff) {
        tmin_ = m == 0 ? 0 : -cutoff;
        for (int w = 1; w <= m; ++w) tmin_ -= differential_length(w) + 1;
        int top = c_ + 1 - tmin_ + (m > 0 ? differential_length(m) : 0);
        ctx_ = std::make_unique<MilnorContext>(n, std::clamp(m, 1, MilnorContext::kMaxJ), top + 64);
        grading_ = std::make_unique<MnGrading>(*ctx_, top);
        for (int t = 0; t >= tmin_; t -= 2)
            for (int s = 0; s + t <= c_ + 1; ++s) {
                Cell cell;
                int N = cover_size(s, t);
                cell.B = relations(s, t);
                if (s + t <= c_) {
                    cell.Z = IntMatrix::identity(N);
                    cell.pres = GroupPresentation(cover_labels(s, t), cell.B);
                    cell.has_z = true;
                }
                cells_[{s, t}] = std::move(cell);
            }
    }

    PageSummary summary() const {
        PageSummary out;
        for (auto [s, t] : report_region(m_, c_)) {
            const Cell& cell = cells_.at({s, t});
            NormalForm nf = cell.pres.normal_form();
            CellGroup g;
            g.free = nf.free_rank;
            for (const Int& o : nf.torsion) {
                if (o != 2)
                    throw Error(ErrorCode::Internal, "torsion of order " + o.str() + " at (" + std::to_string(s) +
                                                         "," + std::to_string(t) + ")");
                ++g.torsion;
            }
            if (g.free || g.torsion) out[{s, t}] = g;
        }
        return out;
    }

    void turn(int W) {
        const int u = differential_length(W);
        std::map<Bidegree, Cell> next;
        for (const auto& [key, cell] : cells_) {
            auto [s, t] = key;
            Bidegree src{s - u, t + u - 1}, tgt{s + u, t - u + 1};
            const Cell* sc = nullptr;
            if (auto it = cells_.find(src); it != cells_.end() && it->second.has_z) sc = &it->second;
            Cell nc;
            if (!cell.has_z) {
                nc.B = cell.B;
                if (sc) nc.B = lattice_basis(cell.B.hcat(lift(W, src, key) * sc->Z), cell.B.rows());
                next[key] = std::move(nc);
                continue;
            }
            // below the working strip the target is taken as zero; the strip is wide enough
            // that this never reaches the reported region
            IntMatrix tgt_rel = cells_.count(tgt) ? cells_.at(tgt).B
                                                  : IntMatrix::identity(cover_size(tgt.first, tgt.second));
            GroupPresentation tgt_pres(cover_labels(tgt.first, tgt.second), tgt_rel);
            PresentationMap out(cell.pres, tgt_pres, lift(W, key, tgt) * cell.Z);

            GroupPresentation src_pres;
            IntMatrix in_m(cell.pres.num_generators(), 0);
            if (sc) {
                src_pres = sc->pres;
                IntMatrix img = lift(W, src, key) * sc->Z;
                in_m = IntMatrix(cell.pres.num_generators(), img.cols());
                LatticeSolver zs(cell.Z);
                for (int j = 0; j < img.cols(); ++j) {
                    auto x = zs.solve(img.column(j));
                    if (!x) throw Error(ErrorCode::NotWellDefined, "boundary is not a cycle");
                    for (int i = 0; i < in_m.rows(); ++i) in_m(i, j) = (*x)[i];
                }
            }
            PresentationMap in(src_pres, cell.pres, in_m);
            Homology h = complex_homology(in, out);
            nc.Z = cell.Z * h.cycles;
            nc.B = nc.Z * h.group.relations();
            nc.pres = std::move(h.group);
            nc.has_z = true;
            next[key] = std::move(nc);
        }
        cells_ = std::move(next);
    }

private:
    int cover_size(int s, int t) const {
        return grading_->dim(s) * static_cast<int>(v_monomials(m_, t).size());
    }

    std::vector<std::string> cover_labels(int s, int t) const {
        std::vector<std::string> out;
        for (const auto& e : v_monomials(m_, t))
            for (Monomial mu : grading_->basis(s))
                out.push_back(class_label(e, monomial_to_string(*ctx_->bg(), mu), false));
        return out;
    }

    IntMatrix relations(int s, int t) const {
        int d = grading_->dim(s), fd = grading_->free_dim(s);
        auto vm = v_monomials(m_, t);
        IntMatrix R(d * static_cast<int>(vm.size()), (d - fd) * static_cast<int>(vm.size()));
        int col = 0;
        for (size_t b = 0; b < vm.size(); ++b)
            for (int i = fd; i < d; ++i) R(static_cast<int>(b) * d + i, col++) = 2;
        return R;
    }

    // v_W Q_W on the E2 cover, from cell a to cell b
    IntMatrix lift(int W, Bidegree a, Bidegree b) const {
        auto [s, t] = a;
        int ds = grading_->dim(s), dt = grading_->dim(b.first);
        auto va = v_monomials(m_, t), vb = v_monomials(m_, b.second);
        std::map<VMono, int> boff;
        for (size_t i = 0; i < vb.size(); ++i) boff[vb[i]] = static_cast<int>(i) * dt;
        IntMatrix D(dt * static_cast<int>(vb.size()), ds * static_cast<int>(va.size()));
        for (size_t k = 0; k < va.size(); ++k) {
            VMono e = va[k];
            e[W - 1] += 1;
            int off = boff.at(e);
            for (int i = 0; i < ds; ++i) {
                Monomial mu = grading_->basis(s)[i];
                std::vector<int> hits;
                for (int g = 0; g < static_cast<int>(ctx_->bg()->size()); ++g) {
                    int x = mu.exponent(g);
                    if (!(x & 1)) continue;
                    Monomial rest = mu.with_exponent(g, x - 1);
                    for (Monomial q : ctx_->q_of_generator(W, g).terms())
                        hits.push_back(grading_->index(b.first, rest * q));
                }
                for (int h : hits) {
                    Int& cell = D(off + h, static_cast<int>(k) * ds + i);
                    cell = cell == 0 ? 1 : 0;
                }
            }
        }
        return D;
    }

    int m_, c_, tmin_;
    std::unique_ptr<MilnorContext> ctx_;
    std::unique_ptr<MnGrading> grading_;
    std::map<Bidegree, Cell> cells_;
};

}  // namespace

std::map<int, PageSummary> snf_pages(int n, int m, int cutoff) {
    if (n < 1 || m < 0 || cutoff < 0) throw Error(ErrorCode::InvalidArgument, "bad parameters");
    SnfRoute route(n, m, cutoff);
    std::map<int, PageSummary> out;
    out[2] = route.summary();
    for (int W = 1; W <= m; ++W) {
        route.turn(W);
        out[1 << (W + 1)] = route.summary();
    }
    return out;
}

}  // namespace bpss
