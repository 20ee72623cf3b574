#include <algorithm>
#include <map>

#include "bpss/ahss.hpp"
#include "bpss/error.hpp"
#include "bpss/internal.hpp"

namespace bpss {

namespace {

struct FineForm {
    int torsion = 0;
    int cycle_rank = 0;
    std::vector<std::string> torsion_labels;
};

class ClosedForm {
public:
    ClosedForm(int n, int m, int r, int cutoff)
        : n_(n), m_(m), r_(std::min({r, m, n + 1})), cutoff_(cutoff),
          ctx_(n, std::clamp(r_ + 1, 1, MilnorContext::kMaxJ), 4 * cutoff + 64), grading_(ctx_, 2 * cutoff) {
        if (r_ >= 1) {
            y_ = family_y(ctx_, r_);
            z_ = family_z(ctx_, r_);
            for (int t = 2; t <= r_; ++t) e_[t] = family_e(ctx_, t);
            for (int t = 1; t < r_; ++t) ylow_[t] = family_y(ctx_, t);
        }
    }

    int r() const { return r_; }
    int free_dim(int s) const { return grading_.free_dim(s); }

    const FineForm& fine(int s, unsigned P) {
        unsigned key = P & ((1u << std::max(r_, 0)) - 1);
        auto k = std::make_pair(s, key);
        auto it = memo_.find(k);
        if (it != memo_.end()) return it->second;
        return memo_[k] = compute(s, key);
    }

private:
    std::vector<Monomial> coefficients(int d, bool with_x3) const {
        if (d < 0) return {};
        std::vector<int> step(ctx_.bg()->size(), 2);
        auto mons = monomials_of_degree(*ctx_.bg(), d, step);
        if (!with_x3)
            mons.erase(std::remove_if(mons.begin(), mons.end(), [](Monomial mu) { return mu.exponent(kX3) != 0; }),
                       mons.end());
        return mons;
    }

    // spans of c * x3^a * f over coefficient monomials c of complementary degree
    void span_into(EchelonBasis& acc, int s, const Poly2& f, int x3pow, bool with_x3) const {
        int df = *f.homogeneous_degree() + 3 * x3pow;
        Monomial shift = Monomial::unit(kX3, x3pow);
        for (Monomial c : coefficients(s - df, with_x3)) acc.add(grading_.to_vector(s, f.times(c * shift)));
    }

    FineForm compute(int s, unsigned P) const {
        FineForm out;
        int d = grading_.dim(s), fd = grading_.free_dim(s);
        if (r_ <= 0) {
            out.torsion = d - fd;
            out.cycle_rank = fd;
            for (int i = fd; i < d; ++i)
                out.torsion_labels.push_back(monomial_to_string(*ctx_.bg(), grading_.basis(s)[i]));
            return out;
        }
        Poly2 one = Poly2::one(ctx_.bg());

        // D_1/(v_t e_t){x3^2}
        if (!(P & 1u)) {
            EchelonBasis ideal(d);
            for (int t = 2; t <= r_; ++t)
                if (P >> (t - 1) & 1u)
                    for (const auto& e : e_.at(t)) span_into(ideal, s, e.value, 2, true);
            EchelonBasis whole = ideal;
            for (Monomial c : coefficients(s - 6, true)) {
                BitVec v = grading_.to_vector(s, one.times(c * Monomial::unit(kX3, 2)));
                if (whole.add(v)) out.torsion_labels.push_back(grading_.to_poly(s, v).to_string());
            }
            out.torsion += whole.dim() - ideal.dim();
        }
        // D_r<x3^2 y_r, x3 z_r>
        if (!(P & ((1u << r_) - 1))) {
            EchelonBasis span(d);
            for (const auto& y : y_) span_into(span, s, y.value, 2, true);
            for (const auto& z : z_) span_into(span, s, z.value, 1, true);
            out.torsion += span.dim();
            for (const auto& b : span.reduced_basis()) out.torsion_labels.push_back(grading_.to_poly(s, b).to_string());
        }
        // free projection of C<1, y_r, v_s y_s>
        EchelonBasis cyc(fd);
        auto project = [&](const Poly2& f) {
            if (*f.homogeneous_degree() > s) return;
            for (Monomial c : coefficients(s - *f.homogeneous_degree(), false)) {
                BitVec v = grading_.to_vector(s, f.times(c));
                BitVec p(fd);
                for (int i : v.ones())
                    if (i < fd) p.set(i);
                cyc.add(p);
            }
        };
        project(one);
        for (const auto& y : y_) project(y.value);
        for (int t = 1; t < r_; ++t)
            if (P >> (t - 1) & 1u)
                for (const auto& y : ylow_.at(t)) project(y.value);
        out.cycle_rank = cyc.dim();
        return out;
    }

    int n_, m_, r_, cutoff_;
    MilnorContext ctx_;
    MnGrading grading_;
    std::vector<FamilyElement> y_, z_;
    std::map<int, std::vector<FamilyElement>> e_, ylow_;
    std::map<std::pair<int, unsigned>, FineForm> memo_;
};

}  // namespace

PageSummary closed_form_page(int n, int m, int r, int cutoff, bool labels) {
    if (n < 1 || m < 0 || r < 0 || cutoff < 0) throw Error(ErrorCode::InvalidArgument, "bad closed form parameters");
    ClosedForm cf(n, m, r, cutoff);
    PageSummary out;
    for (auto [s, t] : report_region(m, cutoff)) {
        CellGroup g;
        g.cycle_rank = 0;
        for (const auto& e : v_monomials(m, t)) {
            const FineForm& f = cf.fine(s, vmono_support(e));
            g.free += cf.free_dim(s);
            g.torsion += f.torsion;
            g.cycle_rank += f.cycle_rank;
            if (labels)
                for (const auto& l : f.torsion_labels) g.labels.push_back(class_label(e, l, false));
        }
        if (g.free || g.torsion) out[{s, t}] = std::move(g);
    }
    return out;
}

}  // namespace bpss
