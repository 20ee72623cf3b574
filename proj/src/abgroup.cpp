#include "bpss/abgroup.hpp"

#include <algorithm>

#include "bpss/error.hpp"

namespace bpss {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(int rows, const std::vector<std::vector<Int>>& cols) {
    IntMatrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
        if (static_cast<int>(cols[j].size()) != rows) throw Error(ErrorCode::InvalidArgument, "column length");
        for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

std::vector<Int> IntMatrix::column(int j) const {
    std::vector<Int> v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntMatrix IntMatrix::columns(int from, int to) const {
    IntMatrix m(r_, to - from);
    for (int i = 0; i < r_; ++i)
        for (int j = from; j < to; ++j) m(i, j - from) = (*this)(i, j);
    return m;
}

IntMatrix IntMatrix::hcat(const IntMatrix& o) const {
    if (o.r_ != r_) throw Error(ErrorCode::InvalidArgument, "hcat row mismatch");
    IntMatrix m(r_, c_ + o.c_);
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
        for (int j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (c_ != o.r_) throw Error(ErrorCode::InvalidArgument, "matrix product shape mismatch");
    IntMatrix m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Int& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.c_; ++j)
                if (!o(k, j).is_zero()) m(i, j) += a * o(k, j);
        }
    return m;
}

std::vector<Int> IntMatrix::operator*(const std::vector<Int>& v) const {
    if (static_cast<int>(v.size()) != c_) throw Error(ErrorCode::InvalidArgument, "matrix-vector shape mismatch");
    std::vector<Int> out(r_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k)
            if (!v[k].is_zero() && !(*this)(i, k).is_zero()) out[i] += (*this)(i, k) * v[k];
    return out;
}

bool IntMatrix::is_zero() const {
    for (auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

void IntMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < c_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < r_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(int dst, int src, const Int& q) {
    if (q.is_zero()) return;
    for (int c = 0; c < c_; ++c)
        if (!(*this)(src, c).is_zero()) (*this)(dst, c) += q * (*this)(src, c);
}

void IntMatrix::add_col_multiple(int dst, int src, const Int& q) {
    if (q.is_zero()) return;
    for (int r = 0; r < r_; ++r)
        if (!(*this)(r, src).is_zero()) (*this)(r, dst) += q * (*this)(r, src);
}

void IntMatrix::negate_row(int i) {
    for (int c = 0; c < c_; ++c) (*this)(i, c) = -(*this)(i, c);
}

std::vector<Int> SmithForm::invariants() const {
    std::vector<Int> d;
    for (int i = 0; i < rank; ++i) d.push_back(D(i, i));
    return d;
}

SmithForm smith_normal_form(const IntMatrix& A, bool want_u, bool want_v) {
    SmithForm s;
    int m = A.rows(), n = A.cols();
    s.D = A;
    if (want_u) s.U = IntMatrix::identity(m);
    if (want_v) s.V = IntMatrix::identity(n);
    IntMatrix& D = s.D;
    auto row_op = [&](int dst, int src, const Int& q) {
        D.add_row_multiple(dst, src, q);
        if (want_u) s.U.add_row_multiple(dst, src, q);
    };
    auto col_op = [&](int dst, int src, const Int& q) {
        D.add_col_multiple(dst, src, q);
        if (want_v) s.V.add_col_multiple(dst, src, q);
    };
    auto row_swap = [&](int i, int j) {
        D.swap_rows(i, j);
        if (want_u) s.U.swap_rows(i, j);
    };
    auto col_swap = [&](int i, int j) {
        D.swap_cols(i, j);
        if (want_v) s.V.swap_cols(i, j);
    };

    int t = 0;
    for (; t < std::min(m, n); ++t) {
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                const Int& x = D(i, j);
                if (x.is_zero()) continue;
                Int ax = abs(x);
                if (pi < 0 || ax < best) {
                    best = ax, pi = i, pj = j;
                    if (best == 1) break;
                }
            }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);
        for (;;) {
            bool changed = false;
            for (int i = t + 1; i < m && !changed; ++i) {
                if (D(i, t).is_zero()) continue;
                Int q = D(i, t) / D(t, t);
                row_op(i, t, -q);
                if (!D(i, t).is_zero()) {
                    row_swap(i, t);
                    changed = true;
                }
            }
            for (int j = t + 1; j < n && !changed; ++j) {
                if (D(t, j).is_zero()) continue;
                Int q = D(t, j) / D(t, t);
                col_op(j, t, -q);
                if (!D(t, j).is_zero()) {
                    col_swap(j, t);
                    changed = true;
                }
            }
            if (changed) continue;
            int bad = -1;
            for (int i = t + 1; i < m && bad < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (Int(D(i, j) % D(t, t)) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            row_op(t, bad, 1);
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            if (want_u) s.U.negate_row(t);
        }
    }
    s.rank = t;
    return s;
}

std::string NormalForm::to_string() const {
    std::string s = "free " + std::to_string(free_rank) + ", torsion {";
    for (size_t i = 0; i < torsion.size(); ++i) s += (i ? "," : "") + torsion[i].str();
    return s + "}";
}

GroupPresentation::GroupPresentation(std::vector<std::string> labels, IntMatrix relations)
    : labels_(std::move(labels)), rel_(std::move(relations)) {
    if (rel_.rows() != static_cast<int>(labels_.size()))
        throw Error(ErrorCode::InvalidArgument, "relation matrix must have one row per generator");
}

GroupPresentation GroupPresentation::free(std::vector<std::string> labels) {
    int g = static_cast<int>(labels.size());
    return GroupPresentation(std::move(labels), IntMatrix(g, 0));
}

NormalForm normal_form(const GroupPresentation& g) {
    NormalForm nf;
    SmithForm s = smith_normal_form(g.relations(), false, false);
    nf.free_rank = g.num_generators() - s.rank;
    for (auto d : s.invariants()) {
        Int p = 1;
        while ((d & 1) == 0) {
            d >>= 1;
            p <<= 1;
        }
        if (p > 1) nf.torsion.push_back(p);
    }
    std::sort(nf.torsion.begin(), nf.torsion.end());
    return nf;
}

NormalForm GroupPresentation::normal_form() const { return bpss::normal_form(*this); }

LatticeSolver::LatticeSolver(const IntMatrix& L) : rows_(L.rows()), cols_(L.cols()), s_(smith_normal_form(L)) {}

std::optional<std::vector<Int>> LatticeSolver::solve(const std::vector<Int>& y) const {
    if (static_cast<int>(y.size()) != rows_) throw Error(ErrorCode::InvalidArgument, "vector length");
    std::vector<Int> w = s_.U * y;
    std::vector<Int> z(cols_);
    for (int i = 0; i < rows_; ++i) {
        if (i < s_.rank) {
            const Int& d = s_.D(i, i);
            if (Int(w[i] % d) != 0) return std::nullopt;
            z[i] = w[i] / d;
        } else if (!w[i].is_zero()) {
            return std::nullopt;
        }
    }
    return s_.V * z;
}

IntMatrix integer_kernel(const IntMatrix& A) {
    SmithForm s = smith_normal_form(A, false, true);
    return s.V.columns(s.rank, A.cols());
}

IntMatrix lattice_basis(const IntMatrix& gens, int ambient_rows) {
    if (gens.cols() == 0) return IntMatrix(ambient_rows, 0);
    SmithForm s = smith_normal_form(gens, false, true);
    return (gens * s.V).columns(0, s.rank);
}

PresentationMap::PresentationMap(GroupPresentation src, GroupPresentation tgt, IntMatrix matrix)
    : src_(std::move(src)), tgt_(std::move(tgt)), m_(std::move(matrix)) {
    if (m_.rows() != tgt_.num_generators() || m_.cols() != src_.num_generators())
        throw Error(ErrorCode::InvalidArgument, "map matrix shape does not match the presentations");
}

void PresentationMap::check_well_defined() const {
    if (src_.relations().cols() == 0) return;
    IntMatrix img = m_ * src_.relations();
    LatticeSolver ls(tgt_.relations());
    for (int j = 0; j < img.cols(); ++j)
        if (!ls.contains(img.column(j)))
            throw Error(ErrorCode::NotWellDefined, "a relation of the source does not map to zero");
}

namespace {

std::string combination_label(const std::vector<std::string>& labels, const std::vector<Int>& c) {
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        Int a = abs(c[i]);
        bool neg = c[i] < 0;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (a != 1) s += a.str() + "*";
        bool compound = labels[i].find(' ') != std::string::npos;
        s += compound ? "(" + labels[i] + ")" : labels[i];
    }
    return s.empty() ? "0" : s;
}

bool same_presentation(const GroupPresentation& a, const GroupPresentation& b) {
    return a.labels() == b.labels() && a.relations() == b.relations();
}

}  // namespace

Homology complex_homology(const PresentationMap& in, const PresentationMap& out) {
    const GroupPresentation& B = in.target();
    if (!same_presentation(B, out.source()))
        throw Error(ErrorCode::InvalidArgument, "maps do not share the middle group");
    in.check_well_defined();
    out.check_well_defined();
    const GroupPresentation& C = out.target();
    int gB = B.num_generators();

    IntMatrix comp = out.matrix() * in.matrix();
    if (comp.cols() > 0 && !comp.is_zero()) {
        LatticeSolver cs(C.relations());
        for (int j = 0; j < comp.cols(); ++j)
            if (!cs.contains(comp.column(j))) throw Error(ErrorCode::NotComplex, "composite map is nonzero");
    }

    IntMatrix ker = integer_kernel(out.matrix().hcat(C.relations()));
    IntMatrix proj(gB, ker.cols());
    for (int i = 0; i < gB; ++i)
        for (int j = 0; j < ker.cols(); ++j) proj(i, j) = ker(i, j);
    IntMatrix K = lattice_basis(proj, gB);

    IntMatrix bnd = in.matrix().hcat(B.relations());
    IntMatrix rel(K.cols(), bnd.cols());
    if (bnd.cols() > 0) {
        LatticeSolver ks(K);
        for (int j = 0; j < bnd.cols(); ++j) {
            auto x = ks.solve(bnd.column(j));
            if (!x) throw Error(ErrorCode::Internal, "boundary outside the cycle lattice");
            for (int i = 0; i < K.cols(); ++i) rel(i, j) = (*x)[i];
        }
    }
    std::vector<std::string> labels;
    for (int j = 0; j < K.cols(); ++j) labels.push_back(combination_label(B.labels(), K.column(j)));
    return {GroupPresentation(std::move(labels), std::move(rel)), std::move(K)};
}

int f2_homology_dim(const std::vector<BitVec>& in_cols, const std::vector<BitVec>& out_cols, int middle_dim) {
    return middle_dim - rank_f2(out_cols) - rank_f2(in_cols);
}

}  // namespace bpss
