#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bpss/f2linalg.hpp"

namespace bpss {

using Int = boost::multiprecision::cpp_int;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
    static IntMatrix identity(int n);
    static IntMatrix from_columns(int rows, const std::vector<std::vector<Int>>& cols);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Int& operator()(int r, int c) { return a_[static_cast<size_t>(r) * c_ + c]; }
    const Int& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * c_ + c]; }

    std::vector<Int> column(int j) const;
    IntMatrix columns(int from, int to) const;
    IntMatrix hcat(const IntMatrix& o) const;
    IntMatrix operator*(const IntMatrix& o) const;
    std::vector<Int> operator*(const std::vector<Int>& v) const;
    bool is_zero() const;
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void add_row_multiple(int dst, int src, const Int& q);  // row dst += q * row src
    void add_col_multiple(int dst, int src, const Int& q);
    void negate_row(int i);

private:
    int r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

// U * A * V == D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0
struct SmithForm {
    IntMatrix U, D, V;
    int rank = 0;
    std::vector<Int> invariants() const;
};
SmithForm smith_normal_form(const IntMatrix& A, bool want_u = true, bool want_v = true);

struct NormalForm {
    int free_rank = 0;
    std::vector<Int> torsion;  // orders of the 2-primary cyclic summands, ascending
    friend bool operator==(const NormalForm& a, const NormalForm& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
    std::string to_string() const;
};

// Abelian group on labelled generators modulo the column span of `relations`.
class GroupPresentation {
public:
    GroupPresentation() = default;
    GroupPresentation(std::vector<std::string> labels, IntMatrix relations);
    static GroupPresentation free(std::vector<std::string> labels);

    int num_generators() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const IntMatrix& relations() const { return rel_; }
    NormalForm normal_form() const;

private:
    std::vector<std::string> labels_;
    IntMatrix rel_;
};

// Normal form after localising at 2: odd invariants become units.
NormalForm normal_form(const GroupPresentation& g);

// Homomorphism given on generators: column j is the image of source generator j.
class PresentationMap {
public:
    PresentationMap(GroupPresentation src, GroupPresentation tgt, IntMatrix matrix);
    const GroupPresentation& source() const { return src_; }
    const GroupPresentation& target() const { return tgt_; }
    const IntMatrix& matrix() const { return m_; }
    // throws NOT_WELL_DEFINED when a source relation does not map into the target relations
    void check_well_defined() const;

private:
    GroupPresentation src_, tgt_;
    IntMatrix m_;
};

// Solves L x = y over the integers; L is factored once.
class LatticeSolver {
public:
    explicit LatticeSolver(const IntMatrix& L);
    std::optional<std::vector<Int>> solve(const std::vector<Int>& y) const;
    bool contains(const std::vector<Int>& y) const { return solve(y).has_value(); }

private:
    int rows_ = 0, cols_ = 0;
    SmithForm s_;
};

IntMatrix integer_kernel(const IntMatrix& A);  // columns form a basis
IntMatrix lattice_basis(const IntMatrix& gens, int ambient_rows);

struct Homology {
    GroupPresentation group;
    IntMatrix cycles;  // columns: homology generators in middle-generator coordinates
};
// H = ker(out) / im(in) at the middle group; throws NON_COMPLEX if out∘in is nonzero
Homology complex_homology(const PresentationMap& in, const PresentationMap& out);

// dim ker(out) - rank(in) for complexes of F2 vector spaces
int f2_homology_dim(const std::vector<BitVec>& in_cols, const std::vector<BitVec>& out_cols, int middle_dim);

}  // namespace bpss
