#pragma once

#include <vector>

#include "bpss/poly2.hpp"

namespace bpss {

// Tables for H*(BG_n;F2) = F2[x2, x3, x41..x4n] and for the ambient
// F2[s1, s2, t1..tn] it restricts to.
TablePtr bg_table(int n);
TablePtr ambient_table(int n);

constexpr int kX2 = 0;
constexpr int kX3 = 1;
constexpr int x4_index(int i) { return 1 + i; }  // i in 1..n

class MilnorContext {
public:
    static constexpr int kMaxJ = 7;

    explicit MilnorContext(int n, int max_j = 6, int degree_cap = 1024);

    int n() const { return n_; }
    int max_j() const { return max_j_; }
    int degree_cap() const { return degree_cap_; }
    const TablePtr& bg() const { return bg_; }
    const TablePtr& ambient() const { return amb_; }

    const Poly2& alpha(int j, int k) const;
    const Poly2& q_of_generator(int j, int gen) const;
    const Poly2& restriction_of_generator(int gen) const { return restr_[gen]; }

private:
    int n_, max_j_, degree_cap_;
    TablePtr bg_, amb_;
    std::vector<std::vector<Poly2>> alpha_;  // alpha_[j][k]
    std::vector<std::vector<Poly2>> q_;      // q_[j][gen]
    std::vector<Poly2> restr_;
};

// alpha_{j,k} over the table {x2, x3}
Poly2 alpha(int j, int k);

Poly2 milnor_q(const MilnorContext& ctx, int j, const Poly2& p);
// Q_j on a polynomial ring whose generators all have degree 1
Poly2 milnor_q_ambient(int j, const Poly2& p);
Poly2 restrict_to_ambient(const MilnorContext& ctx, const Poly2& p);

// Restriction images of all monomials of H^d are independent, for d <= max_degree.
bool restriction_injective(const MilnorContext& ctx, int max_degree);

}  // namespace bpss
