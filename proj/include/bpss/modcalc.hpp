#pragma once

#include <map>
#include <string>
#include <vector>

#include "bpss/milnor.hpp"

namespace bpss {

// Elements of M_n = F2[x2^2, x3, x41..x4n] live in the bg table with even x2
// exponents.  M_{n,i} is spanned by monomials with exactly i odd x4 exponents.

using IndexSet = std::vector<int>;  // increasing, entries in 1..n

Poly2 x_I(const MilnorContext& ctx, const IndexSet& I);
std::string index_set_name(const IndexSet& I);
std::vector<IndexSet> index_sets(int n, int size);

bool in_Mn(const Poly2& p);
int odd_x4_count(Monomial m, int n);
std::map<int, Poly2> component_split(const MilnorContext& ctx, const Poly2& p);

// d_j for j >= 2: kills x2^2 and x3, x4i -> sum_{k=1}^{j-1} alpha_{jk} x4i^{2^k}
Poly2 partial(const MilnorContext& ctx, int j, const Poly2& x);
Poly2 partial_J(const MilnorContext& ctx, const std::vector<int>& J, const Poly2& x);
int partial_degree(int j);
// d_2 d_3 ... d_r; the identity for r <= 1
Poly2 phi(const MilnorContext& ctx, int r, const Poly2& x);

// det(v_c^{2^row}) over F2
Poly2 moore_det(const std::vector<Poly2>& vars);

struct FamilyElement {
    IndexSet I;
    Poly2 value;
};
std::vector<FamilyElement> family_e(const MilnorContext& ctx, int r);
std::vector<FamilyElement> family_y(const MilnorContext& ctx, int r);
std::vector<FamilyElement> family_z(const MilnorContext& ctx, int r);

struct PreimageStats {
    int peel_steps = 0;
    int exceptional_steps = 0;
    int linear_fallbacks = 0;
};

// g in M_{n,i+|J|} with d_J(g) = target, for target in M_{n,i}, i >= 1, killed by every d_j, j in J.
Poly2 preimage(const MilnorContext& ctx, const std::vector<int>& J, const Poly2& target, int i,
               PreimageStats* stats = nullptr);

// For x = x3^s * w with w an even-in-x3 combination of phi_r(x_I) and Q_{r+1}(x) = 0,
// returns y with Q_{r+1}(y) = x.
Poly2 lemma33_solve(const MilnorContext& ctx, int r, const Poly2& x, int s, PreimageStats* stats = nullptr);

}  // namespace bpss
