#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bpss/abgroup.hpp"
#include "bpss/f2linalg.hpp"
#include "bpss/milnor.hpp"

namespace bpss {

// Monomial bases of M_n^s, x3-free monomials first.
class MnGrading {
public:
    MnGrading(const MilnorContext& ctx, int max_degree);

    int max_degree() const { return max_degree_; }
    int dim(int s) const { return s < 0 || s > max_degree_ ? 0 : static_cast<int>(basis_[s].size()); }
    int free_dim(int s) const { return s < 0 || s > max_degree_ ? 0 : free_[s]; }
    const std::vector<Monomial>& basis(int s) const { return basis_[s]; }
    int index(int s, Monomial m) const;
    BitVec to_vector(int s, const Poly2& p) const;  // throws if p has a term outside M_n^s
    Poly2 to_poly(int s, const BitVec& v) const;

private:
    TablePtr table_;
    int max_degree_;
    std::vector<std::vector<Monomial>> basis_;
    std::vector<int> free_;
    std::vector<std::unordered_map<uint64_t, int>> index_;
};

// Exponent vector of a v-monomial v1^e1 ... vm^em; deg v_w = -(2^{w+1} - 2).
using VMono = std::vector<int>;
int v_degree(int w);
std::vector<VMono> v_monomials(int m, int t);
std::string vmono_to_string(const VMono& e);
unsigned vmono_support(const VMono& e);  // bit w-1 set when e_w > 0

struct CellGroup {
    int free = 0;
    int torsion = 0;        // number of Z/2 summands
    int cycle_rank = -1;    // rank of the mod 2 free projection of the cycles, when known
    std::vector<std::string> labels;
    NormalForm normal_form() const;
};

using Bidegree = std::pair<int, int>;  // (s, t)
using PageSummary = std::map<Bidegree, CellGroup>;

std::vector<Bidegree> report_region(int m, int cutoff);
int differential_length(int w);  // 2^{w+1} - 1

struct AhssContext;
struct StageData;

// E_u page of the AHSS for BP<m>^*(BG_n) on the region s + t <= cutoff, t >= -cutoff.
class EPage {
public:
    EPage(std::shared_ptr<const AhssContext> ctx, std::shared_ptr<const StageData> data, int page);

    int n() const;
    int m() const;
    int cutoff() const;
    int page() const { return page_; }
    int stage() const;
    const AhssContext& context() const { return *ctx_; }
    const std::shared_ptr<const AhssContext>& context_ptr() const { return ctx_; }
    const std::shared_ptr<const StageData>& data() const { return data_; }

    // fine cell of E_u at (s, v-support P)
    int fine_torsion(int s, unsigned P) const;
    int fine_cycle_rank(int s, unsigned P) const;
    std::vector<std::string> fine_labels(int s, const VMono& e) const;

    CellGroup cell(int s, int t, bool labels = false) const;
    GroupPresentation presentation(int s, int t) const;
    PageSummary summary(bool labels = false) const;

private:
    std::shared_ptr<const AhssContext> ctx_;
    std::shared_ptr<const StageData> data_;
    int page_;
};

EPage build_e2(int n, int m, int cutoff, int threads = 0);
EPage turn_page(const EPage& page, int u);
EPage advance_to(const EPage& page, int u);  // repeated turn_page
EPage e_infinity(const EPage& page);

struct CellDifferential {
    Bidegree source, target;
    PresentationMap map;
};
// d_u out of the cell (s, t); the target cell must lie in the reported region
CellDifferential differential(const EPage& page, int u, int s, int t);

// the same map reduced mod 2: column i is the image of source generator i
// (all torsion has order 2, so nothing is lost for composites)
struct F2Differential {
    Bidegree source, target;
    int source_gens = 0, target_gens = 0;
    std::vector<BitVec> columns;
};
F2Differential differential_mod2(const EPage& page, int u, int s, int t);
bool has_differential_target(const EPage& page, int u, int s, int t);

PageSummary closed_form_page(int n, int m, int r, int cutoff, bool labels = false);

struct PageComparison {
    bool equal = true;
    int cells = 0;
    int mismatches = 0;
    std::string first_mismatch;
};
PageComparison compare_pages(const PageSummary& a, const PageSummary& b, bool cycle_ranks = false);

// Pages through the integer-matrix route: every cell is a presentation over
// the E2 cover, differentials are lifted and homology is taken by Smith forms.
std::map<int, PageSummary> snf_pages(int n, int m, int cutoff);

struct IntegralCell {
    int free = 0;
    int torsion = 0;  // Z/2 summands
    std::vector<std::string> free_basis, torsion_basis;
    NormalForm normal_form() const;
};
std::map<int, IntegralCell> integral_cohomology(int n, int cutoff);
// free rank and torsion from Ker Q0 / Im Q0 on H*(BG_n;F2)
std::map<int, IntegralCell> integral_cohomology_bockstein(int n, int cutoff);
std::map<int, int> mod2_cohomology_dims(int n, int cutoff);

enum class LiftVerdict { Lifts, Obstructed };
struct LiftResult {
    int m = 0;
    LiftVerdict verdict = LiftVerdict::Lifts;
    int page = 0;          // differential length when obstructed
    std::string image;     // label of the obstruction
};
std::vector<LiftResult> lift_profile(int n, const Poly2& cls, int m_min, int m_max);

struct ScanResult {
    bool vanishes = true;
    int s = 0, t = 0;
    std::string witness;
};
ScanResult odd_degree_scan(const EPage& einf);
ScanResult odd_degree_scan(int n, int m, int cutoff, int threads = 0);

int default_threads();

}  // namespace bpss
