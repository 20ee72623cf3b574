#pragma once

// Engine internals shared by the page, closed-form and SNF routes.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bpss/ahss.hpp"
#include "bpss/modcalc.hpp"

namespace bpss {

struct AhssContext {
    AhssContext(int n, int m, int cutoff, int threads);

    int n, m, cutoff;
    int S;  // highest degree any stage looks at
    int threads;
    MilnorContext milnor;
    MnGrading grading;

    BitVec q_vector(int W, int s, Monomial mu) const;
    std::vector<BitVec> q_table(int W, int s) const;  // Q_W on the basis of M_n^s
};

using SubPtr = std::shared_ptr<const EchelonBasis>;

// Cycles and boundaries of the fine cells after the differentials d_{2^{w+1}-1}, w <= stage.
// Indexed [s][P] with P the v-support bitmask; equal subspaces share storage.
struct StageData {
    int stage = 0;
    int z_max = 0, b_max = 0;
    std::vector<std::vector<SubPtr>> Z, B;
};

struct FineGenerators {
    std::vector<BitVec> free_lifts;  // cycles whose free projection is a basis element
    std::vector<int> doubled;        // free coordinates present only as 2 * monomial
    std::vector<BitVec> torsion;     // Z/2 classes
};
FineGenerators fine_generators(const EPage& page, int s, unsigned P);
std::vector<std::string> fine_generator_labels(const EPage& page, int s, const VMono& e, const FineGenerators& g);

std::string class_label(const VMono& e, const std::string& poly, bool doubled);
BitVec apply_table(const std::vector<BitVec>& tab, const BitVec& z, int width);
void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace bpss
