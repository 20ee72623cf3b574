#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace bpss {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    int size() const { return nbits_; }
    int words() const { return static_cast<int>(w_.size()); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= 1ULL << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }
    void flip(int i) { w_[i >> 6] ^= 1ULL << (i & 63); }
    uint64_t* data() { return w_.data(); }
    const uint64_t* data() const { return w_.data(); }

    BitVec& operator^=(const BitVec& o);
    void and_not(const BitVec& mask);
    bool any() const;
    int count() const;
    int lowest() const;  // -1 when zero
    std::vector<int> ones() const;
    friend bool operator==(const BitVec& a, const BitVec& b) { return a.w_ == b.w_ && a.nbits_ == b.nbits_; }

    static BitVec unit(int nbits, int i) {
        BitVec v(nbits);
        v.set(i);
        return v;
    }

private:
    int nbits_ = 0;
    std::vector<uint64_t> w_;
};

// Row space in semi-echelon form: each row's lowest set bit is its pivot and
// no two rows share a pivot.  Unit vectors are kept as a coordinate mask.
class EchelonBasis {
public:
    EchelonBasis() = default;
    explicit EchelonBasis(int nbits);

    int ambient() const { return nbits_; }
    int dim() const { return static_cast<int>(rows_.size()) + mask_count_; }
    bool add(BitVec v);
    void reduce(BitVec& v) const;
    bool contains(BitVec v) const;
    bool is_pivot(int col) const { return mask_.test(col) || pivot_row_[col] >= 0; }
    int pivots_below(int col) const;
    static EchelonBasis full(int nbits);
    const std::vector<BitVec>& rows() const { return rows_; }
    const BitVec& mask() const { return mask_; }
    std::vector<BitVec> basis() const;
    // rows reduced so that every pivot column appears in exactly one basis vector
    std::vector<BitVec> reduced_basis() const;

private:
    int nbits_ = 0;
    std::vector<BitVec> rows_;
    std::vector<int> pivot_row_;
    BitVec mask_;
    int mask_count_ = 0;
};

// Combinations of payloads whose images vanish modulo `mod` (which may be null).
// Payloads must be linearly independent for the result to be a basis.
std::vector<BitVec> kernel_payloads(const std::vector<BitVec>& images, const std::vector<BitVec>& payloads,
                                    const EchelonBasis* mod);

// x with sum x_i columns[i] == target
std::optional<BitVec> solve_f2(const std::vector<BitVec>& columns, const BitVec& target);

// solve_f2 for many targets against the same columns
class F2Solver {
public:
    explicit F2Solver(const std::vector<BitVec>& columns);
    std::optional<BitVec> solve(const BitVec& target) const;

private:
    int k_ = 0;
    std::vector<int> pivot_row_;
    std::vector<BitVec> rows_, pays_;
};

int rank_f2(const std::vector<BitVec>& vecs);

}  // namespace bpss
