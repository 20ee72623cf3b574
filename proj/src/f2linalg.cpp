#include "bpss/f2linalg.hpp"

#include <algorithm>
#include <bit>

namespace bpss {

BitVec& BitVec::operator^=(const BitVec& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

void BitVec::and_not(const BitVec& mask) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~mask.w_[i];
}

bool BitVec::any() const {
    for (auto x : w_)
        if (x) return true;
    return false;
}

int BitVec::count() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
}

int BitVec::lowest() const {
    for (size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return static_cast<int>(i * 64) + std::countr_zero(w_[i]);
    return -1;
}

std::vector<int> BitVec::ones() const {
    std::vector<int> out;
    for (size_t i = 0; i < w_.size(); ++i) {
        uint64_t x = w_[i];
        while (x) {
            out.push_back(static_cast<int>(i * 64) + std::countr_zero(x));
            x &= x - 1;
        }
    }
    return out;
}

namespace {

inline uint64_t above(int b) { return (b & 63) == 63 ? 0 : ~((2ULL << (b & 63)) - 1); }

inline void xor_from(BitVec& v, const BitVec& r, int word) {
    uint64_t* a = v.data();
    const uint64_t* b = r.data();
    for (int i = word; i < v.words(); ++i) a[i] ^= b[i];
}

// Reduces v against rows indexed by pivot, applying the same operations to
// the tracked payload when given.
void reduce_rows(BitVec& v, const std::vector<int>& pivot_row, const std::vector<BitVec>& rows,
                 BitVec* payload, const std::vector<BitVec>* payloads) {
    for (int w = 0; w < v.words(); ++w) {
        uint64_t x = v.data()[w];
        while (x) {
            int b = w * 64 + std::countr_zero(x);
            int r = pivot_row[b];
            if (r >= 0) {
                xor_from(v, rows[r], w);
                if (payload) *payload ^= (*payloads)[r];
                x = v.data()[w] & above(b);
            } else {
                x &= x - 1;
            }
        }
    }
}

}  // namespace

EchelonBasis::EchelonBasis(int nbits) : nbits_(nbits), pivot_row_(nbits, -1), mask_(nbits) {}

void EchelonBasis::reduce(BitVec& v) const {
    if (mask_count_) v.and_not(mask_);
    if (!rows_.empty()) reduce_rows(v, pivot_row_, rows_, nullptr, nullptr);
}

bool EchelonBasis::contains(BitVec v) const {
    reduce(v);
    return !v.any();
}

bool EchelonBasis::add(BitVec v) {
    reduce(v);
    int p = v.lowest();
    if (p < 0) return false;
    if (v.count() == 1) {
        mask_.set(p);
        ++mask_count_;
        for (auto& r : rows_)
            if (r.test(p)) r.reset(p);
        return true;
    }
    pivot_row_[p] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
}

int EchelonBasis::pivots_below(int col) const {
    int c = 0;
    for (int i = 0; i < col && i < nbits_; ++i) c += is_pivot(i);
    return c;
}

EchelonBasis EchelonBasis::full(int nbits) {
    EchelonBasis e(nbits);
    for (int i = 0; i < nbits; ++i) e.mask_.set(i);
    e.mask_count_ = nbits;
    return e;
}

std::vector<BitVec> EchelonBasis::basis() const {
    std::vector<BitVec> out = rows_;
    for (int b : mask_.ones()) out.push_back(BitVec::unit(nbits_, b));
    return out;
}

std::vector<BitVec> EchelonBasis::reduced_basis() const {
    std::vector<BitVec> rows = rows_;
    std::vector<int> order(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return rows[a].lowest() > rows[b].lowest(); });
    for (int i : order) {
        int p = rows[i].lowest();
        for (size_t j = 0; j < rows.size(); ++j)
            if (static_cast<int>(j) != i && rows[j].test(p)) rows[j] ^= rows[i];
    }
    std::sort(rows.begin(), rows.end(), [](const BitVec& a, const BitVec& b) { return a.lowest() < b.lowest(); });
    for (int b : mask_.ones()) rows.push_back(BitVec::unit(nbits_, b));
    return rows;
}

std::vector<BitVec> kernel_payloads(const std::vector<BitVec>& images, const std::vector<BitVec>& payloads,
                                    const EchelonBasis* mod) {
    std::vector<BitVec> out;
    if (images.empty()) return out;
    int width = images[0].size();
    std::vector<int> pivot_row(width, -1);
    std::vector<BitVec> rows, pays;
    for (size_t i = 0; i < images.size(); ++i) {
        BitVec v = images[i];
        BitVec pay = payloads[i];
        if (mod) mod->reduce(v);
        reduce_rows(v, pivot_row, rows, &pay, &pays);
        int p = v.lowest();
        if (p < 0) {
            out.push_back(std::move(pay));
        } else {
            pivot_row[p] = static_cast<int>(rows.size());
            rows.push_back(std::move(v));
            pays.push_back(std::move(pay));
        }
    }
    return out;
}

F2Solver::F2Solver(const std::vector<BitVec>& columns) : k_(static_cast<int>(columns.size())) {
    if (columns.empty()) return;
    pivot_row_.assign(columns[0].size(), -1);
    for (int i = 0; i < k_; ++i) {
        BitVec v = columns[i];
        BitVec pay = BitVec::unit(k_, i);
        reduce_rows(v, pivot_row_, rows_, &pay, &pays_);
        int p = v.lowest();
        if (p >= 0) {
            pivot_row_[p] = static_cast<int>(rows_.size());
            rows_.push_back(std::move(v));
            pays_.push_back(std::move(pay));
        }
    }
}

std::optional<BitVec> F2Solver::solve(const BitVec& target) const {
    BitVec pay(k_);
    if (!target.any()) return pay;
    if (k_ == 0) return std::nullopt;
    BitVec v = target;
    reduce_rows(v, pivot_row_, rows_, &pay, &pays_);
    if (v.any()) return std::nullopt;
    return pay;
}

std::optional<BitVec> solve_f2(const std::vector<BitVec>& columns, const BitVec& target) {
    if (columns.empty()) return target.any() ? std::nullopt : std::optional<BitVec>(BitVec(0));
    return F2Solver(columns).solve(target);
}

int rank_f2(const std::vector<BitVec>& vecs) {
    if (vecs.empty()) return 0;
    EchelonBasis e(vecs[0].size());
    int r = 0;
    for (const auto& v : vecs) r += e.add(v);
    return r;
}

}  // namespace bpss
