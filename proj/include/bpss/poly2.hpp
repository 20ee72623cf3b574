#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bpss/error.hpp"

namespace bpss {

struct Generator {
    std::string name;
    int degree;
};

class GeneratorTable {
public:
    static constexpr int kMaxGenerators = 8;
    static constexpr int kMaxExponent = 255;

    explicit GeneratorTable(std::vector<Generator> gens);

    int size() const { return static_cast<int>(gens_.size()); }
    const Generator& operator[](int i) const { return gens_[i]; }
    const std::vector<Generator>& generators() const { return gens_; }
    int index_of(std::string_view name) const;
    bool same_as(const GeneratorTable& o) const;

private:
    std::vector<Generator> gens_;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;
TablePtr make_table(std::vector<Generator> gens);
void require_same_table(const TablePtr& a, const TablePtr& b);

// Exponents packed one byte per generator, generator 0 in the top byte, so
// integer order on the packed word is lex order on exponent vectors.
class Monomial {
public:
    constexpr Monomial() = default;
    explicit constexpr Monomial(uint64_t bits) : bits_(bits) {}

    static Monomial unit(int gen, int exp = 1);

    uint64_t bits() const { return bits_; }
    int exponent(int gen) const { return static_cast<int>((bits_ >> shift(gen)) & 0xff); }
    Monomial with_exponent(int gen, int exp) const;
    bool is_one() const { return bits_ == 0; }
    int degree(const GeneratorTable& t) const;
    bool divides(Monomial o) const;
    Monomial divided_by(Monomial o) const;  // requires divides
    bool all_even() const { return (bits_ & 0x0101010101010101ULL) == 0; }
    Monomial frobenius(int k) const;

    friend bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }
    friend bool operator<(Monomial a, Monomial b) { return a.bits_ < b.bits_; }

    static constexpr int shift(int gen) { return 56 - 8 * gen; }

private:
    uint64_t bits_ = 0;
};

// false on exponent overflow
bool mul_checked(Monomial a, Monomial b, Monomial& out);
Monomial operator*(Monomial a, Monomial b);

class Poly2 {
public:
    Poly2() = default;
    explicit Poly2(TablePtr t) : table_(std::move(t)) {}
    Poly2(TablePtr t, std::vector<Monomial> terms);

    static Poly2 one(TablePtr t);
    static Poly2 generator(TablePtr t, int gen);
    static Poly2 generator(TablePtr t, std::string_view name);
    static Poly2 monomial(TablePtr t, Monomial m);
    static Poly2 parse(TablePtr t, std::string_view text);

    const TablePtr& table() const { return table_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    bool contains(Monomial m) const;
    std::optional<int> homogeneous_degree() const;

    Poly2& operator+=(const Poly2& o);
    friend Poly2 operator+(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    friend bool operator==(const Poly2& a, const Poly2& b);

    Poly2 times(Monomial m) const;
    Poly2 square() const { return frobenius(1); }
    Poly2 frobenius(int k) const;
    Poly2 pow(unsigned e) const;

    std::string to_string() const;

private:
    TablePtr table_;
    std::vector<Monomial> terms_;  // degree descending, then lex descending
};

// sorts into canonical order and cancels pairs
void canonicalize(const GeneratorTable& t, std::vector<Monomial>& v);
std::string monomial_to_string(const GeneratorTable& t, Monomial m);

class Derivation {
public:
    Derivation(TablePtr t, std::vector<std::optional<Poly2>> images);
    Poly2 apply(const Poly2& p) const;
    const TablePtr& table() const { return table_; }

private:
    TablePtr table_;
    std::vector<std::optional<Poly2>> images_;
};

// Ring map sending generator i of src to images[i]; powers are cached, so an
// instance must not be shared between threads.
class RingMap {
public:
    RingMap(TablePtr src, TablePtr dst, std::vector<Poly2> images);
    Poly2 apply(const Poly2& p) const;
    Poly2 apply(Monomial m) const;
    const TablePtr& source() const { return src_; }
    const TablePtr& target() const { return dst_; }

private:
    const Poly2& power(int gen, int e) const;

    TablePtr src_, dst_;
    std::vector<Poly2> images_;
    mutable std::map<std::pair<int, int>, Poly2> cache_;
};

Poly2 substitute(const Poly2& p, const std::vector<Poly2>& images, TablePtr dst);

// step[i] > 1 restricts exponents of generator i to multiples of step[i]
std::vector<Monomial> monomials_of_degree(const GeneratorTable& t, int degree,
                                          std::span<const int> step = {});
long long graded_dim(const GeneratorTable& t, int degree, std::span<const int> step = {});

// Finds P with P(images) == target, P over a table of abstract generators
// whose degrees are those of the images.  nullopt when target is not in the
// subalgebra generated by the images.
std::optional<Poly2> subalgebra_express(const std::vector<Poly2>& images, const Poly2& target,
                                        int degree_cap, std::vector<std::string> names = {});

}  // namespace bpss
