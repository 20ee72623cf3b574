#include "bpss/poly2.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_map>

#include "bpss/f2linalg.hpp"

namespace bpss {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::TableMismatch: return "TABLE_MISMATCH";
        case ErrorCode::DegreeMismatch: return "DEGREE_MISMATCH";
        case ErrorCode::MissingImage: return "MISSING_IMAGE";
        case ErrorCode::ExponentOverflow: return "EXPONENT_OVERFLOW";
        case ErrorCode::DegreeOverflow: return "DEGREE_OVERFLOW";
        case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
        case ErrorCode::Parse: return "PARSE_ERROR";
        case ErrorCode::Precondition: return "PRECONDITION_VIOLATED";
        case ErrorCode::NotComplex: return "NON_COMPLEX";
        case ErrorCode::NotWellDefined: return "NOT_WELL_DEFINED";
        case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
        case ErrorCode::Internal: return "INTERNAL";
    }
    return "UNKNOWN";
}

GeneratorTable::GeneratorTable(std::vector<Generator> gens) : gens_(std::move(gens)) {
    if (gens_.size() > kMaxGenerators)
        throw Error(ErrorCode::OutOfRange, "at most 8 generators are supported");
    for (auto& g : gens_)
        if (g.degree <= 0) throw Error(ErrorCode::InvalidArgument, "generator degree must be positive: " + g.name);
}

int GeneratorTable::index_of(std::string_view name) const {
    for (int i = 0; i < size(); ++i)
        if (gens_[i].name == name) return i;
    return -1;
}

bool GeneratorTable::same_as(const GeneratorTable& o) const {
    if (gens_.size() != o.gens_.size()) return false;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree) return false;
    return true;
}

TablePtr make_table(std::vector<Generator> gens) { return std::make_shared<const GeneratorTable>(std::move(gens)); }

void require_same_table(const TablePtr& a, const TablePtr& b) {
    if (a == b) return;
    if (!a || !b || !a->same_as(*b)) throw Error(ErrorCode::TableMismatch, "polynomials over different generator tables");
}

Monomial Monomial::unit(int gen, int exp) {
    if (gen < 0 || gen >= GeneratorTable::kMaxGenerators) throw Error(ErrorCode::OutOfRange, "generator index");
    if (exp < 0 || exp > GeneratorTable::kMaxExponent) throw Error(ErrorCode::ExponentOverflow, "exponent out of range");
    return Monomial(static_cast<uint64_t>(exp) << shift(gen));
}

Monomial Monomial::with_exponent(int gen, int exp) const {
    if (exp < 0 || exp > GeneratorTable::kMaxExponent) throw Error(ErrorCode::ExponentOverflow, "exponent out of range");
    uint64_t m = 0xffULL << shift(gen);
    return Monomial((bits_ & ~m) | (static_cast<uint64_t>(exp) << shift(gen)));
}

int Monomial::degree(const GeneratorTable& t) const {
    int d = 0;
    for (int i = 0; i < t.size(); ++i) d += exponent(i) * t[i].degree;
    return d;
}

bool Monomial::divides(Monomial o) const {
    for (int i = 0; i < 8; ++i)
        if (exponent(i) > o.exponent(i)) return false;
    return true;
}

Monomial Monomial::divided_by(Monomial o) const { return Monomial(bits_ - o.bits_); }

Monomial Monomial::frobenius(int k) const {
    uint64_t b = bits_;
    for (int i = 0; i < k; ++i) {
        if (b & 0x8080808080808080ULL) throw Error(ErrorCode::ExponentOverflow, "exponent exceeds 255");
        b <<= 1;
    }
    return Monomial(b);
}

bool mul_checked(Monomial a, Monomial b, Monomial& out) {
    constexpr uint64_t L = 0x7f7f7f7f7f7f7f7fULL, H = 0x8080808080808080ULL;
    uint64_t x = a.bits(), y = b.bits();
    uint64_t sum7 = (x & L) + (y & L);
    uint64_t h = (x ^ y) & H;
    uint64_t carry = (x & y & H) | (sum7 & h);
    if (carry) return false;
    out = Monomial(sum7 ^ h);
    return true;
}

Monomial operator*(Monomial a, Monomial b) {
    Monomial r;
    if (!mul_checked(a, b, r)) throw Error(ErrorCode::ExponentOverflow, "exponent exceeds 255");
    return r;
}

void canonicalize(const GeneratorTable& t, std::vector<Monomial>& v) {
    if (v.empty()) return;
    int d0 = v[0].degree(t);
    bool homogeneous = true;
    for (auto& m : v)
        if (m.degree(t) != d0) {
            homogeneous = false;
            break;
        }
    if (homogeneous) {
        std::sort(v.begin(), v.end(), [](Monomial a, Monomial b) { return b < a; });
    } else {
        std::vector<std::pair<int, Monomial>> keyed;
        keyed.reserve(v.size());
        for (auto m : v) keyed.emplace_back(m.degree(t), m);
        std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return b.second < a.second;
        });
        for (size_t i = 0; i < v.size(); ++i) v[i] = keyed[i].second;
    }
    size_t out = 0;
    for (size_t i = 0; i < v.size();) {
        size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if ((j - i) & 1) v[out++] = v[i];
        i = j;
    }
    v.resize(out);
}

std::string monomial_to_string(const GeneratorTable& t, Monomial m) {
    if (m.is_one()) return "1";
    std::string s;
    for (int i = 0; i < t.size(); ++i) {
        int e = m.exponent(i);
        if (!e) continue;
        if (!s.empty()) s += '*';
        s += t[i].name;
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

Poly2::Poly2(TablePtr t, std::vector<Monomial> terms) : table_(std::move(t)), terms_(std::move(terms)) {
    for (auto m : terms_)
        for (int i = table_->size(); i < 8; ++i)
            if (m.exponent(i)) throw Error(ErrorCode::OutOfRange, "monomial uses a generator outside the table");
    canonicalize(*table_, terms_);
}

Poly2 Poly2::one(TablePtr t) { return monomial(std::move(t), Monomial()); }

Poly2 Poly2::generator(TablePtr t, int gen) {
    if (gen < 0 || gen >= t->size()) throw Error(ErrorCode::OutOfRange, "generator index");
    return monomial(std::move(t), Monomial::unit(gen));
}

Poly2 Poly2::generator(TablePtr t, std::string_view name) {
    int i = t->index_of(name);
    if (i < 0) throw Error(ErrorCode::OutOfRange, "unknown generator " + std::string(name));
    return generator(std::move(t), i);
}

Poly2 Poly2::monomial(TablePtr t, Monomial m) {
    Poly2 p(std::move(t));
    p.terms_.push_back(m);
    return p;
}

bool Poly2::contains(Monomial m) const { return std::find(terms_.begin(), terms_.end(), m) != terms_.end(); }

std::optional<int> Poly2::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.front().degree(*table_);
    if (terms_.back().degree(*table_) != d) return std::nullopt;
    return d;
}

Poly2& Poly2::operator+=(const Poly2& o) {
    if (o.is_zero()) return *this;
    if (!table_) table_ = o.table_;
    require_same_table(table_, o.table_);
    std::vector<Monomial> v;
    v.reserve(terms_.size() + o.terms_.size());
    v.insert(v.end(), terms_.begin(), terms_.end());
    v.insert(v.end(), o.terms_.begin(), o.terms_.end());
    canonicalize(*table_, v);
    terms_ = std::move(v);
    return *this;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 r = a;
    r += b;
    return r;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    require_same_table(a.table_, b.table_);
    Poly2 r(a.table_);
    if (a.is_zero() || b.is_zero()) return r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (auto x : a.terms_)
        for (auto y : b.terms_) r.terms_.push_back(x * y);
    canonicalize(*r.table_, r.terms_);
    return r;
}

bool operator==(const Poly2& a, const Poly2& b) {
    if (a.is_zero() && b.is_zero()) return true;
    require_same_table(a.table_, b.table_);
    return a.terms_ == b.terms_;
}

Poly2 Poly2::times(Monomial m) const {
    Poly2 r(table_);
    r.terms_.reserve(terms_.size());
    for (auto x : terms_) r.terms_.push_back(x * m);
    // multiplication by a monomial is injective and preserves the order
    return r;
}

Poly2 Poly2::frobenius(int k) const {
    Poly2 r(table_);
    r.terms_.reserve(terms_.size());
    for (auto x : terms_) r.terms_.push_back(x.frobenius(k));
    return r;
}

Poly2 Poly2::pow(unsigned e) const {
    Poly2 r = one(table_);
    for (int k = 0; e; ++k, e >>= 1)
        if (e & 1) r = r * frobenius(k);
    return r;
}

std::string Poly2::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        s += monomial_to_string(*table_, terms_[i]);
    }
    return s;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char c) {
    std::vector<std::string_view> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == c) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

}  // namespace

Poly2 Poly2::parse(TablePtr t, std::string_view text) {
    std::vector<Monomial> terms;
    text = trim(text);
    if (text.empty()) throw Error(ErrorCode::Parse, "empty polynomial");
    if (text == "0") return Poly2(t);
    for (auto term : split(text, '+')) {
        term = trim(term);
        if (term.empty()) throw Error(ErrorCode::Parse, "empty term in '" + std::string(text) + "'");
        Monomial m;
        if (term != "1") {
            for (auto f : split(term, '*')) {
                f = trim(f);
                int e = 1;
                auto caret = f.find('^');
                std::string_view name = trim(f.substr(0, caret));
                if (caret != std::string_view::npos) {
                    auto es = trim(f.substr(caret + 1));
                    auto [p, ec] = std::from_chars(es.data(), es.data() + es.size(), e);
                    if (ec != std::errc() || p != es.data() + es.size() || e < 0)
                        throw Error(ErrorCode::Parse, "bad exponent in '" + std::string(f) + "'");
                }
                int g = t->index_of(name);
                if (g < 0) throw Error(ErrorCode::Parse, "unknown generator '" + std::string(name) + "'");
                m = m * Monomial::unit(g, e);
            }
        }
        terms.push_back(m);
    }
    return Poly2(std::move(t), std::move(terms));
}

Derivation::Derivation(TablePtr t, std::vector<std::optional<Poly2>> images)
    : table_(std::move(t)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != table_->size())
        throw Error(ErrorCode::InvalidArgument, "derivation needs one image slot per generator");
    for (auto& im : images_)
        if (im && !im->is_zero()) require_same_table(table_, im->table());
}

Poly2 Derivation::apply(const Poly2& p) const {
    if (p.is_zero()) return Poly2(table_);
    require_same_table(table_, p.table());
    std::vector<Monomial> acc;
    for (auto m : p.terms()) {
        for (int i = 0; i < table_->size(); ++i) {
            int e = m.exponent(i);
            if (!(e & 1)) continue;
            if (!images_[i]) throw Error(ErrorCode::MissingImage, "no image for generator " + (*table_)[i].name);
            Monomial rest = m.with_exponent(i, e - 1);
            for (auto x : images_[i]->terms()) acc.push_back(x * rest);
        }
    }
    return Poly2(table_, std::move(acc));
}

RingMap::RingMap(TablePtr src, TablePtr dst, std::vector<Poly2> images)
    : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != src_->size())
        throw Error(ErrorCode::InvalidArgument, "ring map needs one image per generator");
    for (int i = 0; i < src_->size(); ++i) {
        auto& im = images_[i];
        if (im.is_zero()) {
            im = Poly2(dst_);
            continue;
        }
        require_same_table(dst_, im.table());
        auto d = im.homogeneous_degree();
        if (!d || *d != (*src_)[i].degree)
            throw Error(ErrorCode::DegreeMismatch, "image of " + (*src_)[i].name + " has the wrong degree");
    }
}

const Poly2& RingMap::power(int gen, int e) const {
    auto key = std::make_pair(gen, e);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Poly2 r;
    if (e == 1) {
        r = images_[gen];
    } else if (e % 2 == 0) {
        r = power(gen, e / 2).square();
    } else {
        r = power(gen, e - 1) * images_[gen];
    }
    return cache_.emplace(key, std::move(r)).first->second;
}

Poly2 RingMap::apply(Monomial m) const {
    Poly2 r = Poly2::one(dst_);
    for (int i = 0; i < src_->size(); ++i) {
        int e = m.exponent(i);
        if (e) r = r * power(i, e);
        if (r.is_zero()) break;
    }
    return r;
}

Poly2 RingMap::apply(const Poly2& p) const {
    if (p.is_zero()) return Poly2(dst_);
    require_same_table(src_, p.table());
    std::vector<Monomial> acc;
    for (auto m : p.terms()) {
        Poly2 im = apply(m);
        acc.insert(acc.end(), im.terms().begin(), im.terms().end());
    }
    return Poly2(dst_, std::move(acc));
}

Poly2 substitute(const Poly2& p, const std::vector<Poly2>& images, TablePtr dst) {
    RingMap f(p.table(), std::move(dst), images);
    return f.apply(p);
}

namespace {

void enumerate(const GeneratorTable& t, std::span<const int> step, int gen, int remaining, Monomial cur,
               std::vector<Monomial>& out) {
    if (gen == t.size()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    int st = gen < static_cast<int>(step.size()) && step[gen] > 1 ? step[gen] : 1;
    int d = t[gen].degree;
    int maxe = std::min(remaining / d, GeneratorTable::kMaxExponent);
    maxe -= maxe % st;
    for (int e = maxe; e >= 0; e -= st) enumerate(t, step, gen + 1, remaining - e * d, cur.with_exponent(gen, e), out);
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const GeneratorTable& t, int degree, std::span<const int> step) {
    std::vector<Monomial> out;
    if (degree < 0) return out;
    enumerate(t, step, 0, degree, Monomial(), out);
    // lex descending already, since exponents are tried from the top down
    return out;
}

long long graded_dim(const GeneratorTable& t, int degree, std::span<const int> step) {
    if (degree < 0) return 0;
    std::vector<long long> f(degree + 1, 0);
    f[0] = 1;
    for (int i = 0; i < t.size(); ++i) {
        int st = i < static_cast<int>(step.size()) && step[i] > 1 ? step[i] : 1;
        int d = t[i].degree * st;
        for (int k = d; k <= degree; ++k) f[k] += f[k - d];
    }
    return f[degree];
}

std::optional<Poly2> subalgebra_express(const std::vector<Poly2>& images, const Poly2& target, int degree_cap,
                                        std::vector<std::string> names) {
    if (images.empty()) throw Error(ErrorCode::InvalidArgument, "no images given");
    if (images.size() > GeneratorTable::kMaxGenerators) throw Error(ErrorCode::OutOfRange, "too many images");
    TablePtr amb = images[0].table();
    std::vector<Generator> gens;
    for (size_t i = 0; i < images.size(); ++i) {
        require_same_table(amb, images[i].table());
        auto d = images[i].homogeneous_degree();
        if (!d) throw Error(ErrorCode::DegreeMismatch, "images must be nonzero and homogeneous");
        gens.push_back({i < names.size() ? names[i] : "y" + std::to_string(i + 1), *d});
    }
    TablePtr abs = make_table(std::move(gens));
    if (target.is_zero()) return Poly2(abs);
    require_same_table(amb, target.table());
    auto td = target.homogeneous_degree();
    if (!td) throw Error(ErrorCode::DegreeMismatch, "target must be homogeneous");
    if (*td > degree_cap) throw Error(ErrorCode::DegreeOverflow, "target degree exceeds the cap");

    auto cands = monomials_of_degree(*abs, *td);
    RingMap f(abs, amb, images);
    std::vector<Poly2> ims;
    std::unordered_map<uint64_t, int> index;
    auto idx = [&](Monomial m) {
        auto [it, fresh] = index.emplace(m.bits(), static_cast<int>(index.size()));
        return it->second;
    };
    for (auto c : cands) {
        ims.push_back(f.apply(c));
        for (auto m : ims.back().terms()) idx(m);
    }
    for (auto m : target.terms())
        if (!index.count(m.bits())) return std::nullopt;
    int width = static_cast<int>(index.size());
    std::vector<BitVec> cols;
    for (auto& p : ims) {
        BitVec v(width);
        for (auto m : p.terms()) v.set(index[m.bits()]);
        cols.push_back(std::move(v));
    }
    BitVec tv(width);
    for (auto m : target.terms()) tv.set(index[m.bits()]);
    auto sol = solve_f2(cols, tv);
    if (!sol) return std::nullopt;
    std::vector<Monomial> terms;
    for (int i : sol->ones()) terms.push_back(cands[i]);
    return Poly2(abs, std::move(terms));
}

}  // namespace bpss
