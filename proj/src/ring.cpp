#include "ringlab/ring.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "json.hpp"

namespace ringlab {
namespace {

using json = nlohmann::json;

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// q = p^w with p prime, or nullopt.
std::optional<std::pair<std::uint64_t, std::uint32_t>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    std::uint32_t w = 0;
    std::uint64_t m = q;
    while (m % p == 0) { m /= p; ++w; }
    if (m != 1) return std::nullopt;
    return std::make_pair(p, w);
}

// ---------------------------------------------------------------------------
// Spec parsing. Recursive descent over the grammar; every branch records the
// canonical rendering so nested specs round-trip exactly.
// ---------------------------------------------------------------------------

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    bool eat(const char* lit) {
        std::size_t n = std::char_traits<char>::length(lit);
        if (s.compare(pos, n, lit) != 0) return false;
        pos += n;
        return true;
    }
    bool at_digit() const { return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); }
    std::uint64_t integer() {
        if (!at_digit()) throw ParseError("expected integer at position " + std::to_string(pos) + " in '" + s + "'");
        std::uint64_t v = 0;
        while (at_digit()) {
            v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
            if (v > 100'000'000) throw ParseError("integer too large in spec '" + s + "'");
            ++pos;
        }
        return v;
    }
};

struct SpecNode {
    enum Kind { Zn, Gf, Mat, Ut, Prod, Dual } kind;
    std::uint64_t n = 0;                    // zn modulus / mat-ut dimension / dual k
    std::uint64_t p = 0;                    // gf characteristic
    std::uint32_t w = 0;                    // gf extension degree
    std::vector<std::uint32_t> modulus;     // gf modulus, low degree first; empty = default
    std::vector<SpecNode> sub;              // children for mat/ut/prod/dual
    std::string canonical;
};

SpecNode parse_node(Cursor& c);

SpecNode parse_gf(Cursor& c) {
    SpecNode node;
    node.kind = SpecNode::Gf;
    std::uint64_t first = c.integer();
    if (c.eat(":")) {
        if (!c.at_digit()) throw ParseError("gf: expected extension degree in '" + c.s + "'");
        node.p = first;
        node.w = static_cast<std::uint32_t>(c.integer());
        if (!is_prime(node.p)) throw ParseError("gf: characteristic " + std::to_string(node.p) + " is not prime");
        if (node.w == 0) throw ParseError("gf: extension degree must be >= 1");
        if (c.eat(":")) {
            node.modulus.push_back(static_cast<std::uint32_t>(c.integer()));
            while (c.eat(",")) node.modulus.push_back(static_cast<std::uint32_t>(c.integer()));
            if (node.modulus.size() != node.w + 1)
                throw ParseError("gf: modulus needs " + std::to_string(node.w + 1) + " coefficients");
            for (auto& co : node.modulus)
                if (co >= node.p) throw ParseError("gf: modulus coefficient out of range");
            if (node.modulus.back() != 1) throw ParseError("gf: modulus must be monic");
        }
    } else {
        auto pw = prime_power(first);
        if (!pw) throw ParseError("gf: " + std::to_string(first) + " is not a prime power");
        node.p = pw->first;
        node.w = pw->second;
    }
    node.canonical = "gf:" + std::to_string(node.p) + ":" + std::to_string(node.w);
    if (!node.modulus.empty()) {
        node.canonical += ":";
        for (std::size_t i = 0; i < node.modulus.size(); ++i)
            node.canonical += (i ? "," : "") + std::to_string(node.modulus[i]);
    }
    return node;
}

SpecNode parse_node(Cursor& c) {
    SpecNode node;
    if (c.eat("zn:")) {
        node.kind = SpecNode::Zn;
        node.n = c.integer();
        if (node.n < 2) throw ParseError("zn: modulus must be >= 2");
        node.canonical = "zn:" + std::to_string(node.n);
    } else if (c.eat("gf:")) {
        node = parse_gf(c);
    } else if (bool mat = c.eat("mat:"); mat || c.eat("ut:")) {
        node.kind = mat ? SpecNode::Mat : SpecNode::Ut;
        node.n = c.integer();
        if (node.n < 1) throw ParseError("matrix dimension must be >= 1");
        if (!c.eat(":")) throw ParseError("expected ':' before base spec in '" + c.s + "'");
        node.sub.push_back(parse_node(c));
        node.canonical = (mat ? "mat:" : "ut:") + std::to_string(node.n) + ":" + node.sub[0].canonical;
    } else if (c.eat("prod:")) {
        node.kind = SpecNode::Prod;
        node.sub.push_back(parse_node(c));
        if (!c.eat("+")) throw ParseError("prod: expected '+' between factors in '" + c.s + "'");
        node.sub.push_back(parse_node(c));
        node.canonical = "prod:" + node.sub[0].canonical + "+" + node.sub[1].canonical;
    } else if (c.eat("dual:")) {
        node.kind = SpecNode::Dual;
        node.n = c.integer();
        if (node.n < 1) throw ParseError("dual: k must be >= 1");
        if (!c.eat(":")) throw ParseError("expected ':' before base spec in '" + c.s + "'");
        node.sub.push_back(parse_node(c));
        node.canonical = "dual:" + std::to_string(node.n) + ":" + node.sub[0].canonical;
    } else {
        throw ParseError("unknown ring spec at position " + std::to_string(c.pos) + " in '" + c.s + "'");
    }
    return node;
}

SpecNode parse_spec_string(const std::string& s) {
    Cursor c{s};
    SpecNode node = parse_node(c);
    if (c.pos != s.size()) throw ParseError("trailing characters after spec: '" + s.substr(c.pos) + "'");
    return node;
}

// ---------------------------------------------------------------------------
// Structural ring implementations.
// ---------------------------------------------------------------------------

class ZnRing final : public Ring {
public:
    explicit ZnRing(std::uint64_t n) {
        spec_ = "zn:" + std::to_string(n);
        size_ = n;
        zero_ = 0;
        one_ = 1 % n == 0 ? 0 : 1;
        char_ = n;
        commutative_ = true;
        n_ = n;
    }
    Elem add(Elem a, Elem b) const override { return static_cast<Elem>((a + std::uint32_t(b)) % n_); }
    Elem mul(Elem a, Elem b) const override { return static_cast<Elem>((a * std::uint64_t(b)) % n_); }
    Elem neg(Elem a) const override { return static_cast<Elem>((n_ - a) % n_); }

private:
    std::uint64_t n_;
};

/// GF(p^w) in the polynomial basis of the quotient by `modulus`.
/// index = c0 + c1*p + ... + c_{w-1}*p^{w-1}.
class GfRing final : public Ring {
public:
    GfRing(std::uint64_t p, std::uint32_t w, std::vector<std::uint32_t> modulus, std::string spec) {
        p_ = p;
        w_ = w;
        mod_ = std::move(modulus);
        spec_ = std::move(spec);
        size_ = 1;
        for (std::uint32_t i = 0; i < w; ++i) size_ *= p;
        zero_ = 0;
        one_ = 1;
        char_ = p;
        commutative_ = true;
    }

    Elem add(Elem a, Elem b) const override {
        std::uint64_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < w_; ++i) {
            out += ((a % p_ + b % p_) % p_) * mult;
            a = static_cast<Elem>(a / p_);
            b = static_cast<Elem>(b / p_);
            mult *= p_;
        }
        return static_cast<Elem>(out);
    }

    Elem neg(Elem a) const override {
        std::uint64_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < w_; ++i) {
            out += ((p_ - a % p_) % p_) * mult;
            a = static_cast<Elem>(a / p_);
            mult *= p_;
        }
        return static_cast<Elem>(out);
    }

    Elem mul(Elem a, Elem b) const override {
        std::array<std::uint64_t, 33> prod{};
        std::array<std::uint64_t, 17> da{}, db{};
        for (std::uint32_t i = 0; i < w_; ++i) { da[i] = a % p_; a = static_cast<Elem>(a / p_); }
        for (std::uint32_t i = 0; i < w_; ++i) { db[i] = b % p_; b = static_cast<Elem>(b / p_); }
        for (std::uint32_t i = 0; i < w_; ++i)
            for (std::uint32_t j = 0; j < w_; ++j) prod[i + j] += da[i] * db[j];
        // reduce modulo the monic modulus, top down
        for (std::uint32_t d = 2 * w_ - 2 + 1; d-- > w_;) {
            std::uint64_t c = prod[d] % p_;
            if (c == 0) continue;
            prod[d] = 0;
            for (std::uint32_t i = 0; i < w_; ++i)
                prod[d - w_ + i] += (p_ - mod_[i] % p_) * c;
        }
        std::uint64_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < w_; ++i) {
            out += (prod[i] % p_) * mult;
            mult *= p_;
        }
        return static_cast<Elem>(out);
    }

private:
    std::uint64_t p_;
    std::uint32_t w_;
    std::vector<std::uint32_t> mod_;
};

/// Full n*n matrices over a base ring. Entries row-major, entry (r,c) at
/// position r*n+c, position 0 least significant in the mixed-radix index.
class MatRing final : public Ring {
public:
    MatRing(RingHandle base, std::size_t n, std::size_t size, std::string spec) : base_(std::move(base)), n_(n) {
        spec_ = std::move(spec);
        size_ = size;
        cells_ = n * n;
        char_ = base_->characteristic();
        commutative_ = n == 1 ? base_->commutative() : base_->size() == 1;
        std::vector<Elem> id(cells_, base_->zero());
        for (std::size_t i = 0; i < n; ++i) id[i * n + i] = base_->one();
        zero_ = 0;
        one_ = encode(id.data());
    }

    Elem add(Elem a, Elem b) const override {
        std::array<Elem, 32> da, db;
        decode(a, da.data());
        decode(b, db.data());
        for (std::size_t i = 0; i < cells_; ++i) da[i] = base_->add(da[i], db[i]);
        return encode(da.data());
    }
    Elem neg(Elem a) const override {
        std::array<Elem, 32> da;
        decode(a, da.data());
        for (std::size_t i = 0; i < cells_; ++i) da[i] = base_->neg(da[i]);
        return encode(da.data());
    }
    Elem mul(Elem a, Elem b) const override {
        std::array<Elem, 32> da, db, out;
        decode(a, da.data());
        decode(b, db.data());
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c) {
                Elem acc = base_->zero();
                for (std::size_t t = 0; t < n_; ++t)
                    acc = base_->add(acc, base_->mul(da[r * n_ + t], db[t * n_ + c]));
                out[r * n_ + c] = acc;
            }
        return encode(out.data());
    }

private:
    void decode(Elem x, Elem* out) const {
        std::uint32_t v = x;
        for (std::size_t i = 0; i < cells_; ++i) {
            out[i] = static_cast<Elem>(v % base_->size());
            v /= static_cast<std::uint32_t>(base_->size());
        }
    }
    Elem encode(const Elem* in) const {
        std::uint64_t v = 0;
        for (std::size_t i = cells_; i-- > 0;) v = v * base_->size() + in[i];
        return static_cast<Elem>(v);
    }

    RingHandle base_;
    std::size_t n_, cells_;
};

/// Upper-triangular n*n matrices. Only the n(n+1)/2 entries with r <= c are
/// stored, row-major: (0,0),(0,1),..,(0,n-1),(1,1),..,(n-1,n-1).
class UtRing final : public Ring {
public:
    UtRing(RingHandle base, std::size_t n, std::size_t size, std::string spec) : base_(std::move(base)), n_(n) {
        spec_ = std::move(spec);
        size_ = size;
        cells_ = n * (n + 1) / 2;
        char_ = base_->characteristic();
        commutative_ = n == 1 ? base_->commutative() : base_->size() == 1;
        pos_.assign(n * n, -1);
        int idx = 0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r; c < n; ++c) pos_[r * n + c] = idx++;
        std::vector<Elem> id(cells_, base_->zero());
        for (std::size_t i = 0; i < n; ++i) id[static_cast<std::size_t>(pos_[i * n + i])] = base_->one();
        zero_ = 0;
        one_ = encode(id.data());
    }

    Elem add(Elem a, Elem b) const override {
        std::array<Elem, 32> da, db;
        decode(a, da.data());
        decode(b, db.data());
        for (std::size_t i = 0; i < cells_; ++i) da[i] = base_->add(da[i], db[i]);
        return encode(da.data());
    }
    Elem neg(Elem a) const override {
        std::array<Elem, 32> da;
        decode(a, da.data());
        for (std::size_t i = 0; i < cells_; ++i) da[i] = base_->neg(da[i]);
        return encode(da.data());
    }
    Elem mul(Elem a, Elem b) const override {
        std::array<Elem, 32> da, db, out;
        decode(a, da.data());
        decode(b, db.data());
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = r; c < n_; ++c) {
                Elem acc = base_->zero();
                for (std::size_t t = r; t <= c; ++t)
                    acc = base_->add(acc, base_->mul(da[at(r, t)], db[at(t, c)]));
                out[at(r, c)] = acc;
            }
        return encode(out.data());
    }

private:
    std::size_t at(std::size_t r, std::size_t c) const { return static_cast<std::size_t>(pos_[r * n_ + c]); }
    void decode(Elem x, Elem* out) const {
        std::uint32_t v = x;
        for (std::size_t i = 0; i < cells_; ++i) {
            out[i] = static_cast<Elem>(v % base_->size());
            v /= static_cast<std::uint32_t>(base_->size());
        }
    }
    Elem encode(const Elem* in) const {
        std::uint64_t v = 0;
        for (std::size_t i = cells_; i-- > 0;) v = v * base_->size() + in[i];
        return static_cast<Elem>(v);
    }

    RingHandle base_;
    std::size_t n_, cells_;
    std::vector<int> pos_;
};

/// Direct product; index = i_left * |right| + i_right.
class ProdRing final : public Ring {
public:
    ProdRing(RingHandle left, RingHandle right, std::string spec) : l_(std::move(left)), r_(std::move(right)) {
        spec_ = std::move(spec);
        size_ = l_->size() * r_->size();
        zero_ = pack(l_->zero(), r_->zero());
        one_ = pack(l_->one(), r_->one());
        char_ = std::lcm(l_->characteristic(), r_->characteristic());
        commutative_ = l_->commutative() && r_->commutative();
    }
    Elem add(Elem a, Elem b) const override {
        return pack(l_->add(left(a), left(b)), r_->add(right(a), right(b)));
    }
    Elem mul(Elem a, Elem b) const override {
        return pack(l_->mul(left(a), left(b)), r_->mul(right(a), right(b)));
    }
    Elem neg(Elem a) const override { return pack(l_->neg(left(a)), r_->neg(right(a))); }

private:
    Elem left(Elem x) const { return static_cast<Elem>(x / r_->size()); }
    Elem right(Elem x) const { return static_cast<Elem>(x % r_->size()); }
    Elem pack(Elem a, Elem b) const { return static_cast<Elem>(a * r_->size() + b); }
    RingHandle l_, r_;
};

/// Plain table-backed ring; used for materialized constructions, cache loads
/// and quotient rings.
class TableRing final : public Ring {
public:
    TableRing(std::string spec, std::size_t size, std::vector<Elem> add, std::vector<Elem> mul)
        : add_t_(std::move(add)), mul_t_(std::move(mul)) {
        spec_ = std::move(spec);
        size_ = size;
        storage_ = "materialized-tables";
        if (add_t_.size() != size * size || mul_t_.size() != size * size)
            throw WrongRing("table ring: table size mismatch for '" + spec_ + "'");
        recover_meta();
    }

    /// Copy meta + tables from an already-built structural ring.
    explicit TableRing(const Ring& src) {
        spec_ = src.spec();
        size_ = src.size();
        zero_ = src.zero();
        one_ = src.one();
        char_ = src.characteristic();
        commutative_ = src.commutative();
        storage_ = "materialized-tables";
        add_t_.resize(size_ * size_);
        mul_t_.resize(size_ * size_);
        for (std::size_t a = 0; a < size_; ++a)
            for (std::size_t b = 0; b < size_; ++b) {
                add_t_[a * size_ + b] = src.add(static_cast<Elem>(a), static_cast<Elem>(b));
                mul_t_[a * size_ + b] = src.mul(static_cast<Elem>(a), static_cast<Elem>(b));
            }
        build_neg();
    }

    Elem add(Elem a, Elem b) const override { return add_t_[a * size_ + b]; }
    Elem mul(Elem a, Elem b) const override { return mul_t_[a * size_ + b]; }
    Elem neg(Elem a) const override { return neg_t_[a]; }
    const Elem* add_table() const override { return add_t_.data(); }
    const Elem* mul_table() const override { return mul_t_.data(); }
    const std::vector<Elem>& add_vec() const { return add_t_; }
    const std::vector<Elem>& mul_vec() const { return mul_t_; }

private:
    void recover_meta() {
        for (std::size_t e = 0; e < size_; ++e) {
            bool ok = true;
            for (std::size_t a = 0; a < size_ && ok; ++a) ok = add_t_[a * size_ + e] == a;
            if (ok) { zero_ = static_cast<Elem>(e); break; }
        }
        for (std::size_t e = 0; e < size_; ++e) {
            bool ok = true;
            for (std::size_t a = 0; a < size_ && ok; ++a)
                ok = mul_t_[a * size_ + e] == a && mul_t_[e * size_ + a] == a;
            if (ok) { one_ = static_cast<Elem>(e); break; }
        }
        commutative_ = true;
        for (std::size_t a = 0; a < size_ && commutative_; ++a)
            for (std::size_t b = a + 1; b < size_; ++b)
                if (mul_t_[a * size_ + b] != mul_t_[b * size_ + a]) { commutative_ = false; break; }
        char_ = 1;
        Elem acc = one_;
        while (acc != zero_) { acc = add_t_[acc * size_ + one_]; ++char_; }
        build_neg();
    }
    void build_neg() {
        neg_t_.resize(size_);
        for (std::size_t a = 0; a < size_; ++a)
            for (std::size_t b = 0; b < size_; ++b)
                if (add_t_[a * size_ + b] == zero_) { neg_t_[a] = static_cast<Elem>(b); break; }
    }

    std::vector<Elem> add_t_, mul_t_, neg_t_;
};

// ---------------------------------------------------------------------------
// Default gf modulus: the lexicographically least monic irreducible of degree
// w over Z_p, coefficients compared lowest degree first.
// ---------------------------------------------------------------------------

bool gf_irreducible(std::uint64_t p, const std::vector<std::uint32_t>& f) {
    std::uint32_t w = static_cast<std::uint32_t>(f.size()) - 1;
    if (w == 1) return true;
    // trial division by every monic polynomial of degree 1..w/2
    std::vector<std::uint32_t> div;
    for (std::uint32_t d = 1; 2 * d <= w; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            div.assign(d + 1, 0);
            std::uint64_t cc = code;
            for (std::uint32_t i = 0; i < d; ++i) { div[i] = static_cast<std::uint32_t>(cc % p); cc /= p; }
            div[d] = 1;
            // remainder of f by div
            std::vector<std::uint32_t> rem(f);
            for (std::uint32_t top = w + 1; top-- > d;) {
                std::uint32_t c = rem[top] % static_cast<std::uint32_t>(p);
                if (c == 0) continue;
                rem[top] = 0;
                for (std::uint32_t i = 0; i < d; ++i) {
                    std::uint64_t v = rem[top - d + i] + (p - div[i]) * std::uint64_t(c);
                    rem[top - d + i] = static_cast<std::uint32_t>(v % p);
                }
            }
            bool zero = true;
            for (std::uint32_t i = 0; i < d; ++i) zero = zero && rem[i] % p == 0;
            if (zero) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> default_gf_modulus(std::uint64_t p, std::uint32_t w) {
    std::vector<std::uint32_t> f(w + 1, 0);
    f[w] = 1;
    // lexicographic order on (c0, c1, .., c_{w-1}): c0 varies slowest
    std::vector<std::uint32_t> digits(w, 0);
    while (true) {
        for (std::uint32_t i = 0; i < w; ++i) f[i] = digits[i];
        if (gf_irreducible(p, f)) return f;
        std::uint32_t i = w;
        while (i-- > 0) {
            if (++digits[i] < p) break;
            digits[i] = 0;
            if (i == 0) throw NotIrreducible("no irreducible modulus found");  // unreachable for valid p, w
        }
    }
}

// ---------------------------------------------------------------------------
// Construction, size accounting, caching.
// ---------------------------------------------------------------------------

std::uint64_t node_size(const SpecNode& n, const Budget& budget) {
    auto checked_pow = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t v = 1;
        for (std::uint64_t i = 0; i < e; ++i) {
            v *= b;
            if (v > budget.elements)
                throw BudgetExceeded("ring size exceeds element budget for spec");
        }
        return v;
    };
    std::uint64_t s = 0;
    switch (n.kind) {
        case SpecNode::Zn: s = n.n; break;
        case SpecNode::Gf: s = checked_pow(n.p, n.w); break;
        case SpecNode::Mat: s = checked_pow(node_size(n.sub[0], budget), n.n * n.n); break;
        case SpecNode::Ut: s = checked_pow(node_size(n.sub[0], budget), n.n * (n.n + 1) / 2); break;
        case SpecNode::Prod: s = node_size(n.sub[0], budget) * node_size(n.sub[1], budget); break;
        case SpecNode::Dual: s = checked_pow(node_size(n.sub[0], budget), n.n + 1); break;
    }
    if (s > budget.elements) throw BudgetExceeded("ring size " + std::to_string(s) + " exceeds element budget");
    return s;
}

std::string cache_filename(const std::string& spec) {
    std::string name;
    for (char ch : spec) name += (ch == ':' || ch == '+' || ch == ',') ? '_' : ch;
    return name + ".json";
}

RingHandle try_cache_load(const std::string& dir, const std::string& spec, std::size_t size) {
    std::filesystem::path path = std::filesystem::path(dir) / cache_filename(spec);
    std::ifstream in(path);
    if (!in) return nullptr;
    json j;
    try {
        in >> j;
        if (j.at("spec").get<std::string>() != spec) return nullptr;
        if (j.at("size").get<std::size_t>() != size) return nullptr;
        std::vector<Elem> add = j.at("add").get<std::vector<Elem>>();
        std::vector<Elem> mul = j.at("mul").get<std::vector<Elem>>();
        return std::make_shared<TableRing>(spec, size, std::move(add), std::move(mul));
    } catch (...) {
        return nullptr;  // unreadable cache entries are ignored, not fatal
    }
}

void cache_store(const std::string& dir, const TableRing& ring) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::filesystem::path path = std::filesystem::path(dir) / cache_filename(ring.spec());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    json j;
    j["spec"] = ring.spec();
    j["size"] = ring.size();
    j["add"] = ring.add_vec();
    j["mul"] = ring.mul_vec();
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump();
    out.close();
    std::filesystem::rename(tmp, path, ec);
}

RingHandle build_node(const SpecNode& n, const ConstructOptions& opt);

RingHandle build_structural(const SpecNode& n, const ConstructOptions& opt) {
    switch (n.kind) {
        case SpecNode::Zn:
            return std::make_shared<ZnRing>(n.n);
        case SpecNode::Gf: {
            auto modulus = n.modulus;
            if (modulus.empty()) modulus = default_gf_modulus(n.p, n.w);
            else if (!gf_irreducible(n.p, modulus))
                throw NotIrreducible("gf modulus is reducible in spec '" + n.canonical + "'");
            return std::make_shared<GfRing>(n.p, n.w, std::move(modulus), n.canonical);
        }
        case SpecNode::Mat:
            return std::make_shared<MatRing>(build_node(n.sub[0], opt), n.n, node_size(n, opt.budget), n.canonical);
        case SpecNode::Ut:
            return std::make_shared<UtRing>(build_node(n.sub[0], opt), n.n, node_size(n, opt.budget), n.canonical);
        case SpecNode::Prod:
            return std::make_shared<ProdRing>(build_node(n.sub[0], opt), build_node(n.sub[1], opt), n.canonical);
        case SpecNode::Dual:
            return std::make_shared<DualRing>(build_node(n.sub[0], opt), n.n, opt.budget);
    }
    throw ParseError("unreachable spec kind");
}

RingHandle build_node(const SpecNode& n, const ConstructOptions& opt) {
    std::uint64_t size = node_size(n, opt.budget);
    bool is_dual = n.kind == SpecNode::Dual;
    bool want_tables = opt.materialize == 1 || (opt.materialize == -1 && !is_dual && size <= 4096);
    if (want_tables && size > 4096)
        throw BudgetExceeded("materialized tables limited to size 4096 (spec '" + n.canonical + "')");

    if (is_dual) {
        // never cache-load duals: the component structure must survive
        auto dual = std::make_shared<DualRing>(build_node(n.sub[0], opt), n.n, opt.budget);
        if (want_tables) dual->materialize_tables();
        return dual;
    }
    if (want_tables && !opt.cache_dir.empty())
        if (RingHandle cached = try_cache_load(opt.cache_dir, n.canonical, size)) return cached;
    RingHandle structural = build_structural(n, opt);
    if (!want_tables) return structural;
    auto table = std::make_shared<TableRing>(*structural);
    if (!opt.cache_dir.empty()) cache_store(opt.cache_dir, *table);
    return table;
}

}  // namespace

// ---------------------------------------------------------------------------
// DualRing
// ---------------------------------------------------------------------------

DualRing::DualRing(RingHandle base, std::size_t k, const Budget& budget) : base_(std::move(base)), k_(k) {
    std::uint64_t s = 1;
    for (std::size_t i = 0; i <= k; ++i) {
        s *= base_->size();
        if (s > budget.elements) throw BudgetExceeded("dual ring size exceeds element budget");
    }
    spec_ = "dual:" + std::to_string(k) + ":" + base_->spec();
    size_ = s;
    char_ = base_->characteristic();
    commutative_ = base_->commutative();
    if (k_ + 1 > 16) throw BudgetExceeded("dual ring k too large");
    std::vector<Elem> zeros(k_, base_->zero());
    zero_ = encode(base_->zero(), zeros);
    one_ = encode(base_->one(), zeros);
}

Elem DualRing::encode(Elem a0, const std::vector<Elem>& rest) const {
    if (rest.size() != k_) throw WrongRing("dual encode: expected " + std::to_string(k_) + " nilpotent components");
    std::uint64_t v = 0;
    for (std::size_t i = k_; i-- > 0;) {
        if (rest[i] >= base_->size()) throw WrongRing("dual encode: component out of range");
        v = v * base_->size() + rest[i];
    }
    if (a0 >= base_->size()) throw WrongRing("dual encode: pure component out of range");
    return static_cast<Elem>(v * base_->size() + a0);
}

std::vector<Elem> DualRing::decode(Elem x) const {
    std::vector<Elem> out(k_ + 1);
    std::uint32_t v = x;
    for (std::size_t i = 0; i <= k_; ++i) {
        out[i] = static_cast<Elem>(v % base_->size());
        v /= static_cast<std::uint32_t>(base_->size());
    }
    return out;
}

Elem DualRing::add(Elem a, Elem b) const {
    if (!add_t_.empty()) return add_t_[a * size_ + b];
    std::uint64_t out = 0, mult = 1;
    const std::size_t n = base_->size();
    for (std::size_t i = 0; i <= k_; ++i) {
        out += std::uint64_t(base_->add(static_cast<Elem>(a % n), static_cast<Elem>(b % n))) * mult;
        a = static_cast<Elem>(a / n);
        b = static_cast<Elem>(b / n);
        mult *= n;
    }
    return static_cast<Elem>(out);
}

Elem DualRing::neg(Elem a) const {
    std::uint64_t out = 0, mult = 1;
    const std::size_t n = base_->size();
    for (std::size_t i = 0; i <= k_; ++i) {
        out += std::uint64_t(base_->neg(static_cast<Elem>(a % n))) * mult;
        a = static_cast<Elem>(a / n);
        mult *= n;
    }
    return static_cast<Elem>(out);
}

Elem DualRing::mul(Elem a, Elem b) const {
    if (!mul_t_.empty()) return mul_t_[a * size_ + b];
    const std::size_t n = base_->size();
    const Elem a0 = static_cast<Elem>(a % n), b0 = static_cast<Elem>(b % n);
    std::uint64_t out = base_->mul(a0, b0);
    std::uint64_t mult = n;
    a = static_cast<Elem>(a / n);
    b = static_cast<Elem>(b / n);
    for (std::size_t i = 1; i <= k_; ++i) {
        const Elem ai = static_cast<Elem>(a % n), bi = static_cast<Elem>(b % n);
        out += std::uint64_t(base_->add(base_->mul(a0, bi), base_->mul(ai, b0))) * mult;
        a = static_cast<Elem>(a / n);
        b = static_cast<Elem>(b / n);
        mult *= n;
    }
    return static_cast<Elem>(out);
}

void DualRing::materialize_tables() {
    // fill local buffers first: add()/mul() consult add_t_/mul_t_ once non-empty
    std::vector<Elem> at(size_ * size_), mt(size_ * size_);
    for (std::size_t a = 0; a < size_; ++a)
        for (std::size_t b = 0; b < size_; ++b) {
            at[a * size_ + b] = add(static_cast<Elem>(a), static_cast<Elem>(b));
            mt[a * size_ + b] = mul(static_cast<Elem>(a), static_cast<Elem>(b));
        }
    add_t_ = std::move(at);
    mul_t_ = std::move(mt);
    storage_ = "materialized-tables";
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

RingHandle construct_ring(const std::string& spec, const ConstructOptions& opt) {
    SpecNode node = parse_spec_string(spec);
    return build_node(node, opt);
}

namespace {

void collect_radices(const SpecNode& n, std::vector<std::uint32_t>& out) {
    switch (n.kind) {
        case SpecNode::Zn:
            out.push_back(static_cast<std::uint32_t>(n.n));
            break;
        case SpecNode::Gf:
            for (std::uint32_t i = 0; i < n.w; ++i) out.push_back(static_cast<std::uint32_t>(n.p));
            break;
        case SpecNode::Mat:
            for (std::uint64_t i = 0; i < n.n * n.n; ++i) collect_radices(n.sub[0], out);
            break;
        case SpecNode::Ut:
            for (std::uint64_t i = 0; i < n.n * (n.n + 1) / 2; ++i) collect_radices(n.sub[0], out);
            break;
        case SpecNode::Prod:
            // index = i_left * |right| + i_right: right digits are low
            collect_radices(n.sub[1], out);
            collect_radices(n.sub[0], out);
            break;
        case SpecNode::Dual:
            for (std::uint64_t i = 0; i <= n.n; ++i) collect_radices(n.sub[0], out);
            break;
    }
}

}  // namespace

std::optional<std::vector<std::uint32_t>> additive_radices(const std::string& spec) {
    SpecNode node;
    try {
        node = parse_spec_string(spec);
    } catch (const ParseError&) {
        return std::nullopt;
    }
    std::vector<std::uint32_t> out;
    collect_radices(node, out);
    return out;
}

std::string canonical_spec(const std::string& spec) { return parse_spec_string(spec).canonical; }

Elem dual_compose(const Ring& ring, Elem a0, const std::vector<Elem>& rest) {
    const DualRing* d = as_dual(ring);
    if (!d) throw WrongRing("dual_compose: '" + ring.spec() + "' is not a dual ring");
    return d->encode(a0, rest);
}

std::vector<Elem> dual_decompose(const Ring& ring, Elem x) {
    const DualRing* d = as_dual(ring);
    if (!d) throw WrongRing("dual_decompose: '" + ring.spec() + "' is not a dual ring");
    if (x >= ring.size()) throw WrongRing("dual_decompose: index out of range");
    return d->decode(x);
}

RingHandle make_table_ring(const std::string& spec, std::size_t size,
                           std::vector<Elem> add, std::vector<Elem> mul) {
    return std::make_shared<TableRing>(spec, size, std::move(add), std::move(mul));
}

}  // namespace ringlab
