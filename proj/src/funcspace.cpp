#include "ringlab/funcspace.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

namespace ringlab {
namespace {

std::string pack_key(const std::vector<Elem>& t) {
    return std::string(reinterpret_cast<const char*>(t.data()), t.size() * sizeof(Elem));
}

std::string pack_key2(const std::vector<Elem>& a, const std::vector<Elem>& b) {
    std::string key = pack_key(a);
    key.append(reinterpret_cast<const char*>(b.data()), b.size() * sizeof(Elem));
    return key;
}

std::optional<std::pair<std::uint64_t, int>> prime_power_split(std::uint64_t m) {
    if (m < 2) return std::nullopt;
    std::uint64_t p = m;
    for (std::uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) { p = d; break; }
    int c = 0;
    while (m % p == 0) { m /= p; ++c; }
    if (m != 1) return std::nullopt;
    return std::make_pair(p, c);
}

}  // namespace

// ---------------------------------------------------------------------------
// Tables and ideal membership
// ---------------------------------------------------------------------------

bool table_bijective(const std::vector<Elem>& out) {
    std::vector<std::uint8_t> seen(out.size(), 0);
    for (Elem v : out) {
        if (v >= out.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

FuncTable func_table(const Poly& f) {
    FuncTable t;
    t.ring = f.ring;
    t.out.resize(f.ring->size());
    for (std::size_t a = 0; a < t.out.size(); ++a)
        t.out[a] = eval_right(f, static_cast<Elem>(a));
    t.bijective = table_bijective(t.out);
    return t;
}

bool is_null(const Poly& f) {
    const Elem z = f.ring->zero();
    for (std::size_t a = 0; a < f.ring->size(); ++a)
        if (eval_right(f, static_cast<Elem>(a)) != z) return false;
    return true;
}

bool is_anull(const Poly& f) {
    if (!is_null(f)) return false;
    const Elem z = f.ring->zero();
    const std::size_t n = f.ring->size();
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t zz = 0; zz < n; ++zz)
            if (lambda_eval(f, static_cast<Elem>(y), static_cast<Elem>(zz)) != z) return false;
    return true;
}

bool is_nullprime(const Poly& f) { return is_null(f) && is_null(formal_derivative(f)); }

bool equiv_on(const Poly& f, const Poly& g) {
    if (!f.ring->same_ring(*g.ring)) throw WrongRing("equiv_on: different rings");
    for (std::size_t a = 0; a < f.ring->size(); ++a)
        if (eval_right(f, static_cast<Elem>(a)) != eval_right(g, static_cast<Elem>(a)))
            return false;
    return true;
}

bool equiv_dual_criterion(const RingHandle& dual, const std::vector<Poly>& f,
                          const std::vector<Poly>& g) {
    const DualRing* d = as_dual(*dual);
    if (!d) throw WrongRing("equiv_dual_criterion: not a dual ring");
    if (f.size() != d->k() + 1 || g.size() != d->k() + 1)
        throw WrongRing("equiv_dual_criterion: need k+1 components");
    if (!equiv_on(f[0], g[0])) return false;
    const std::size_t n = d->base()->size();
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
            if (lambda_eval(f[0], static_cast<Elem>(y), static_cast<Elem>(z)) !=
                lambda_eval(g[0], static_cast<Elem>(y), static_cast<Elem>(z)))
                return false;
    for (std::size_t i = 1; i <= d->k(); ++i)
        if (!equiv_on(f[i], g[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// PolyEnumerator
// ---------------------------------------------------------------------------

PolyEnumerator::PolyEnumerator(RingHandle ring, std::vector<std::vector<Elem>> alphabets,
                               unsigned track)
    : ring_(std::move(ring)), alphabets_(std::move(alphabets)), track_(track) {
    const Ring& R = *ring_;
    n_ = R.size();
    const std::size_t D = alphabets_.size();
    if (D == 0) throw Error("PolyEnumerator: empty degree range");
    digits_.assign(D, 0);
    coeffs_.resize(D);
    __uint128_t tot = 1;
    for (const auto& a : alphabets_) {
        if (a.empty()) throw Error("PolyEnumerator: empty alphabet");
        tot *= a.size();
        if (tot > ~std::uint64_t(0)) tot = ~std::uint64_t(0);
    }
    total_ = static_cast<std::uint64_t>(tot);
    for (std::size_t j = 0; j < D; ++j) coeffs_[j] = alphabets_[j][0];

    // power tables a^j, reused by every monomial family
    std::vector<std::vector<Elem>> apow(D);
    apow[0].assign(n_, R.one());
    for (std::size_t j = 1; j < D; ++j) {
        apow[j].resize(n_);
        for (std::size_t a = 0; a < n_; ++a)
            apow[j][a] = R.mul(apow[j - 1][a], static_cast<Elem>(a));
    }

    auto neg_of = [&R](const std::vector<Elem>& t) {
        std::vector<Elem> out(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) out[i] = R.neg(t[i]);
        return out;
    };

    if (track_ & FT) {
        mono_ft_.resize(D);
        mono_ft_neg_.resize(D);
        for (std::size_t j = 0; j < D; ++j) {
            mono_ft_[j].resize(alphabets_[j].size());
            mono_ft_neg_[j].resize(alphabets_[j].size());
            for (std::size_t l = 0; l < alphabets_[j].size(); ++l) {
                std::vector<Elem> t(n_);
                for (std::size_t a = 0; a < n_; ++a) t[a] = R.mul(alphabets_[j][l], apow[j][a]);
                mono_ft_neg_[j][l] = neg_of(t);
                mono_ft_[j][l] = std::move(t);
            }
        }
        ft_.assign(n_, R.zero());
        for (std::size_t j = 0; j < D; ++j)
            for (std::size_t a = 0; a < n_; ++a) ft_[a] = R.add(ft_[a], mono_ft_[j][0][a]);
        ft_hist_.assign(n_, 0);
        ft_zero_cells_ = 0;
        for (Elem v : ft_) {
            if (v == R.zero()) ++ft_zero_cells_;
            ++ft_hist_[v];
        }
        ft_good_values_ = 0;
        for (std::uint32_t h : ft_hist_)
            if (h == 1) ++ft_good_values_;
    }

    if (track_ & DT) {
        mono_dt_.resize(D);
        mono_dt_neg_.resize(D);
        for (std::size_t j = 0; j < D; ++j) {
            mono_dt_[j].resize(alphabets_[j].size());
            mono_dt_neg_[j].resize(alphabets_[j].size());
            for (std::size_t l = 0; l < alphabets_[j].size(); ++l) {
                std::vector<Elem> t(n_, R.zero());
                if (j >= 1) {
                    Elem jl = R.zero();  // j * letter
                    for (std::size_t i = 0; i < j; ++i) jl = R.add(jl, alphabets_[j][l]);
                    for (std::size_t a = 0; a < n_; ++a) t[a] = R.mul(jl, apow[j - 1][a]);
                }
                mono_dt_neg_[j][l] = neg_of(t);
                mono_dt_[j][l] = std::move(t);
            }
        }
        dt_.assign(n_, R.zero());
        for (std::size_t j = 0; j < D; ++j)
            for (std::size_t a = 0; a < n_; ++a) dt_[a] = R.add(dt_[a], mono_dt_[j][0][a]);
        dt_zero_cells_ = 0;
        for (Elem v : dt_)
            if (v == R.zero()) ++dt_zero_cells_;
    }

    if (track_ & LT) {
        // m_j(y,z) tables by the recurrence m_{j+1} = y m_j + z y^j
        std::vector<std::vector<Elem>> mj(D);
        mj[0].assign(n_ * n_, R.zero());
        if (D >= 2) {
            mj[1].resize(n_ * n_);
            for (std::size_t y = 0; y < n_; ++y)
                for (std::size_t z = 0; z < n_; ++z) mj[1][y * n_ + z] = static_cast<Elem>(z);
            for (std::size_t j = 2; j < D; ++j) {
                mj[j].resize(n_ * n_);
                for (std::size_t y = 0; y < n_; ++y)
                    for (std::size_t z = 0; z < n_; ++z) {
                        Elem v = R.mul(static_cast<Elem>(y), mj[j - 1][y * n_ + z]);
                        v = R.add(v, R.mul(static_cast<Elem>(z), apow[j - 1][y]));
                        mj[j][y * n_ + z] = v;
                    }
            }
        }
        mono_lt_.resize(D);
        mono_lt_neg_.resize(D);
        for (std::size_t j = 0; j < D; ++j) {
            mono_lt_[j].resize(alphabets_[j].size());
            mono_lt_neg_[j].resize(alphabets_[j].size());
            for (std::size_t l = 0; l < alphabets_[j].size(); ++l) {
                std::vector<Elem> t(n_ * n_, R.zero());
                if (j >= 1)
                    for (std::size_t cell = 0; cell < n_ * n_; ++cell)
                        t[cell] = R.mul(alphabets_[j][l], mj[j][cell]);
                mono_lt_neg_[j][l] = neg_of(t);
                mono_lt_[j][l] = std::move(t);
            }
        }
        lt_.assign(n_ * n_, R.zero());
        for (std::size_t j = 0; j < D; ++j)
            for (std::size_t cell = 0; cell < n_ * n_; ++cell)
                lt_[cell] = R.add(lt_[cell], mono_lt_[j][0][cell]);
        lt_zero_cells_ = 0;
        for (Elem v : lt_)
            if (v == R.zero()) ++lt_zero_cells_;
    }
}

void PolyEnumerator::apply_digit(std::size_t j, std::size_t from_letter, std::size_t to_letter) {
    const Ring& R = *ring_;
    const Elem zero = R.zero();
    const Elem* AT = R.add_table();
    const std::size_t n = n_;

    auto update = [&](std::vector<Elem>& tab, const std::vector<Elem>& sub,
                      const std::vector<Elem>& add_t, std::size_t cells, std::size_t* zero_cnt,
                      bool hist) {
        for (std::size_t i = 0; i < cells; ++i) {
            Elem v = tab[i];
            if (AT) {
                v = AT[std::size_t(v) * n + sub[i]];
                v = AT[std::size_t(v) * n + add_t[i]];
            } else {
                v = R.add(v, sub[i]);
                v = R.add(v, add_t[i]);
            }
            if (v == tab[i]) continue;
            if (zero_cnt) {
                if (tab[i] == zero) --*zero_cnt;
                if (v == zero) ++*zero_cnt;
            }
            if (hist) {
                std::uint32_t& hold = ft_hist_[tab[i]];
                if (hold == 1) --ft_good_values_;
                if (hold == 2) ++ft_good_values_;
                --hold;
                std::uint32_t& hnew = ft_hist_[v];
                if (hnew == 0) ++ft_good_values_;
                if (hnew == 1) --ft_good_values_;
                ++hnew;
            }
            tab[i] = v;
        }
    };

    if (track_ & FT)
        update(ft_, mono_ft_neg_[j][from_letter], mono_ft_[j][to_letter], n, &ft_zero_cells_,
               true);
    if (track_ & DT)
        update(dt_, mono_dt_neg_[j][from_letter], mono_dt_[j][to_letter], n, &dt_zero_cells_,
               false);
    if (track_ & LT)
        update(lt_, mono_lt_neg_[j][from_letter], mono_lt_[j][to_letter], n * n,
               &lt_zero_cells_, false);
    coeffs_[j] = alphabets_[j][to_letter];
}

void PolyEnumerator::advance() {
    for (std::size_t j = 0; j < digits_.size(); ++j) {
        std::size_t next = digits_[j] + 1;
        if (next < alphabets_[j].size()) {
            apply_digit(j, digits_[j], next);
            digits_[j] = next;
            return;
        }
        apply_digit(j, digits_[j], 0);
        digits_[j] = 0;
    }
    done_ = true;
}

Poly PolyEnumerator::current_poly() const {
    return Poly::from_coeffs(ring_, coeffs_);
}

// ---------------------------------------------------------------------------
// Additive table spans
// ---------------------------------------------------------------------------

std::vector<std::vector<Elem>> table_span(const Ring& r,
                                          const std::vector<std::vector<Elem>>& gens,
                                          const Budget& budget) {
    if (gens.empty()) return {};
    const std::size_t cells = gens[0].size();
    // cap by memory as well as count: member tables plus their keys
    const std::uint64_t cap =
        std::min<std::uint64_t>(budget.tables,
                                std::max<std::uint64_t>(1, 64'000'000 / (2 * cells)));
    std::vector<std::vector<Elem>> members;
    std::unordered_set<std::string> seen;
    std::vector<Elem> zero_tab(cells, r.zero());
    seen.insert(pack_key(zero_tab));
    members.push_back(std::move(zero_tab));

    std::vector<Elem> mult(cells), sum(cells);
    for (const auto& g : gens) {
        if (g.size() != cells) throw WrongRing("table_span: mixed table sizes");
        if (seen.count(pack_key(g))) continue;
        std::vector<std::vector<Elem>> grown = members;
        mult = g;
        bool zero_mult = false;
        while (!zero_mult) {
            for (const auto& s : members) {
                for (std::size_t i = 0; i < cells; ++i) sum[i] = r.add(s[i], mult[i]);
                std::string key = pack_key(sum);
                if (seen.insert(key).second) {
                    grown.push_back(sum);
                    if (grown.size() > cap)
                        throw BudgetExceeded("table_span: span exceeds table budget");
                }
            }
            for (std::size_t i = 0; i < cells; ++i) mult[i] = r.add(mult[i], g[i]);
            zero_mult = true;
            for (std::size_t i = 0; i < cells && zero_mult; ++i)
                zero_mult = mult[i] == r.zero();
        }
        members = std::move(grown);
    }
    return members;
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

std::uint64_t count_polyfun_enumerate(const RingHandle& r, const Budget& budget) {
    Poly null = monic_central_null(r);
    const std::size_t d = static_cast<std::size_t>(null.degree());
    __uint128_t tot = 1;
    for (std::size_t i = 0; i < d; ++i) {
        tot *= r->size();
        if (tot > budget.tuples)
            throw BudgetExceeded("count_polyfun_enumerate: |R|^d exceeds tuple budget");
    }
    std::vector<Elem> all(r->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Elem>(i);
    PolyEnumerator en(r, std::vector<std::vector<Elem>>(d, all), PolyEnumerator::FT);
    std::unordered_set<std::string> tables;
    while (!en.done()) {
        tables.insert(pack_key(en.func_table()));
        en.advance();
    }
    return tables.size();
}

std::uint64_t count_polyfun_span(const RingHandle& r, const Budget& budget) {
    Poly null = monic_central_null(r);
    const std::size_t d = static_cast<std::size_t>(null.degree());
    std::vector<std::vector<Elem>> gens;
    gens.reserve(r->size() * d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t c = 0; c < r->size(); ++c)
            gens.push_back(func_table(Poly::monomial(r, static_cast<Elem>(c), j)).out);
    return table_span(*r, gens, budget).size();
}

// ---------------------------------------------------------------------------
// Modular row elimination over Z_{p^c} (subgroup orders and kernels)
// ---------------------------------------------------------------------------

namespace {

struct ModArith {
    std::uint64_t p;
    int c;
    std::uint32_t m;  // p^c

    int valuation(std::uint32_t x) const {
        if (x == 0) return c;
        int v = 0;
        while (x % p == 0) {
            x = static_cast<std::uint32_t>(x / p);
            ++v;
        }
        return v;
    }
    std::uint32_t unit_inverse(std::uint32_t u) const {
        // extended Euclid against m; u coprime to p
        std::int64_t t = 0, newt = 1, r = m, newr = u % m;
        while (newr != 0) {
            std::int64_t q = r / newr;
            std::int64_t tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        if (t < 0) t += m;
        return static_cast<std::uint32_t>(t);
    }
};

struct SpanResult {
    std::uint64_t order = 1;
    std::vector<std::vector<std::uint32_t>> kernel;  // combos over the input rows
};

/// Row elimination over Z_{p^c}. Computes the order of the additive span of
/// `rows` (restricted to the first data_width coordinates) and, when
/// want_kernel, generators of all integer combinations yielding the zero
/// vector. Annihilator completions p^{c-v} * pivot are re-inserted so orders
/// and kernels stay exact over non-field moduli.
SpanResult modular_span(std::vector<std::vector<std::uint32_t>> rows, std::size_t data_width,
                        const ModArith& A, bool want_kernel) {
    const std::size_t nrows = rows.size();
    if (want_kernel)
        for (std::size_t i = 0; i < nrows; ++i) {
            rows[i].resize(data_width + nrows, 0);
            rows[i][data_width + i] = 1 % A.m;
        }
    const std::size_t W = data_width + (want_kernel ? nrows : 0);

    auto scale_row = [&](std::vector<std::uint32_t>& r, std::uint64_t f) {
        for (auto& x : r) x = static_cast<std::uint32_t>((x * f) % A.m);
    };
    auto submul_row = [&](std::vector<std::uint32_t>& r, const std::vector<std::uint32_t>& s,
                          std::uint64_t f) {
        for (std::size_t i = 0; i < W; ++i)
            r[i] = static_cast<std::uint32_t>((r[i] + (A.m - static_cast<std::uint32_t>(
                                                                 (s[i] * f) % A.m)) %
                                                          A.m) %
                                              A.m);
    };

    std::vector<std::vector<std::uint32_t>> active = std::move(rows);
    std::vector<std::vector<std::uint32_t>> pivot_rows;
    std::vector<int> pivot_vals;

    for (std::size_t col = 0; col < data_width; ++col) {
        int best = -1, best_val = A.c;
        for (std::size_t i = 0; i < active.size(); ++i) {
            if (active[i][col] == 0) continue;
            int v = A.valuation(active[i][col]);
            if (v < best_val) {
                best_val = v;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) continue;
        std::vector<std::uint32_t> piv = std::move(active[static_cast<std::size_t>(best)]);
        active.erase(active.begin() + best);
        std::uint64_t pk = 1;
        for (int i = 0; i < best_val; ++i) pk *= A.p;
        scale_row(piv, A.unit_inverse(static_cast<std::uint32_t>(piv[col] / pk)));
        // now piv[col] == p^best_val exactly
        for (auto& r : active) {
            if (r[col] == 0) continue;
            submul_row(r, piv, r[col] / pk);
        }
        if (best_val > 0) {
            std::vector<std::uint32_t> comp = piv;
            std::uint64_t f = 1;
            for (int i = 0; i < A.c - best_val; ++i) f *= A.p;
            scale_row(comp, f % A.m);
            active.push_back(std::move(comp));
        }
        pivot_rows.push_back(std::move(piv));
        pivot_vals.push_back(best_val);
    }

    SpanResult out;
    __uint128_t order = 1;
    for (int v : pivot_vals)
        for (int i = 0; i < A.c - v; ++i) {
            order *= A.p;
            if (order > ~std::uint64_t(0))
                throw BudgetExceeded("modular_span: subgroup order exceeds 64 bits");
        }
    out.order = static_cast<std::uint64_t>(order);

    if (want_kernel) {
        for (const auto& r : active) {
            bool zero_data = true;
            for (std::size_t i = 0; i < data_width && zero_data; ++i) zero_data = r[i] == 0;
            if (!zero_data) continue;  // cannot happen: every data column was swept
            std::vector<std::uint32_t> combo(r.begin() + static_cast<std::ptrdiff_t>(data_width),
                                             r.end());
            if (std::any_of(combo.begin(), combo.end(), [](std::uint32_t x) { return x != 0; }))
                out.kernel.push_back(std::move(combo));
        }
    }
    return out;
}

/// Digit coordinates of a ring element, lifted into Z_{p^c}.
struct DigitLift {
    std::vector<std::uint32_t> radix;
    std::vector<std::uint32_t> lift_factor;  // p^c / radix_i
    std::size_t width = 0;

    void append(Elem x, std::vector<std::uint32_t>& row) const {
        std::uint32_t v = x;
        for (std::size_t i = 0; i < radix.size(); ++i) {
            row.push_back((v % radix[i]) * lift_factor[i]);
            v /= radix[i];
        }
    }
};

std::optional<DigitLift> make_lift(const Ring& r, const ModArith& A) {
    auto rad = additive_radices(r.spec());
    if (!rad) return std::nullopt;
    DigitLift L;
    L.radix = *rad;
    L.width = L.radix.size();
    L.lift_factor.resize(L.width);
    for (std::size_t i = 0; i < L.width; ++i) {
        if (A.m % L.radix[i] != 0) return std::nullopt;
        L.lift_factor[i] = A.m / L.radix[i];
    }
    return L;
}

/// Additive digit generators: elements with one digit equal to 1.
std::vector<Elem> digit_generators(const DigitLift& L) {
    std::vector<Elem> out;
    std::uint64_t stride = 1;
    for (std::size_t i = 0; i < L.width; ++i) {
        out.push_back(static_cast<Elem>(stride));
        stride *= L.radix[i];
    }
    return out;
}

struct SpanContext {
    ModArith A;
    DigitLift lift;
    std::vector<Elem> gen_elems;   // digit generators of (R, +)
    std::vector<std::size_t> gen_degree;
    std::vector<Poly> gen_polys;   // gen_elems[g] * x^{gen_degree[g]}
};

/// Shared setup for the span-based paths: one generator polynomial per
/// (additive digit, degree < d).
SpanContext make_span_context(const RingHandle& base, std::size_t d) {
    auto pc = prime_power_split(base->characteristic());
    if (!pc)
        throw BudgetExceeded("span method needs prime-power characteristic, " + base->spec() +
                             " has " + std::to_string(base->characteristic()));
    SpanContext ctx;
    ctx.A = ModArith{pc->first, pc->second,
                     static_cast<std::uint32_t>(base->characteristic())};
    auto lift = make_lift(*base, ctx.A);
    if (!lift)
        throw BudgetExceeded("span method needs structural additive coordinates for " +
                             base->spec());
    ctx.lift = *lift;
    std::vector<Elem> digits = digit_generators(ctx.lift);
    for (std::size_t j = 0; j < d; ++j)
        for (Elem e : digits) {
            ctx.gen_elems.push_back(e);
            ctx.gen_degree.push_back(j);
            ctx.gen_polys.push_back(Poly::monomial(base, e, j));
        }
    return ctx;
}

std::vector<std::uint32_t> ft_row(const SpanContext& ctx, const Poly& g) {
    std::vector<std::uint32_t> row;
    const std::size_t n = g.ring->size();
    row.reserve(n * ctx.lift.width);
    for (std::size_t a = 0; a < n; ++a) ctx.lift.append(eval_right(g, static_cast<Elem>(a)), row);
    return row;
}

void append_lt_row(const SpanContext& ctx, const Poly& g, std::vector<std::uint32_t>& row) {
    const std::size_t n = g.ring->size();
    row.reserve(row.size() + n * n * ctx.lift.width);
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
            ctx.lift.append(lambda_eval(g, static_cast<Elem>(y), static_cast<Elem>(z)), row);
}

/// Integer-combination of the generator polynomials given by a kernel combo.
Poly combo_poly(const RingHandle& base, const SpanContext& ctx,
                const std::vector<std::uint32_t>& combo) {
    Poly acc = Poly::zero(base);
    for (std::size_t g = 0; g < combo.size(); ++g) {
        if (combo[g] == 0) continue;
        Elem coeff = base->zero();
        for (std::uint32_t i = 0; i < combo[g]; ++i) coeff = base->add(coeff, ctx.gen_elems[g]);
        acc = poly_add(acc, Poly::monomial(base, coeff, ctx.gen_degree[g]));
    }
    return acc;
}

}  // namespace

std::size_t dual_null_degree(const RingHandle& base) {
    ConstructOptions opt;
    RingHandle dual = construct_ring("dual:1:" + base->spec(), opt);
    return static_cast<std::size_t>(monic_central_null(dual).degree());
}

// ---------------------------------------------------------------------------
// Ideal statistics
// ---------------------------------------------------------------------------

IdealStats ideal_stats(const RingHandle& base, const Budget& budget, const std::string& method) {
    IdealStats stats;
    stats.spec = base->spec();
    const std::size_t n = base->size();
    const std::size_t d = dual_null_degree(base);
    stats.d = static_cast<int>(d);

    __uint128_t tot = 1;
    bool enumerable = true;
    for (std::size_t i = 0; i < d && enumerable; ++i) {
        tot *= n;
        enumerable = tot <= budget.tuples;
    }
    if (method == "enumerate" && !enumerable)
        throw BudgetExceeded("ideal_stats: |R|^d exceeds tuple budget on " + base->spec());
    if (method == "span") enumerable = false;

    if (enumerable) {
        stats.method = "enumerate";
        std::vector<Elem> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Elem>(i);
        PolyEnumerator en(base, std::vector<std::vector<Elem>>(d, all),
                          PolyEnumerator::FT | PolyEnumerator::LT);
        std::unordered_set<std::string> fts, pairs, null_lts;
        while (!en.done()) {
            fts.insert(pack_key(en.func_table()));
            pairs.insert(pack_key2(en.func_table(), en.lambda_tab()));
            if (en.ft_zero()) null_lts.insert(pack_key(en.lambda_tab()));
            en.advance();
        }
        stats.idx_null = fts.size();
        stats.idx_anull = pairs.size();
        stats.ratio = null_lts.size();
    } else {
        stats.method = "span";
        SpanContext ctx = make_span_context(base, d);
        const std::uint64_t width = static_cast<std::uint64_t>(n) * (1 + n) * ctx.lift.width;
        if ((ctx.gen_polys.size() + width) * width > budget.tuples * 64)
            throw BudgetExceeded("ideal_stats: elimination work exceeds tuple budget on " +
                                 base->spec());

        std::vector<std::vector<std::uint32_t>> ft_rows, pair_rows;
        ft_rows.reserve(ctx.gen_polys.size());
        pair_rows.reserve(ctx.gen_polys.size());
        for (const Poly& g : ctx.gen_polys) {
            std::vector<std::uint32_t> fr = ft_row(ctx, g);
            std::vector<std::uint32_t> pr = fr;
            append_lt_row(ctx, g, pr);
            ft_rows.push_back(std::move(fr));
            pair_rows.push_back(std::move(pr));
        }
        const std::size_t ft_width = n * ctx.lift.width;
        const std::size_t pair_width = ft_width + n * n * ctx.lift.width;

        SpanResult ftr = modular_span(std::move(ft_rows), ft_width, ctx.A, true);
        stats.idx_null = ftr.order;
        SpanResult pairr = modular_span(std::move(pair_rows), pair_width, ctx.A, false);
        stats.idx_anull = pairr.order;

        // ratio independently: lambda tables of the null-polynomial kernel
        std::vector<std::vector<std::uint32_t>> lt_rows;
        for (const auto& combo : ftr.kernel) {
            Poly h = combo_poly(base, ctx, combo);
            if (!is_null(h))
                throw Error("ideal_stats: kernel produced a non-null polynomial on " +
                            base->spec());
            std::vector<std::uint32_t> row;
            append_lt_row(ctx, h, row);
            lt_rows.push_back(std::move(row));
        }
        SpanResult ltr = modular_span(std::move(lt_rows), n * n * ctx.lift.width, ctx.A, false);
        stats.ratio = ltr.order;
    }

    stats.identity = stats.idx_anull == stats.idx_null * stats.ratio;
    return stats;
}

std::vector<Poly> null_generators(const RingHandle& base, const Budget& budget,
                                  std::size_t degree) {
    const std::size_t d = degree ? degree : dual_null_degree(base);
    SpanContext ctx = make_span_context(base, d);
    const std::uint64_t width = static_cast<std::uint64_t>(base->size()) * ctx.lift.width;
    if ((ctx.gen_polys.size() + width) * width > budget.tuples * 64)
        throw BudgetExceeded("null_generators: elimination work exceeds tuple budget on " +
                             base->spec());
    std::vector<std::vector<std::uint32_t>> ft_rows;
    ft_rows.reserve(ctx.gen_polys.size());
    for (const Poly& g : ctx.gen_polys) ft_rows.push_back(ft_row(ctx, g));
    SpanResult res = modular_span(std::move(ft_rows), base->size() * ctx.lift.width, ctx.A, true);
    std::vector<Poly> out;
    for (const auto& combo : res.kernel) {
        Poly h = combo_poly(base, ctx, combo);
        if (!is_null(h))
            throw Error("null_generators: kernel produced a non-null polynomial on " +
                        base->spec());
        if (!h.is_zero()) out.push_back(std::move(h));
    }
    return out;
}

DualFunCount count_polyfun_dual(const RingHandle& base, std::size_t k, const Budget& budget) {
    DualFunCount out;
    IdealStats stats = ideal_stats(base, budget);
    __uint128_t v = stats.idx_anull;
    for (std::size_t i = 0; i < k; ++i) {
        v *= stats.idx_null;
        if (v > ~std::uint64_t(0))
            throw BudgetExceeded("count_polyfun_dual: count exceeds 64 bits");
    }
    out.formula = static_cast<std::uint64_t>(v);

    ConstructOptions opt;
    opt.budget = budget;
    try {
        RingHandle dual = construct_ring("dual:" + std::to_string(k) + ":" + base->spec(), opt);
        out.span_oracle = count_polyfun_span(dual, budget);
        out.agree = *out.span_oracle == out.formula;
    } catch (const BudgetExceeded&) {
        out.span_oracle.reset();  // oracle skipped; formula stands alone
    }
    return out;
}

// ---------------------------------------------------------------------------
// Null decomposition
// ---------------------------------------------------------------------------

Report null_decomposition_check(const RingHandle& base, std::size_t k, int bound,
                                const std::string& mode, std::uint64_t seed,
                                const Budget& budget) {
    Report rep;
    rep.suite = "null-decomp";
    rep.spec = base->spec();
    rep.k = static_cast<int>(k);
    rep.seed = seed;

    ConstructOptions opt;
    opt.budget = budget;
    RingHandle dual = construct_ring("dual:" + std::to_string(k) + ":" + base->spec(), opt);
    const std::size_t n = base->size();

    __uint128_t tot = 1;
    for (int i = 0; i < bound * static_cast<int>(k + 1); ++i) {
        tot *= n;
        if (tot > budget.tuples) break;
    }
    bool exhaustive;
    if (mode == "exhaustive") {
        if (tot > budget.tuples)
            throw BudgetExceeded("null_decomposition_check: tuple budget exceeded");
        exhaustive = true;
    } else if (mode == "sampled") {
        exhaustive = false;
    } else {
        exhaustive = tot <= budget.tuples;
    }
    rep.mode = exhaustive ? "exhaustive" : "sampled";

    auto both_sides = [&](const std::vector<Poly>& comps) {
        Poly g = assemble_dual_poly(dual, comps);
        bool lhs = is_null(g);
        bool rhs = is_anull(comps[0]);
        for (std::size_t i = 1; i <= k && rhs; ++i) rhs = is_null(comps[i]);
        return std::make_pair(lhs, rhs);
    };
    auto describe = [&](const std::vector<Poly>& comps, bool lhs, bool rhs) {
        nlohmann::json parts = nlohmann::json::array();
        for (const Poly& p : comps) parts.push_back(poly_to_string(p));
        return nlohmann::json{
            {"components", parts}, {"null_on_dual", lhs}, {"componentwise", rhs}};
    };

    std::uint64_t checked = 0, mismatches = 0;
    nlohmann::json first_ce;

    if (exhaustive) {
        // odometer over all (k+1)*bound coefficients
        std::vector<Elem> digits(static_cast<std::size_t>(bound) * (k + 1), 0);
        bool done = false;
        while (!done) {
            std::vector<Poly> comps;
            comps.reserve(k + 1);
            for (std::size_t i = 0; i <= k; ++i) {
                std::vector<Elem> cs(digits.begin() + static_cast<std::ptrdiff_t>(i * bound),
                                     digits.begin() + static_cast<std::ptrdiff_t>((i + 1) * bound));
                comps.push_back(Poly::from_coeffs(base, std::move(cs)));
            }
            auto [lhs, rhs] = both_sides(comps);
            ++checked;
            if (lhs != rhs) {
                ++mismatches;
                if (first_ce.is_null()) first_ce = describe(comps, lhs, rhs);
            }
            done = true;
            for (auto& d : digits) {
                if (++d < n) {
                    done = false;
                    break;
                }
                d = 0;
            }
        }
    } else {
        std::mt19937_64 rng(seed);
        // each draw evaluates the assembled polynomial across the dual ring,
        // so scale the sample count down for large duals
        const std::uint64_t per_draw = dual->size() * 8;
        const std::uint64_t samples = std::max<std::uint64_t>(
            500, std::min<std::uint64_t>(10'000, budget.tuples / std::max<std::uint64_t>(1, per_draw)));
        for (std::uint64_t s = 0; s < samples; ++s) {
            std::vector<Poly> comps;
            comps.reserve(k + 1);
            for (std::size_t i = 0; i <= k; ++i) {
                std::vector<Elem> cs(static_cast<std::size_t>(bound));
                for (auto& ce : cs) ce = static_cast<Elem>(rng() % n);
                comps.push_back(Poly::from_coeffs(base, std::move(cs)));
            }
            auto [lhs, rhs] = both_sides(comps);
            ++checked;
            if (lhs != rhs) {
                ++mismatches;
                if (first_ce.is_null()) first_ce = describe(comps, lhs, rhs);
            }
        }
    }

    rep.add("null_iff_componentwise", mismatches == 0, first_ce);
    rep.counts["pairs_checked"] = checked;
    rep.counts["mismatches"] = mismatches;
    return rep;
}

}  // namespace ringlab
