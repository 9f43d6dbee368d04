#include "ringlab/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ringlab {
namespace {

void require_same(const Poly& f, const Poly& g) {
    if (!f.ring->same_ring(*g.ring))
        throw WrongRing("polynomials over different rings: " + f.ring->spec() + " vs " +
                        g.ring->spec());
}

}  // namespace

void Poly::normalize() {
    while (!c.empty() && c.back() == ring->zero()) c.pop_back();
}

Poly Poly::zero(RingHandle r) { return Poly{std::move(r), {}}; }

Poly Poly::from_coeffs(RingHandle r, std::vector<Elem> coeffs) {
    Poly f{std::move(r), std::move(coeffs)};
    for (Elem e : f.c)
        if (e >= f.ring->size()) throw WrongRing("coefficient index out of range");
    f.normalize();
    return f;
}

Poly Poly::monomial(RingHandle r, Elem coeff, std::size_t j) {
    Poly f{std::move(r), {}};
    if (coeff != f.ring->zero()) {
        f.c.assign(j + 1, f.ring->zero());
        f.c[j] = coeff;
    }
    return f;
}

Poly Poly::x(RingHandle r) {
    Elem one = r->one();
    return monomial(std::move(r), one, 1);
}

Poly Poly::constant(RingHandle r, Elem coeff) { return monomial(std::move(r), coeff, 0); }

Poly poly_add(const Poly& f, const Poly& g) {
    require_same(f, g);
    Poly out{f.ring, {}};
    out.c.resize(std::max(f.c.size(), g.c.size()), f.ring->zero());
    for (std::size_t j = 0; j < out.c.size(); ++j) out.c[j] = f.ring->add(f.coeff(j), g.coeff(j));
    out.normalize();
    return out;
}

Poly poly_sub(const Poly& f, const Poly& g) {
    require_same(f, g);
    Poly out{f.ring, {}};
    out.c.resize(std::max(f.c.size(), g.c.size()), f.ring->zero());
    for (std::size_t j = 0; j < out.c.size(); ++j) out.c[j] = f.ring->sub(f.coeff(j), g.coeff(j));
    out.normalize();
    return out;
}

Poly poly_mul(const Poly& f, const Poly& g) {
    require_same(f, g);
    if (f.is_zero() || g.is_zero()) return Poly::zero(f.ring);
    const Ring& R = *f.ring;
    Poly out{f.ring, std::vector<Elem>(f.c.size() + g.c.size() - 1, R.zero())};
    for (std::size_t j = 0; j < f.c.size(); ++j)
        for (std::size_t i = 0; i < g.c.size(); ++i)
            out.c[i + j] = R.add(out.c[i + j], R.mul(f.c[j], g.c[i]));
    out.normalize();
    return out;
}

Poly scale_left(Elem s, const Poly& f) {
    Poly out{f.ring, f.c};
    for (Elem& e : out.c) e = f.ring->mul(s, e);
    out.normalize();
    return out;
}

Elem eval_right(const Poly& f, Elem a) {
    const Ring& R = *f.ring;
    if (a >= R.size()) throw WrongRing("evaluation point out of range");
    Elem acc = R.zero();
    for (std::size_t j = f.c.size(); j-- > 0;) acc = R.add(R.mul(acc, a), f.c[j]);
    return acc;
}

Poly formal_derivative(const Poly& f) {
    const Ring& R = *f.ring;
    Poly out{f.ring, {}};
    if (f.c.size() < 2) return out;
    out.c.assign(f.c.size() - 1, R.zero());
    for (std::size_t j = 1; j < f.c.size(); ++j) {
        Elem m = R.zero();
        for (std::size_t i = 0; i < j; ++i) m = R.add(m, f.c[j]);
        out.c[j - 1] = m;
    }
    out.normalize();
    return out;
}

Elem power_mix(const Ring& r, Elem y, Elem z, std::size_t j) {
    if (j == 0) return r.zero();
    Elem m = z;        // m_1
    Elem ypow = r.one();
    for (std::size_t t = 1; t < j; ++t) {
        ypow = r.mul(ypow, y);                      // y^t
        m = r.add(r.mul(y, m), r.mul(z, ypow));     // m_{t+1} = y m_t + z y^t
    }
    return m;
}

Elem lambda_eval(const Poly& f, Elem y, Elem z) {
    const Ring& R = *f.ring;
    if (y >= R.size() || z >= R.size()) throw WrongRing("lambda argument out of range");
    if (f.c.size() < 2) return R.zero();
    Elem acc = R.zero();
    Elem m = z;          // m_1
    Elem ypow = R.one();
    for (std::size_t j = 1; j < f.c.size(); ++j) {
        acc = R.add(acc, R.mul(f.c[j], m));
        ypow = R.mul(ypow, y);                      // y^j
        m = R.add(R.mul(y, m), R.mul(z, ypow));     // m_{j+1}
    }
    return acc;
}

Elem lambda_eval_double_sum(const Poly& f, Elem y, Elem z) {
    const Ring& R = *f.ring;
    // y^0..y^deg once, then sum c_j sum_{r=1}^{j} y^{r-1} z y^{j-r} literally
    std::vector<Elem> ypow(f.c.size() + 1, R.one());
    for (std::size_t t = 1; t < ypow.size(); ++t) ypow[t] = R.mul(ypow[t - 1], y);
    Elem acc = R.zero();
    for (std::size_t j = 1; j < f.c.size(); ++j) {
        Elem inner = R.zero();
        for (std::size_t r = 1; r <= j; ++r)
            inner = R.add(inner, R.mul(R.mul(ypow[r - 1], z), ypow[j - r]));
        acc = R.add(acc, R.mul(f.c[j], inner));
    }
    return acc;
}

std::vector<Elem> lambda_table(const Poly& f, const Budget& budget) {
    const Ring& R = *f.ring;
    const std::size_t n = R.size();
    if (std::uint64_t(n) * n > budget.tables * 64)
        throw BudgetExceeded("lambda_table: " + std::to_string(n) + "^2 cells over budget");
    std::vector<Elem> out(n * n);
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
            out[y * n + z] = lambda_eval(f, static_cast<Elem>(y), static_cast<Elem>(z));
    return out;
}

DivMod right_divmod(const Poly& f, const Poly& g) {
    require_same(f, g);
    if (!g.monic()) throw NotMonic("right_divmod: divisor must be monic");
    const Ring& R = *f.ring;
    Poly rem = f;
    Poly quot{f.ring, {}};
    const std::size_t dg = g.c.size() - 1;
    if (rem.c.size() >= g.c.size()) {
        quot.c.assign(rem.c.size() - dg, R.zero());
        while (rem.c.size() >= g.c.size()) {
            const std::size_t shift = rem.c.size() - 1 - dg;
            const Elem lead = rem.c.back();
            quot.c[shift] = lead;
            // rem -= (lead x^shift) * g ; product coefficients are lead*g_i
            for (std::size_t i = 0; i < g.c.size(); ++i)
                rem.c[shift + i] = R.sub(rem.c[shift + i], R.mul(lead, g.c[i]));
            rem.normalize();
            if (rem.c.size() > shift + dg) {
                // leading term did not cancel; cannot happen for monic g
                throw NotMonic("right_divmod: leading term failed to cancel");
            }
        }
    }
    quot.normalize();
    return {std::move(quot), std::move(rem)};
}

Preperiod power_preperiod(const Ring& r, Elem a) {
    // indices of a^1, a^2, ... until the first repeat
    std::vector<int> first_seen(r.size(), 0);
    std::vector<Elem> seq;
    Elem acc = a;
    for (int exp = 1;; ++exp) {
        if (first_seen[acc] != 0) {
            int tail = first_seen[acc];
            return {tail, exp - tail};
        }
        first_seen[acc] = exp;
        seq.push_back(acc);
        acc = r.mul(acc, a);
    }
}

Poly monic_central_null(const RingHandle& r) {
    int max_tail = 1;
    std::uint64_t lcm_period = 1;
    for (std::size_t a = 0; a < r->size(); ++a) {
        Preperiod pp = power_preperiod(*r, static_cast<Elem>(a));
        max_tail = std::max(max_tail, pp.tail);
        lcm_period = std::lcm(lcm_period, static_cast<std::uint64_t>(pp.period));
        if (lcm_period + max_tail > 60'000)
            throw BudgetExceeded("monic_central_null: degree blow-up on " + r->spec());
    }
    const std::size_t M = static_cast<std::size_t>(max_tail);
    const std::size_t L = static_cast<std::size_t>(lcm_period);
    Poly f{r, std::vector<Elem>(M + L + 1, r->zero())};
    f.c[M + L] = r->one();
    f.c[M] = r->neg(r->one());
    // postcondition: vanishes everywhere (x^{M+L} = x^M holds elementwise)
    for (std::size_t a = 0; a < r->size(); ++a)
        if (eval_right(f, static_cast<Elem>(a)) != r->zero())
            throw Error("monic_central_null: constructed polynomial not null on " + r->spec());
    return f;
}

Elem dual_eval_via_lemma(const Ring& dual, const std::vector<Poly>& comps, Elem a,
                         const std::vector<Elem>& bs) {
    const DualRing* d = as_dual(dual);
    if (!d) throw WrongRing("dual_eval_via_lemma: not a dual ring");
    if (comps.empty() || comps.size() != d->k() + 1 || bs.size() != d->k())
        throw WrongRing("dual_eval_via_lemma: expected k+1 components and k nilpotent parts");
    const Ring& B = *d->base();
    const Poly& f0 = comps[0];
    std::vector<Elem> out(d->k());
    for (std::size_t i = 0; i < d->k(); ++i)
        out[i] = B.add(lambda_eval(f0, a, bs[i]), eval_right(comps[i + 1], a));
    return d->encode(eval_right(f0, a), out);
}

Poly embed_into_dual(const RingHandle& dual, const Poly& f) {
    const DualRing* d = as_dual(*dual);
    if (!d) throw WrongRing("embed_into_dual: not a dual ring");
    if (!f.ring->same_ring(*d->base())) throw WrongRing("embed_into_dual: base mismatch");
    // base indices 0..|R|-1 are exactly the pure elements of the dual ring
    return Poly{dual, f.c};
}

Poly assemble_dual_poly(const RingHandle& dual, const std::vector<Poly>& comps) {
    const DualRing* d = as_dual(*dual);
    if (!d) throw WrongRing("assemble_dual_poly: not a dual ring");
    if (comps.size() != d->k() + 1) throw WrongRing("assemble_dual_poly: need k+1 components");
    std::size_t len = 0;
    for (const Poly& p : comps) {
        if (!p.ring->same_ring(*d->base()))
            throw WrongRing("assemble_dual_poly: component over wrong ring");
        len = std::max(len, p.c.size());
    }
    Poly out{dual, std::vector<Elem>(len, d->zero())};
    std::vector<Elem> rest(d->k());
    for (std::size_t j = 0; j < len; ++j) {
        for (std::size_t i = 0; i < d->k(); ++i) rest[i] = comps[i + 1].coeff(j);
        out.c[j] = d->encode(comps[0].coeff(j), rest);
    }
    out.normalize();
    return out;
}

std::vector<Poly> split_dual_poly(const RingHandle& dual, const Poly& f) {
    const DualRing* d = as_dual(*dual);
    if (!d) throw WrongRing("split_dual_poly: not a dual ring");
    if (!f.ring->same_ring(*dual)) throw WrongRing("split_dual_poly: polynomial over wrong ring");
    std::vector<Poly> out(d->k() + 1, Poly{d->base(), {}});
    for (auto& p : out) p.c.assign(f.c.size(), d->base()->zero());
    for (std::size_t j = 0; j < f.c.size(); ++j) {
        std::vector<Elem> parts = d->decode(f.c[j]);
        for (std::size_t i = 0; i <= d->k(); ++i) out[i].c[j] = parts[i];
    }
    for (auto& p : out) p.normalize();
    return out;
}

std::vector<Poly> canonical_reduce(const RingHandle& dual, const std::vector<Poly>& comps) {
    const DualRing* d = as_dual(*dual);
    if (!d) throw WrongRing("canonical_reduce: not a dual ring");
    if (comps.size() != d->k() + 1) throw WrongRing("canonical_reduce: need k+1 components");

    // the dual ring's own monic central null; its coefficients are 0 and -1,
    // both embedded base elements, so it restricts to a base polynomial
    Poly dual_null = monic_central_null(dual);
    Poly base_bound{d->base(), {}};
    base_bound.c.reserve(dual_null.c.size());
    for (Elem e : dual_null.c) {
        std::vector<Elem> parts = d->decode(e);
        for (std::size_t i = 1; i < parts.size(); ++i)
            if (parts[i] != d->base()->zero())
                throw Error("canonical_reduce: dual null polynomial has non-pure coefficient");
        base_bound.c.push_back(parts[0]);
    }

    Poly base_null = monic_central_null(d->base());
    std::vector<Poly> out;
    out.reserve(comps.size());
    out.push_back(right_divmod(comps[0], base_bound).rem);
    for (std::size_t i = 1; i < comps.size(); ++i)
        out.push_back(right_divmod(comps[i], base_null).rem);
    return out;
}

Poly parse_poly(RingHandle r, const std::string& text) {
    std::vector<Elem> coeffs;
    if (!text.empty()) {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("bad polynomial coefficient '" + tok + "'");
            unsigned long v = std::stoul(tok);
            if (v >= r->size())
                throw ParseError("coefficient index " + tok + " out of range for " + r->spec());
            coeffs.push_back(static_cast<Elem>(v));
        }
    }
    return Poly::from_coeffs(std::move(r), std::move(coeffs));
}

std::string poly_to_string(const Poly& f) {
    std::string out;
    for (std::size_t j = 0; j < f.c.size(); ++j) {
        if (j) out += ",";
        out += std::to_string(f.c[j]);
    }
    return out;
}

}  // namespace ringlab
