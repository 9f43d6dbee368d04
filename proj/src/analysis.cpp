#include "ringlab/analysis.hpp"

#include <algorithm>
#include <random>

namespace ringlab {
namespace {

/// Additive subgroup generated by `gens`, as a membership bitmap.
/// Grows the span one effective generator at a time: span + <g> is the union
/// of span shifted by each multiple of g, so cost is |span| * ord(g) per
/// generator that actually enlarges the span.
std::vector<std::uint8_t> additive_closure(const Ring& r, const std::vector<Elem>& gens) {
    const std::size_t n = r.size();
    std::vector<std::uint8_t> in(n, 0);
    std::vector<Elem> members{r.zero()};
    in[r.zero()] = 1;
    for (Elem g : gens) {
        if (in[g]) continue;
        std::vector<Elem> grown = members;
        Elem m = g;
        while (m != r.zero()) {
            for (Elem s : members) {
                Elem x = r.add(s, m);
                if (!in[x]) {
                    in[x] = 1;
                    grown.push_back(x);
                }
            }
            m = r.add(m, g);
        }
        members = std::move(grown);
    }
    return in;
}

std::vector<Elem> mask_to_set(const std::vector<std::uint8_t>& mask) {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) out.push_back(static_cast<Elem>(i));
    return out;
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

std::vector<std::uint8_t> unit_mask(const Ring& r) {
    const std::size_t n = r.size();
    std::vector<std::uint8_t> mask(n, 0);
    if (const DualRing* d = as_dual(r)) {
        // unit iff the pure part is a unit in the base; the dual-structure
        // suite re-verifies this criterion against direct inverse search
        std::vector<std::uint8_t> base_mask = unit_mask(*d->base());
        const std::size_t bn = d->base()->size();
        for (std::size_t x = 0; x < n; ++x) mask[x] = base_mask[x % bn];
        return mask;
    }
    const Elem one = r.one();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (r.mul(static_cast<Elem>(a), static_cast<Elem>(b)) == one &&
                r.mul(static_cast<Elem>(b), static_cast<Elem>(a)) == one) {
                mask[a] = 1;
                break;
            }
    return mask;
}

std::vector<Elem> unit_set(const Ring& r) { return mask_to_set(unit_mask(r)); }

Elem inverse(const Ring& r, Elem a) {
    const Elem one = r.one();
    for (std::size_t b = 0; b < r.size(); ++b)
        if (r.mul(a, static_cast<Elem>(b)) == one && r.mul(static_cast<Elem>(b), a) == one)
            return static_cast<Elem>(b);
    throw NotAUnit("element " + std::to_string(a) + " has no two-sided inverse in " + r.spec());
}

std::vector<Elem> center(const Ring& r) {
    const std::size_t n = r.size();
    std::vector<Elem> out;
    for (std::size_t c = 0; c < n; ++c) {
        bool central = true;
        for (std::size_t a = 0; a < n && central; ++a)
            central = r.mul(static_cast<Elem>(c), static_cast<Elem>(a)) ==
                      r.mul(static_cast<Elem>(a), static_cast<Elem>(c));
        if (central) out.push_back(static_cast<Elem>(c));
    }
    return out;
}

std::vector<Elem> jacobson_radical(const Ring& r, const Budget& budget) {
    const std::size_t n = r.size();
    std::vector<std::uint8_t> units = unit_mask(r);
    const Elem one = r.one();
    std::uint64_t ops = 0;
    std::vector<Elem> out;
    // x lies in the radical iff 1 - ax is left invertible for every a, and in
    // a finite ring left invertible elements are units.
    for (std::size_t x = 0; x < n; ++x) {
        bool in_radical = true;
        for (std::size_t a = 0; a < n; ++a) {
            if (!units[r.sub(one, r.mul(static_cast<Elem>(a), static_cast<Elem>(x)))]) {
                in_radical = false;
                break;
            }
        }
        ops += n;
        if (ops > budget.tuples)
            throw BudgetExceeded("jacobson_radical: " + r.spec() + " exceeds tuple budget");
        if (in_radical) out.push_back(static_cast<Elem>(x));
    }
    return out;
}

std::optional<int> nilpotency_index(const Ring& r, const std::vector<Elem>& ideal) {
    std::vector<Elem> first = mask_to_set(additive_closure(r, ideal));
    std::vector<Elem> current = first;
    auto is_zero = [&](const std::vector<Elem>& s) {
        return s.size() == 1 && s[0] == r.zero();
    };
    for (int m = 1;; ++m) {
        if (is_zero(current)) return m;
        std::vector<Elem> products;
        for (Elem x : current)
            for (Elem g : first) products.push_back(r.mul(x, g));
        std::sort(products.begin(), products.end());
        products.erase(std::unique(products.begin(), products.end()), products.end());
        std::vector<Elem> next = mask_to_set(additive_closure(r, products));
        if (next.size() == current.size() && !is_zero(next)) return std::nullopt;
        current = std::move(next);
    }
}

ChainInfo chain_analysis(const Ring& r) {
    ChainInfo info;
    const std::size_t n = r.size();
    std::vector<std::uint8_t> units = unit_mask(r);
    std::vector<Elem> M;
    std::vector<std::uint8_t> in_M(n, 0);
    for (std::size_t x = 0; x < n; ++x)
        if (!units[x]) {
            M.push_back(static_cast<Elem>(x));
            in_M[x] = 1;
        }

    if (auto pc = prime_power_split(r.characteristic())) {
        info.p = pc->first;
        info.c = pc->second;
    }

    // local: non-units closed under addition and two-sided absorption
    bool local = true;
    for (std::size_t i = 0; i < M.size() && local; ++i)
        for (std::size_t j = 0; j < M.size(); ++j)
            if (!in_M[r.add(M[i], M[j])]) {
                local = false;
                break;
            }
    for (std::size_t i = 0; i < M.size() && local; ++i)
        for (std::size_t a = 0; a < n; ++a)
            if (!in_M[r.mul(M[i], static_cast<Elem>(a))] ||
                !in_M[r.mul(static_cast<Elem>(a), M[i])]) {
                local = false;
                break;
            }
    info.is_local = local;
    if (!local) return info;
    info.max_ideal = M;
    info.q = n / M.size();

    // chain: some t in M with tR = Rt = M
    for (Elem t : M) {
        std::vector<std::uint8_t> tR(n, 0), Rt(n, 0);
        std::size_t ctR = 0, cRt = 0;
        for (std::size_t a = 0; a < n; ++a) {
            Elem x = r.mul(t, static_cast<Elem>(a));
            Elem y = r.mul(static_cast<Elem>(a), t);
            if (!tR[x]) { tR[x] = 1; ++ctR; }
            if (!Rt[y]) { Rt[y] = 1; ++cRt; }
        }
        if (ctR != M.size() || cRt != M.size()) continue;
        bool match = true;
        for (Elem m : M)
            if (!tR[m] || !Rt[m]) {
                match = false;
                break;
            }
        if (match) {
            info.is_chain = true;
            info.t = t;
            break;
        }
    }
    if (!info.is_chain) return info;

    // N: minimal with M^N = {0}; powers are product sets (no span needed for
    // chain rings, where M^i = t^i R is already additively closed)
    std::vector<Elem> power = M;
    info.N = 1;
    while (!(power.size() == 1 && power[0] == r.zero())) {
        std::vector<Elem> next;
        for (Elem x : power)
            for (Elem m : M) next.push_back(r.mul(x, m));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        power = std::move(next);
        ++info.N;
    }

    // e: valuation of p*1 in the M-adic filtration; absent when p*1 = 0
    if (info.p != 0 && info.c > 1) {
        Elem p_elem = r.zero();
        for (std::uint64_t i = 0; i < info.p; ++i) p_elem = r.add(p_elem, r.one());
        if (p_elem != r.zero()) {
            auto powers = ideal_powers(r, info);
            for (int i = info.N; i >= 0; --i) {
                const auto& Mi = powers[static_cast<std::size_t>(i)];
                if (std::binary_search(Mi.begin(), Mi.end(), p_elem)) {
                    info.e = i;
                    break;
                }
            }
        }
    }
    return info;
}

std::vector<std::vector<Elem>> ideal_powers(const Ring& r, const ChainInfo& info) {
    if (!info.is_chain) throw NotAChainRing("ideal_powers: " + r.spec() + " is not a chain ring");
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> all(r.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Elem>(i);
    out.push_back(std::move(all));
    std::vector<Elem> power = info.max_ideal;
    std::sort(power.begin(), power.end());
    for (int i = 1; i <= info.N; ++i) {
        out.push_back(power);
        std::vector<Elem> next;
        for (Elem x : power)
            for (Elem m : info.max_ideal) next.push_back(r.mul(x, m));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        power = std::move(next);
    }
    return out;  // out[i] = M^i, i = 0..N
}

AdditiveOrder additive_order(const Ring& r, Elem a, const ChainInfo& info) {
    AdditiveOrder result;
    Elem acc = a;
    result.order = 1;
    while (acc != r.zero()) {
        acc = r.add(acc, a);
        ++result.order;
    }
    if (info.is_chain && info.e) {
        auto powers = ideal_powers(r, info);
        int i = 0;
        for (int j = info.N; j >= 0; --j)
            if (std::binary_search(powers[static_cast<std::size_t>(j)].begin(),
                                   powers[static_cast<std::size_t>(j)].end(), a)) {
                i = j;
                break;
            }
        std::uint64_t exponent =
            (static_cast<std::uint64_t>(info.N - i) + *info.e - 1) / *info.e;
        std::uint64_t value = 1;
        for (std::uint64_t j = 0; j < exponent; ++j) value *= info.p;
        result.formula = value;
        result.agree = result.order == value;
    }
    return result;
}

bool sum_of_units_reachable(const Ring& r) {
    std::vector<std::uint8_t> span = additive_closure(r, unit_set(r));
    return std::all_of(span.begin(), span.end(), [](std::uint8_t b) { return b != 0; });
}

SemiCommutativity semicommutativity_check(const Ring& r, const Budget& budget,
                                          std::uint64_t seed) {
    SemiCommutativity out;
    const std::size_t n = r.size();
    const Elem zero = r.zero();
    auto check_pair = [&](Elem a, Elem b) {
        if (r.mul(a, b) != zero) return true;
        for (std::size_t x = 0; x < n; ++x)
            if (r.mul(r.mul(a, static_cast<Elem>(x)), b) != zero) {
                out.holds = false;
                out.witness = std::array<Elem, 3>{a, b, static_cast<Elem>(x)};
                return false;
            }
        return true;
    };
    if (n * n <= budget.tuples) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (!check_pair(static_cast<Elem>(a), static_cast<Elem>(b))) return out;
        return out;
    }
    out.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uint64_t draws = budget.tuples / std::max<std::size_t>(n, 1);
    for (std::uint64_t i = 0; i < draws; ++i) {
        Elem a = static_cast<Elem>(rng() % n);
        Elem b = static_cast<Elem>(rng() % n);
        if (!check_pair(a, b)) return out;
    }
    return out;
}

Report validate_axioms(const RingHandle& r, const std::string& mode, std::uint64_t seed,
                       std::uint64_t samples) {
    Report rep;
    rep.suite = "axioms";
    rep.spec = r->spec();
    rep.k = 0;
    rep.seed = seed;
    const std::size_t n = r->size();
    const std::uint64_t triples = std::uint64_t(n) * n * n;
    bool exhaustive;
    if (mode == "exhaustive") {
        if (triples > 100'000'000)
            throw BudgetExceeded("validate_axioms: exhaustive mode needs size^3 <= 1e8");
        exhaustive = true;
    } else if (mode == "sampled") {
        exhaustive = false;
    } else {
        exhaustive = triples <= 100'000'000;
    }
    rep.mode = exhaustive ? "exhaustive" : "sampled";

    const Ring& R = *r;
    auto fail3 = [](Elem a, Elem b, Elem c) {
        return nlohmann::json{{"a", a}, {"b", b}, {"c", c}};
    };

    // unary/constant axioms are always exhaustive (cost O(n))
    rep.add("zero_ne_one", R.zero() != R.one());
    {
        bool ok = true;
        nlohmann::json ce;
        for (std::size_t a = 0; a < n && ok; ++a)
            if (R.add(static_cast<Elem>(a), R.zero()) != a) {
                ok = false;
                ce = nlohmann::json{{"a", a}};
            }
        rep.add("add_zero", ok, ce);
    }
    {
        bool ok = true;
        nlohmann::json ce;
        for (std::size_t a = 0; a < n && ok; ++a)
            if (R.add(static_cast<Elem>(a), R.neg(static_cast<Elem>(a))) != R.zero()) {
                ok = false;
                ce = nlohmann::json{{"a", a}};
            }
        rep.add("add_neg", ok, ce);
    }
    {
        bool ok = true;
        nlohmann::json ce;
        for (std::size_t a = 0; a < n && ok; ++a)
            if (R.mul(static_cast<Elem>(a), R.one()) != a ||
                R.mul(R.one(), static_cast<Elem>(a)) != a) {
                ok = false;
                ce = nlohmann::json{{"a", a}};
            }
        rep.add("mul_one", ok, ce);
    }

    struct Triple {
        const char* name;
        bool (*check)(const Ring&, Elem, Elem, Elem);
    };
    static const Triple triple_axioms[] = {
        {"add_assoc",
         [](const Ring& g, Elem a, Elem b, Elem c) {
             return g.add(g.add(a, b), c) == g.add(a, g.add(b, c));
         }},
        {"add_comm",
         [](const Ring& g, Elem a, Elem b, Elem) { return g.add(a, b) == g.add(b, a); }},
        {"mul_assoc",
         [](const Ring& g, Elem a, Elem b, Elem c) {
             return g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
         }},
        {"left_distrib",
         [](const Ring& g, Elem a, Elem b, Elem c) {
             return g.mul(a, g.add(b, c)) == g.add(g.mul(a, b), g.mul(a, c));
         }},
        {"right_distrib",
         [](const Ring& g, Elem a, Elem b, Elem c) {
             return g.mul(g.add(a, b), c) == g.add(g.mul(a, c), g.mul(b, c));
         }},
    };

    std::uint64_t checked = 0;
    for (const Triple& ax : triple_axioms) {
        bool ok = true;
        nlohmann::json ce;
        if (exhaustive) {
            for (std::size_t a = 0; a < n && ok; ++a)
                for (std::size_t b = 0; b < n && ok; ++b)
                    for (std::size_t c = 0; c < n; ++c) {
                        ++checked;
                        if (!ax.check(R, static_cast<Elem>(a), static_cast<Elem>(b),
                                      static_cast<Elem>(c))) {
                            ok = false;
                            ce = fail3(static_cast<Elem>(a), static_cast<Elem>(b),
                                       static_cast<Elem>(c));
                            break;
                        }
                    }
        } else {
            std::mt19937_64 rng(seed);
            for (std::uint64_t i = 0; i < samples; ++i) {
                Elem a = static_cast<Elem>(rng() % n);
                Elem b = static_cast<Elem>(rng() % n);
                Elem c = static_cast<Elem>(rng() % n);
                ++checked;
                if (!ax.check(R, a, b, c)) {
                    ok = false;
                    ce = fail3(a, b, c);
                    break;
                }
            }
        }
        rep.add(ax.name, ok, ce);
    }

    // declared flags must match reality
    {
        bool ok = true;
        nlohmann::json ce;
        if (R.commutative()) {
            for (std::size_t a = 0; a < n && ok; ++a)
                for (std::size_t b = a + 1; b < n; ++b)
                    if (R.mul(static_cast<Elem>(a), static_cast<Elem>(b)) !=
                        R.mul(static_cast<Elem>(b), static_cast<Elem>(a))) {
                        ok = false;
                        ce = nlohmann::json{{"a", a}, {"b", b}};
                        break;
                    }
        } else {
            ok = false;
            for (std::size_t a = 0; a < n && !ok; ++a)
                for (std::size_t b = a + 1; b < n; ++b)
                    if (R.mul(static_cast<Elem>(a), static_cast<Elem>(b)) !=
                        R.mul(static_cast<Elem>(b), static_cast<Elem>(a))) {
                        ok = true;
                        break;
                    }
            if (!ok) ce = nlohmann::json{{"reason", "flagged non-commutative but no witness"}};
        }
        rep.add("commutative_flag", ok, ce);
    }
    {
        Elem acc = R.one();
        std::uint64_t order = 1;
        while (acc != R.zero()) {
            acc = R.add(acc, R.one());
            ++order;
        }
        rep.add("char_is_order_of_one", order == R.characteristic(),
                order == R.characteristic()
                    ? nlohmann::json()
                    : nlohmann::json{{"order", order}, {"declared", R.characteristic()}});
    }

    rep.counts["triples_checked"] = checked;
    rep.counts["size"] = n;
    return rep;
}

RingHandle quotient_ring(const RingHandle& r, const std::vector<Elem>& ideal,
                         std::vector<Elem>* projection) {
    const std::size_t n = r->size();
    std::vector<std::uint8_t> in_ideal = additive_closure(*r, ideal);
    std::vector<Elem> members = mask_to_set(in_ideal);

    // coset representative = smallest member of x + I
    std::vector<Elem> rep_of(n);
    std::vector<Elem> reps;
    std::vector<std::uint8_t> seen(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        if (seen[x]) continue;
        Elem rep = static_cast<Elem>(x);
        for (Elem i : members) {
            Elem y = r->add(static_cast<Elem>(x), i);
            seen[y] = 1;
            rep_of[y] = rep;
        }
        reps.push_back(rep);
    }
    std::vector<std::size_t> index_of(n, 0);
    for (std::size_t i = 0; i < reps.size(); ++i) index_of[reps[i]] = i;

    const std::size_t m = reps.size();
    std::vector<Elem> add(m * m), mul(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            add[a * m + b] = static_cast<Elem>(index_of[rep_of[r->add(reps[a], reps[b])]]);
            mul[a * m + b] = static_cast<Elem>(index_of[rep_of[r->mul(reps[a], reps[b])]]);
        }
    if (projection) {
        projection->resize(n);
        for (std::size_t x = 0; x < n; ++x)
            (*projection)[x] = static_cast<Elem>(index_of[rep_of[x]]);
    }
    std::string spec = "quot:" + r->spec() + ":" + std::to_string(members.size());
    return make_table_ring(spec, m, std::move(add), std::move(mul));
}

}  // namespace ringlab
