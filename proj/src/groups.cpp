#include "ringlab/groups.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "ringlab/analysis.hpp"
#include "ringlab/perm.hpp"
#include "ringlab/poly.hpp"

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

RingHandle make_dual(const RingHandle& base, std::size_t k, const Budget& budget) {
    ConstructOptions opt;
    opt.budget = budget;
    std::uint64_t size = 1;
    for (std::size_t i = 0; i <= k; ++i) size *= base->size();
    opt.materialize = size <= 4096 ? 1 : 0;
    return construct_ring("dual:" + std::to_string(k) + ":" + base->spec(), opt);
}

std::vector<Elem> identity_table(std::size_t n) {
    std::vector<Elem> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<Elem>(i);
    return t;
}

std::vector<Elem> invert_table(const std::vector<Elem>& t) {
    std::vector<Elem> inv(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) inv[t[i]] = static_cast<Elem>(i);
    return inv;
}

std::vector<Elem> compose_raw(const std::vector<Elem>& F, const std::vector<Elem>& G) {
    std::vector<Elem> out(G.size());
    for (std::size_t i = 0; i < G.size(); ++i) out[i] = F[G[i]];
    return out;
}

/// Component decompositions of every dual-ring index.
std::vector<std::vector<Elem>> all_decomps(const DualRing& dd) {
    std::vector<std::vector<Elem>> out(dd.size());
    for (std::size_t x = 0; x < dd.size(); ++x) out[x] = dd.decode(static_cast<Elem>(x));
    return out;
}

/// Table of [f] on the dual ring from the base-level function and lambda
/// tables of a pure f: a + sum b_i beta_i -> f(a) + sum lambda(a,b_i) beta_i.
std::vector<Elem> pure_dual_table(const DualRing& dd, const std::vector<std::vector<Elem>>& dec,
                                  const std::vector<Elem>& ft, const std::vector<Elem>& lt) {
    const std::size_t n = dd.base()->size();
    std::vector<Elem> out(dd.size());
    std::vector<Elem> parts(dd.k());
    for (std::size_t x = 0; x < dd.size(); ++x) {
        const std::vector<Elem>& comps = dec[x];
        for (std::size_t i = 0; i < dd.k(); ++i)
            parts[i] = lt[std::size_t(comps[0]) * n + comps[i + 1]];
        out[x] = dd.encode(ft[comps[0]], parts);
    }
    return out;
}

/// The monomial generator tables (c x^j for all c, j < d) of base, with
/// function and lambda tables concatenated into one vector per generator.
std::vector<std::vector<Elem>> pair_table_generators(const RingHandle& base, std::size_t d) {
    const std::size_t n = base->size();
    std::vector<std::vector<Elem>> gens;
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t c = 1; c < n; ++c) {
            Poly g = Poly::monomial(base, static_cast<Elem>(c), j);
            std::vector<Elem> row(n + n * n);
            for (std::size_t a = 0; a < n; ++a) row[a] = eval_right(g, static_cast<Elem>(a));
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    row[n + y * n + z] =
                        lambda_eval(g, static_cast<Elem>(y), static_cast<Elem>(z));
            gens.push_back(std::move(row));
        }
    return gens;
}

bool rows_bijective_at(const std::vector<Elem>& lt, std::size_t n) {
    std::vector<std::uint8_t> seen(n);
    for (std::size_t y = 0; y < n; ++y) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t z = 0; z < n; ++z) {
            Elem v = lt[y * n + z];
            if (seen[v]) return false;
            seen[v] = 1;
        }
    }
    return true;
}

/// Distinct (function table, lambda table) pairs of polynomials of degree
/// < d1 over base: by direct enumeration when |R|^d1 fits the budget, else as
/// the additive span of the monomial pair tables. Each entry is ft ++ lt.
std::vector<std::vector<Elem>> all_pair_tables(const RingHandle& base, std::size_t d1,
                                               const Budget& budget) {
    const std::size_t n = base->size();
    __uint128_t steps = 1;
    bool enumerable = true;
    for (std::size_t i = 0; i < d1 && enumerable; ++i) {
        steps *= n;
        enumerable = steps <= budget.tuples;
    }
    std::vector<std::vector<Elem>> out;
    if (enumerable) {
        std::vector<Elem> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Elem>(i);
        PolyEnumerator en(base, std::vector<std::vector<Elem>>(d1, all),
                          PolyEnumerator::FT | PolyEnumerator::LT);
        std::unordered_set<std::string> seen;
        while (!en.done()) {
            if (seen.insert(pack_key2(en.func_table(), en.lambda_tab())).second) {
                std::vector<Elem> row = en.func_table();
                row.insert(row.end(), en.lambda_tab().begin(), en.lambda_tab().end());
                out.push_back(std::move(row));
            }
            en.advance();
        }
    } else {
        // span growth is capped so the member store stays a few MB
        Budget capped = budget;
        capped.tables = std::min<std::uint64_t>(capped.tables, 8'000'000 / (n + n * n));
        out = table_span(*base, pair_table_generators(base, d1), capped);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Composition and closure
// ---------------------------------------------------------------------------

FuncTable compose_tables(const FuncTable& F, const FuncTable& G) {
    if (!F.ring->same_ring(*G.ring)) throw WrongRing("compose_tables: different rings");
    FuncTable out;
    out.ring = F.ring;
    out.out = compose_raw(F.out, G.out);
    out.bijective = table_bijective(out.out);
    return out;
}

PermSet closure(const PermSet& generators, const Budget& budget) {
    if (generators.tables.empty()) throw Error("closure: no generators");
    PermSet out;
    out.ring = generators.ring;

    std::unordered_map<std::string, std::uint32_t> index;
    std::deque<std::uint32_t> work;
    auto insert = [&](std::vector<Elem> t, std::vector<std::uint32_t> w) {
        std::string key = pack_key(t);
        auto it = index.find(key);
        if (it != index.end()) return;
        std::uint32_t idx = static_cast<std::uint32_t>(out.tables.size());
        index.emplace(std::move(key), idx);
        out.tables.push_back(std::move(t));
        out.words.push_back(std::move(w));
        if (out.tables.size() > budget.tables)
            throw BudgetExceeded("closure: member count exceeds table budget");
        work.push_back(idx);
    };

    const bool have_words = generators.words.size() == generators.tables.size();
    for (std::size_t g = 0; g < generators.tables.size(); ++g)
        insert(generators.tables[g],
               have_words ? generators.words[g]
                          : std::vector<std::uint32_t>{static_cast<std::uint32_t>(g)});

    const std::size_t cells = generators.tables[0].size();
    std::uint64_t ops = 0;
    while (!work.empty()) {
        std::uint32_t i = work.front();
        work.pop_front();
        for (std::size_t j = 0; j < out.tables.size(); ++j) {
            ops += 2 * cells;
            if (ops > budget.tuples * 16)
                throw BudgetExceeded("closure: composition work exceeds budget");
            std::vector<std::uint32_t> wij(out.words[i]);
            wij.insert(wij.end(), out.words[j].begin(), out.words[j].end());
            insert(compose_raw(out.tables[i], out.tables[j]), std::move(wij));
            std::vector<std::uint32_t> wji(out.words[j]);
            wji.insert(wji.end(), out.words[i].begin(), out.words[i].end());
            insert(compose_raw(out.tables[j], out.tables[i]), std::move(wji));
        }
    }
    out.closed = true;

    bool all_bijective = true;
    for (const auto& t : generators.tables)
        if (!table_bijective(t)) {
            all_bijective = false;
            break;
        }
    if (all_bijective) {
        if (!index.count(pack_key(identity_table(cells))))
            throw Error("closure: bijective generators but identity not reached");
        for (const auto& t : out.tables)
            if (!index.count(pack_key(invert_table(t))))
                throw Error("closure: member without inverse");
    }
    return out;
}

// ---------------------------------------------------------------------------
// P_{x,k}
// ---------------------------------------------------------------------------

std::pair<PermSet, GroupReport> build_Pxk(const RingHandle& base, std::size_t k,
                                          std::uint64_t seed, const Budget& budget) {
    RingHandle dual = make_dual(base, k, budget);
    const DualRing* dd = as_dual(*dual);
    const std::size_t n = base->size();
    const std::size_t dn = dual->size();
    std::vector<std::vector<Elem>> dec = all_decomps(*dd);

    const std::size_t d2 = static_cast<std::size_t>(monic_central_null(base).degree());
    std::vector<std::vector<Elem>> tmp_gens;
    for (std::size_t j = 0; j < d2; ++j)
        for (std::size_t c = 0; c < n; ++c)
            tmp_gens.push_back(func_table(Poly::monomial(base, static_cast<Elem>(c), j)).out);
    std::vector<std::vector<Elem>> funs = table_span(*base, tmp_gens, budget);

    __uint128_t m128 = 1;
    for (std::size_t i = 0; i < k; ++i) {
        m128 *= funs.size();
        if (m128 > budget.tables)
            throw BudgetExceeded("build_Pxk: |PolFun|^k exceeds table budget");
    }
    const std::uint64_t expected = static_cast<std::uint64_t>(m128);

    PermSet set;
    set.ring = dual;
    std::unordered_set<std::string> keys;
    std::vector<std::vector<std::uint32_t>> tuples;  // the generating k-tuple per member

    std::vector<std::uint32_t> tup(k, 0);
    std::vector<Elem> parts(k);
    bool done = false;
    while (!done) {
        std::vector<Elem> t(dn);
        for (std::size_t x = 0; x < dn; ++x) {
            const std::vector<Elem>& comps = dec[x];
            for (std::size_t i = 0; i < k; ++i)
                parts[i] = base->add(comps[i + 1], funs[tup[i]][comps[0]]);
            t[x] = dd->encode(comps[0], parts);
        }
        if (keys.insert(pack_key(t)).second) {
            set.tables.push_back(std::move(t));
            tuples.push_back(tup);
        }
        done = true;
        for (auto& digit : tup) {
            if (++digit < funs.size()) {
                done = false;
                break;
            }
            digit = 0;
        }
    }

    GroupReport gr;
    gr.order = set.tables.size();
    gr.contains_identity = keys.count(pack_key(identity_table(dn))) > 0;

    const std::uint64_t m = gr.order;
    const bool exhaustive_pairs = m * m <= budget.tuples;
    std::mt19937_64 rng(seed);
    bool abelian = true, compat = true;
    auto check_pair = [&](std::size_t a, std::size_t b) {
        std::vector<Elem> ab = compose_raw(set.tables[a], set.tables[b]);
        if (ab != compose_raw(set.tables[b], set.tables[a])) abelian = false;
        // [f] after [g] must be the member generated by the summed tuple
        std::vector<Elem> sum(dn);
        for (std::size_t x = 0; x < dn; ++x) {
            const std::vector<Elem>& comps = dec[x];
            for (std::size_t i = 0; i < k; ++i)
                parts[i] = base->add(comps[i + 1],
                                     base->add(funs[tuples[a][i]][comps[0]],
                                               funs[tuples[b][i]][comps[0]]));
            sum[x] = dd->encode(comps[0], parts);
        }
        if (ab != sum) compat = false;
    };
    if (exhaustive_pairs) {
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a; b < m; ++b) check_pair(a, b);
    } else {
        for (int s = 0; s < 10'000; ++s) check_pair(rng() % m, rng() % m);
    }
    gr.abelian = abelian && compat;
    set.closed = abelian && compat && gr.order == expected;
    return {std::move(set), gr};
}

// ---------------------------------------------------------------------------
// P_R and its closure
// ---------------------------------------------------------------------------

PureSets build_PR(const RingHandle& base, std::size_t k, const Budget& budget) {
    RingHandle dual = make_dual(base, k, budget);
    const DualRing* dd = as_dual(*dual);
    const std::size_t n = base->size();
    std::vector<std::vector<Elem>> dec = all_decomps(*dd);
    const std::size_t d1 = dual_null_degree(base);

    PureSets out;
    out.raw.ring = dual;
    std::unordered_set<std::string> keys;
    for (const auto& pair : all_pair_tables(base, d1, budget)) {
        std::vector<Elem> ft(pair.begin(), pair.begin() + static_cast<std::ptrdiff_t>(n));
        std::vector<Elem> lt(pair.begin() + static_cast<std::ptrdiff_t>(n), pair.end());
        if (!table_bijective(ft) || !rows_bijective_at(lt, n)) continue;
        std::vector<Elem> t = pure_dual_table(*dd, dec, ft, lt);
        if (!table_bijective(t))
            throw Error("build_PR: criterion pair gave a non-bijective dual table on " +
                        base->spec());
        if (keys.insert(pack_key(t)).second) {
            out.raw.words.push_back({static_cast<std::uint32_t>(out.raw.tables.size())});
            out.raw.tables.push_back(std::move(t));
        }
    }
    if (out.raw.tables.empty()) throw Error("build_PR: no permutation polynomials found");
    out.closed = closure(out.raw, budget);
    return out;
}

// ---------------------------------------------------------------------------
// Stabilizers
// ---------------------------------------------------------------------------

StabResult stabilizer_Stk(const RingHandle& base, std::size_t k, const Budget& budget) {
    StabResult res;
    IdealStats stats = ideal_stats(base, budget);
    res.ratio = stats.ratio;

    const std::size_t n = base->size();
    RingHandle dual = make_dual(base, k, budget);
    const DualRing* dd = as_dual(*dual);
    std::vector<std::vector<Elem>> dec = all_decomps(*dd);

    // lambda tables of the null polynomials below deg mcn(dual), as the span
    // of the kernel generators' tables
    std::vector<Poly> gens = null_generators(base, budget);
    std::vector<std::vector<Elem>> lt_gens;
    for (const Poly& g : gens) {
        std::vector<Elem> lt(n * n);
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                lt[y * n + z] = lambda_eval(g, static_cast<Elem>(y), static_cast<Elem>(z));
        lt_gens.push_back(std::move(lt));
    }
    Budget capped = budget;
    capped.tables = std::min<std::uint64_t>(capped.tables, 8'000'000 / (n * n));
    std::vector<std::vector<Elem>> chis =
        lt_gens.empty()
            ? std::vector<std::vector<Elem>>{std::vector<Elem>(n * n, base->zero())}
            : table_span(*base, lt_gens, capped);

    res.set.ring = dual;
    std::unordered_set<std::string> keys;
    std::vector<std::uint8_t> seen(n);
    res.all_fix_base = true;
    for (std::size_t ci = 0; ci < chis.size(); ++ci) {
        const std::vector<Elem>& chi = chis[ci];
        // [x+h] permutes the dual ring iff every row b -> b + lambda_h(a,b)
        // permutes the base
        std::vector<Elem> pi(n * n);
        bool local = true;
        for (std::size_t a = 0; a < n && local; ++a) {
            std::fill(seen.begin(), seen.end(), 0);
            for (std::size_t b = 0; b < n; ++b) {
                Elem v = base->add(static_cast<Elem>(b), chi[a * n + b]);
                pi[a * n + b] = v;
                if (seen[v]) {
                    local = false;
                    break;
                }
                seen[v] = 1;
            }
        }
        if (!local) continue;
        std::vector<Elem> t(dual->size());
        std::vector<Elem> parts(k);
        for (std::size_t x = 0; x < dual->size(); ++x) {
            const std::vector<Elem>& comps = dec[x];
            for (std::size_t i = 0; i < k; ++i)
                parts[i] = pi[std::size_t(comps[0]) * n + comps[i + 1]];
            t[x] = dd->encode(comps[0], parts);
        }
        if (!table_bijective(t))
            throw Error("stabilizer_Stk: local rows but non-bijective dual table");
        for (std::size_t a = 0; a < n; ++a)
            if (t[a] != a) res.all_fix_base = false;
        if (keys.insert(pack_key(t)).second) {
            res.set.words.push_back({static_cast<std::uint32_t>(ci)});
            res.set.tables.push_back(std::move(t));
        }
    }

    res.within_ratio = res.set.tables.size() <= res.ratio;
    ChainInfo info = chain_analysis(*base);
    if (info.is_chain && info.c > 1) res.equals_ratio = res.set.tables.size() == res.ratio;
    return res;
}

Report stab_iso_order_check(const RingHandle& base, std::size_t k, std::size_t j,
                            std::uint64_t seed, const Budget& budget) {
    Report rep;
    rep.suite = "stab-iso";
    rep.spec = base->spec();
    rep.k = static_cast<int>(k);
    rep.seed = seed;

    StabResult sk = stabilizer_Stk(base, k, budget);
    StabResult sj = stabilizer_Stk(base, j, budget);

    // generator words index the shared chi list, so members align across k, j
    std::unordered_map<std::uint32_t, std::size_t> chi_to_j;
    for (std::size_t i = 0; i < sj.set.words.size(); ++i) chi_to_j[sj.set.words[i][0]] = i;
    bool aligned = sk.set.tables.size() == sj.set.tables.size();
    for (const auto& w : sk.set.words)
        if (!chi_to_j.count(w[0])) aligned = false;
    rep.add("generator_sets_aligned", aligned, nlohmann::json());
    if (!aligned) return rep;

    PermSet ck = closure(sk.set, budget);
    PermSet cj = closure(sj.set, budget);
    rep.add("closure_orders_equal", ck.tables.size() == cj.tables.size(),
            nlohmann::json{{"order_k", ck.tables.size()}, {"order_j", cj.tables.size()}});

    std::unordered_map<std::string, std::size_t> ck_index;
    for (std::size_t i = 0; i < ck.tables.size(); ++i) ck_index[pack_key(ck.tables[i])] = i;

    // evaluate a word (chi indices) as a composition of the j-side generators
    auto eval_j = [&](const std::vector<std::uint32_t>& word) {
        std::vector<Elem> acc = identity_table(cj.tables[0].size());
        for (std::uint32_t g : word)
            acc = compose_raw(acc, sj.set.tables[chi_to_j[g]]);
        return acc;
    };

    std::mt19937_64 rng(seed);
    std::uint64_t mismatches = 0;
    nlohmann::json ce;
    for (int s = 0; s < 50; ++s) {
        std::size_t x = rng() % ck.tables.size();
        std::size_t y = rng() % ck.tables.size();
        auto it = ck_index.find(pack_key(compose_raw(ck.tables[x], ck.tables[y])));
        if (it == ck_index.end()) throw Error("stab_iso_order_check: closure not closed");
        std::vector<std::uint32_t> word(ck.words[x]);
        word.insert(word.end(), ck.words[y].begin(), ck.words[y].end());
        if (eval_j(word) != eval_j(ck.words[it->second])) {
            ++mismatches;
            if (ce.is_null()) ce = nlohmann::json{{"x", x}, {"y", y}};
        }
    }
    rep.add("canonical_map_homomorphism", mismatches == 0, ce);
    rep.counts["order_k"] = ck.tables.size();
    rep.counts["order_j"] = cj.tables.size();
    return rep;
}

// ---------------------------------------------------------------------------
// Semidirect decomposition
// ---------------------------------------------------------------------------

GroupReport semidirect_check(const RingHandle& base, std::size_t k, const Budget& budget) {
    if (!base->commutative())
        throw NotCommutative("semidirect_check: " + base->spec());

    auto [pxk, pxk_report] = build_Pxk(base, k, 0, budget);
    PureSets pr = build_PR(base, k, budget);

    RingHandle dual = pxk.ring;
    const std::size_t dn = dual->size();

    // full PrPol(dual) by canonical enumeration
    std::vector<std::vector<Elem>> alphabets = canonical_dual_alphabets(dual);
    __uint128_t steps = 1;
    for (const auto& a : alphabets) {
        steps *= a.size();
        if (steps > budget.tuples)
            throw BudgetExceeded("semidirect_check: canonical enumeration exceeds budget");
    }
    PolyEnumerator en(dual, std::move(alphabets), PolyEnumerator::FT);
    std::unordered_map<std::string, std::uint32_t> prpol;
    std::vector<std::vector<Elem>> prpol_tables;
    while (!en.done()) {
        if (en.ft_bijective()) {
            std::string key = pack_key(en.func_table());
            if (!prpol.count(key)) {
                prpol.emplace(std::move(key), static_cast<std::uint32_t>(prpol_tables.size()));
                prpol_tables.push_back(en.func_table());
            }
        }
        en.advance();
    }

    GroupReport gr;
    gr.order = prpol_tables.size();
    gr.contains_identity = prpol.count(pack_key(identity_table(dn))) > 0;

    std::unordered_set<std::string> pxk_keys, pr_keys;
    for (const auto& t : pxk.tables) pxk_keys.insert(pack_key(t));
    for (const auto& t : pr.raw.tables) pr_keys.insert(pack_key(t));

    bool sub_ok = true;
    for (const auto& t : pxk.tables) sub_ok = sub_ok && prpol.count(pack_key(t));
    for (const auto& t : pr.raw.tables) sub_ok = sub_ok && prpol.count(pack_key(t));
    for (const auto& a : pr.raw.tables)
        for (const auto& b : pr.raw.tables)
            if (!pr_keys.count(pack_key(compose_raw(a, b)))) sub_ok = false;

    bool normal = sub_ok;
    for (const auto& g : prpol_tables) {
        std::vector<Elem> ginv = invert_table(g);
        for (const auto& h : pxk.tables)
            if (!pxk_keys.count(pack_key(compose_raw(compose_raw(g, h), ginv)))) {
                normal = false;
                break;
            }
        if (!normal) break;
    }
    gr.normal_in = std::make_pair(gr.order, normal);

    std::uint64_t inter = 0;
    for (const auto& t : pxk.tables)
        if (pr_keys.count(pack_key(t))) ++inter;
    gr.intersection_order = inter;

    std::unordered_set<std::string> product;
    for (const auto& h : pxk.tables)
        for (const auto& g : pr.raw.tables) product.insert(pack_key(compose_raw(h, g)));
    bool covers = product.size() == gr.order;
    for (const auto& key : product)
        if (!prpol.count(key)) covers = false;
    gr.product_covers = covers && pxk.tables.size() * pr.raw.tables.size() == gr.order;
    gr.abelian = pxk_report.abelian;
    return gr;
}

// ---------------------------------------------------------------------------
// Restriction counting on closure(P_R)
// ---------------------------------------------------------------------------

Report quotient_order_check(const RingHandle& base, std::size_t k, const Budget& budget) {
    Report rep;
    rep.suite = "stabilizer";
    rep.spec = base->spec();
    rep.k = static_cast<int>(k);

    const std::size_t n = base->size();
    PureSets pr = build_PR(base, k, budget);
    const PermSet& C = pr.closed;

    // restriction to base: pure indices are 0..n-1 and must map to pure
    auto restrict_table = [&](const std::vector<Elem>& t) {
        std::vector<Elem> r(n);
        for (std::size_t a = 0; a < n; ++a) {
            if (t[a] >= n) throw Error("quotient_order_check: base not preserved");
            r[a] = t[a];
        }
        return r;
    };

    std::vector<Elem> id_base = identity_table(n);
    std::unordered_set<std::string> image, stb_keys;
    std::uint64_t stb = 0;
    for (const auto& t : C.tables) {
        std::vector<Elem> r = restrict_table(t);
        if (r == id_base) {
            ++stb;
            stb_keys.insert(pack_key(t));
        }
        image.insert(pack_key(r));
    }
    rep.add("closure_order_factorizes", C.tables.size() == stb * image.size(),
            nlohmann::json{{"closure", C.tables.size()},
                           {"fixers", stb},
                           {"image", image.size()}});

    StabResult st = stabilizer_Stk(base, k, budget);
    bool st_in_stb = true;
    for (const auto& t : st.set.tables)
        if (!stb_keys.count(pack_key(t))) st_in_stb = false;
    PermSet st_closed = closure(st.set, budget);
    bool stcl_in_stb = true;
    for (const auto& t : st_closed.tables)
        if (!stb_keys.count(pack_key(t))) stcl_in_stb = false;
    rep.add("stabilizer_chain_contained", st_in_stb && stcl_in_stb,
            nlohmann::json{{"st", st.set.tables.size()},
                           {"st_closure", st_closed.tables.size()},
                           {"fixers", stb}});

    ChainInfo info = chain_analysis(*base);
    if (info.is_chain && info.c > 1) {
        const std::size_t d2 = static_cast<std::size_t>(monic_central_null(base).degree());
        std::vector<std::vector<Elem>> gens;
        for (std::size_t jj = 0; jj < d2; ++jj)
            for (std::size_t c = 0; c < n; ++c)
                gens.push_back(func_table(Poly::monomial(base, static_cast<Elem>(c), jj)).out);
        std::unordered_set<std::string> base_pp;
        for (const auto& f : table_span(*base, gens, budget))
            if (table_bijective(f)) base_pp.insert(pack_key(f));
        rep.add("chain_restriction_image_is_base_prpol", image == base_pp,
                nlohmann::json{{"image", image.size()}, {"base_pp", base_pp.size()}});
    } else {
        rep.add_skip("chain_restriction_image_is_base_prpol", "base is not a chain ring of length > 1");
    }

    if (base->commutative() || (info.is_chain && info.c > 1)) {
        std::unordered_set<std::string> raw_image;
        for (const auto& t : pr.raw.tables) raw_image.insert(pack_key(restrict_table(t)));
        rep.add("pure_count_factorizes",
                pr.raw.tables.size() == raw_image.size() * st.set.tables.size(),
                nlohmann::json{{"pure", pr.raw.tables.size()},
                               {"image", raw_image.size()},
                               {"stabilizer", st.set.tables.size()}});
    } else {
        rep.add_skip("pure_count_factorizes", "needs commutativity or a chain ring");
    }

    if (base->commutative())
        rep.add("pure_set_already_closed", pr.raw.tables.size() == C.tables.size(),
                nlohmann::json{{"raw", pr.raw.tables.size()}, {"closure", C.tables.size()}});
    else
        rep.add_skip("pure_set_already_closed", "noncommutative base");

    rep.counts["closure_order"] = C.tables.size();
    rep.counts["fixer_order"] = stb;
    rep.counts["image_order"] = image.size();
    rep.counts["stabilizer_order"] = st.set.tables.size();
    return rep;
}

}  // namespace ringlab
