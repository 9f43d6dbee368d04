#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringlab/funcspace.hpp"
#include "ringlab/report.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

/// A deduplicated set of function tables on one ring, optionally closed under
/// composition. `words` holds one provenance word per table: the sequence of
/// generator indices whose left-to-right composition produced it.
struct PermSet {
    RingHandle ring;
    std::vector<std::vector<Elem>> tables;
    bool closed = false;
    std::vector<std::vector<std::uint32_t>> words;
};

struct GroupReport {
    std::uint64_t order = 0;
    bool abelian = false;
    bool contains_identity = false;
    std::optional<std::pair<std::uint64_t, bool>> normal_in;  // ambient order, verdict
    std::optional<std::uint64_t> intersection_order;
    std::optional<bool> product_covers;
};

/// (F compose G)[i] = F[G[i]].
FuncTable compose_tables(const FuncTable& F, const FuncTable& G);

/// Smallest composition-closed superset, breadth-first. When every generator
/// is bijective the result is a group; identity and inverses are then
/// asserted present. Member count is capped by budget.tables.
PermSet closure(const PermSet& generators, const Budget& budget = {});

/// The permutations [x + f_1 b_1 + .. + f_k b_k] of dual:k:base, one per
/// k-tuple of polynomial functions. Report asserts the order formula
/// |PolFun(base)|^k, commutativity, and [f] after [g] = [x + sum(f_i+g_i)b_i]
/// (abelian/compatibility checks sample pairs above the tuple budget).
std::pair<PermSet, GroupReport> build_Pxk(const RingHandle& base, std::size_t k,
                                          std::uint64_t seed = 0, const Budget& budget = {});

/// Permutations of dual:k:base induced by pure polynomials: exactly the
/// tables of the L distinct (function table, lambda table) pairs with the
/// permutation criterion, plus their composition closure.
struct PureSets {
    PermSet raw;
    PermSet closed;
};

PureSets build_PR(const RingHandle& base, std::size_t k, const Budget& budget = {});

/// Permutations of dual:k:base of the form [x + h], h null on base, keyed by
/// the lambda table of h. Every member fixes base pointwise.
struct StabResult {
    PermSet set;
    std::uint64_t ratio = 0;           // [Null : ANull] from ideal_stats
    bool all_fix_base = false;
    bool within_ratio = false;         // |St_k| <= ratio
    std::optional<bool> equals_ratio;  // chain base with c > 1: must be equal
};

StabResult stabilizer_Stk(const RingHandle& base, std::size_t k, const Budget& budget = {});

/// Closure orders of St_k and St_j agree, and the generator-aligned map
/// between the closures respects composition on sampled member pairs.
Report stab_iso_order_check(const RingHandle& base, std::size_t k, std::size_t j,
                            std::uint64_t seed = 0, const Budget& budget = {});

/// Commutative base: PrPol(dual:k:base) decomposes as the normal abelian
/// subgroup P_{x,k} and the complement P_R: trivial intersection, order
/// product, product set covers everything.
GroupReport semidirect_check(const RingHandle& base, std::size_t k, const Budget& budget = {});

/// Restriction-to-base counting on closure(P_R): order = |fixers| * |image|;
/// St_k inside closure(St_k) inside the fixer subgroup; on chain bases with
/// c > 1 the image equals the bijective polynomial functions of base; and the
/// factorization L = |image(P_R)| * |St_k| when the fibers are cosets.
Report quotient_order_check(const RingHandle& base, std::size_t k, const Budget& budget = {});

}  // namespace ringlab
