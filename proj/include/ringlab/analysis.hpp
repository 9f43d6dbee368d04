#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ringlab/report.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

/// Per-element flags: mask[a] != 0 iff a has a two-sided inverse.
std::vector<std::uint8_t> unit_mask(const Ring& r);
std::vector<Elem> unit_set(const Ring& r);

/// Two-sided inverse of a; throws NotAUnit when none exists.
Elem inverse(const Ring& r, Elem a);

/// {c : ca = ac for every a}.
std::vector<Elem> center(const Ring& r);

/// {x : 1 - a*x is a unit for all a}: the left quasi-regularity form, which
/// equals the radical in any ring and needs only n ops per candidate
/// (finite rings have no one-sided units). Guarded by budget.tuples.
std::vector<Elem> jacobson_radical(const Ring& r, const Budget& budget = {});

/// Least m >= 1 with I^m = {0}, where powers are ideal products (additive
/// spans of pairwise products). Returns nullopt if I is not nilpotent.
std::optional<int> nilpotency_index(const Ring& r, const std::vector<Elem>& ideal);

/**
 * Local / chain structure. For a local ring the maximal ideal M is the
 * non-unit set. Chain means M = tR = Rt for some t; then every one-sided
 * ideal is a power of M. Fields past `max_ideal` are only meaningful in the
 * branches indicated.
 */
struct ChainInfo {
    bool is_local = false;
    bool is_chain = false;
    std::vector<Elem> max_ideal;        // local only: the non-units
    std::optional<Elem> t;              // chain only: generator of M
    int N = 0;                          // chain only: minimal N with M^N = 0
    std::optional<int> e;               // chain only, absent when p*1 = 0
    std::uint64_t q = 0;                // chain only: |R| / |M|
    std::uint64_t p = 0;                // prime with char = p^c, 0 if char not a prime power
    int c = 0;                          // char = p^c, 0 if char not a prime power
};

ChainInfo chain_analysis(const Ring& r);

/// M^i as element sets, i = 0..N (M^0 = whole ring). Only valid for chain rings.
std::vector<std::vector<Elem>> ideal_powers(const Ring& r, const ChainInfo& info);

struct AdditiveOrder {
    std::uint64_t order = 0;                  // least n >= 1 with n*a = 0
    std::optional<std::uint64_t> formula;     // p^ceil((N-i)/e) when applicable
    bool agree = true;                        // order == formula when formula set
};

/// Additive order with the chain-ring cross-check (needs chain, e defined, a != 0).
AdditiveOrder additive_order(const Ring& r, Elem a, const ChainInfo& info);

/// True iff the additive closure of the unit set is the whole ring.
bool sum_of_units_reachable(const Ring& r);

struct SemiCommutativity {
    bool holds = true;
    bool exhaustive = true;
    std::optional<std::array<Elem, 3>> witness;  // (a, b, r) with ab = 0, arb != 0
};

/// Checks ab = 0 implies arb = 0 for all r. Exhaustive when the zero-product
/// pair count times size fits the budget, else sampled pairs.
SemiCommutativity semicommutativity_check(const Ring& r, const Budget& budget = {},
                                          std::uint64_t seed = 0);

/// Ring-axiom validation. mode "exhaustive" needs size^3 <= 1e8, otherwise
/// auto-degrades to `samples` random triples drawn from `seed`; the returned
/// report records the mode that actually ran.
Report validate_axioms(const RingHandle& r, const std::string& mode = "auto",
                       std::uint64_t seed = 0, std::uint64_t samples = 100'000);

/// Quotient ring R / I for a two-sided ideal given as an element set.
/// Representatives are the minimal element indices of each coset, re-indexed
/// in increasing order; spec is "quot:<parent-spec>:<|I|>".
RingHandle quotient_ring(const RingHandle& r, const std::vector<Elem>& ideal,
                         std::vector<Elem>* projection = nullptr);

}  // namespace ringlab
