#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/funcspace.hpp"
#include "ringlab/poly.hpp"
#include "ringlab/report.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

/// Permutation verdicts for a dual polynomial given by base components
/// (f0..fk). is_pp_dual is computed from the criterion
///     PP on the dual ring  <=>  f0 PP on base  AND  lambda_local(f0)
/// and, when crosschecked, compared against brute-force bijectivity.
struct PPVerdict {
    bool is_pp_base = false;
    bool lambda_local = false;
    bool is_pp_dual = false;
    nlohmann::json witness;  // collision data when a part fails; null otherwise
    std::string crosscheck = "none";  // "pass" | "skipped" | "none"
};

/// f induces a bijection.
bool is_pp(const Poly& f);

/// Every column map b -> lambda_f(a,b) is a bijection. On failure, *witness
/// receives {a, b1, b2} with equal column values.
bool lambda_local_perm(const Poly& f, nlohmann::json* witness = nullptr);

/// Criterion verdict for (f0..fk) on dual:k:base. With crosscheck, also
/// brute-forces bijectivity on the dual ring and throws Error on any
/// disagreement with the criterion.
PPVerdict is_pp_dual(const RingHandle& base, const std::vector<Poly>& comps, std::size_t k,
                     bool crosscheck = true, const Budget& budget = {});

/// Coefficient alphabets enumerating each polynomial function on the dual
/// ring exactly through a restricted representative: full dual letters below
/// deg mcn(base), pure letters from there up to deg mcn(dual).
std::vector<std::vector<Elem>> canonical_dual_alphabets(const RingHandle& dual);

/// Exhaustive over f0 of degree < bound: brute-force PP on dual:k:base
/// == (PP on base and lambda local) == PP on each subring base[beta_i];
/// lambda surjectivity whenever PP; component independence of the verdict;
/// on fields, at least one f0 PP on base but not on the dual ring.
Report cherper_suite(const RingHandle& base, int bound, std::size_t k,
                     std::uint64_t seed = 0, const Budget& budget = {});

/// Chain rings with char p^c, c > 1: every PP f of degree < deg mcn(base) has
/// unit derivative values, is lambda-local, and stays a PP on dual:k:base;
/// for c > 2 the pa=0 => a^2=0 implication; PP images in base/M^i stay PPs.
Report chain_redundancy_suite(const RingHandle& base, std::size_t k, std::uint64_t seed = 0,
                              const Budget& budget = {});

/// Chain rings, c > 1: sum over b of lambda_g(a,b) vanishes for every null g
/// of degree < deg mcn(base) and every a, as does the full double sum.
Report null_lambda_sum_suite(const RingHandle& base, const Budget& budget = {});

/// Number of distinct (function table, lambda table) pairs over polynomials
/// of degree < deg mcn(dual ring) passing the PP criterion; this is the order
/// of the pure permutation group on every dual extension.
std::uint64_t compute_L(const RingHandle& base, const Budget& budget = {});

/// |PrPol(dual:k:base)| = L * |PolFun(base)|^k, brute-forced on the dual ring
/// via canonical representatives when that enumeration fits the budget.
struct PrPolCount {
    std::uint64_t formula = 0;
    std::optional<std::uint64_t> brute;
    bool agree = true;
};

PrPolCount count_prpol_dual(const RingHandle& base, std::size_t k, const Budget& budget = {});

/// Commutative base: lambda_local_perm(f) <=> f' maps everything to units,
/// exhaustively below deg mcn(base) or sampled above the tuple budget.
Report commutative_lambda_equiv_check(const RingHandle& base, std::uint64_t seed = 0,
                                      const Budget& budget = {});

}  // namespace ringlab
