#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "ringlab/poly.hpp"
#include "ringlab/report.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

/// The function a -> f(a) as a plain output table.
struct FuncTable {
    RingHandle ring;
    std::vector<Elem> out;
    bool bijective = false;
};

FuncTable func_table(const Poly& f);
bool table_bijective(const std::vector<Elem>& out);

/// f induces the zero function.
bool is_null(const Poly& f);
/// Null and the two-variable table vanishes identically; equivalent to being
/// null on the one-variable dual extension.
bool is_anull(const Poly& f);
/// Null with null formal derivative.
bool is_nullprime(const Poly& f);

/// Same induced function.
bool equiv_on(const Poly& f, const Poly& g);

/// Componentwise equivalence test for dual polynomials: pure parts induce the
/// same function AND have equal two-variable tables, and each nilpotent
/// component induces the same function on the base. Equals direct table
/// equality on the dual ring.
bool equiv_dual_criterion(const RingHandle& dual, const std::vector<Poly>& f,
                          const std::vector<Poly>& g);

/**
 * Incremental enumeration of all coefficient tuples (c_0..c_{D-1}) where c_j
 * ranges over alphabets[j]. Maintains, under single-digit updates, the induced
 * function table and optionally the derivative's table and the two-variable
 * lambda table, each with O(1) zero / bijectivity queries. Amortized cost per
 * step is O(cells touched), about 1.5 table scans.
 */
class PolyEnumerator {
public:
    enum Track : unsigned { FT = 1, DT = 2, LT = 4 };

    PolyEnumerator(RingHandle ring, std::vector<std::vector<Elem>> alphabets, unsigned track);

    std::uint64_t total() const { return total_; }
    bool done() const { return done_; }
    void advance();

    /// Current coefficients as ring elements (low degree first, length D).
    const std::vector<Elem>& coeffs() const { return coeffs_; }
    Poly current_poly() const;

    const std::vector<Elem>& func_table() const { return ft_; }
    const std::vector<Elem>& deriv_table() const { return dt_; }
    /// Row-major (y,z) table of the two-variable companion.
    const std::vector<Elem>& lambda_tab() const { return lt_; }

    bool ft_zero() const { return ft_zero_cells_ == n_; }
    bool ft_bijective() const { return ft_good_values_ == n_; }
    bool dt_zero() const { return dt_zero_cells_ == n_; }
    bool lt_zero() const { return lt_zero_cells_ == n_ * n_; }

private:
    void apply_digit(std::size_t j, std::size_t from_letter, std::size_t to_letter);

    RingHandle ring_;
    std::size_t n_ = 0;
    std::vector<std::vector<Elem>> alphabets_;
    std::vector<std::size_t> digits_;
    std::vector<Elem> coeffs_;
    unsigned track_;
    std::uint64_t total_ = 1;
    bool done_ = false;

    // per (degree, letter) tables of letter*x^j and their negations
    std::vector<std::vector<std::vector<Elem>>> mono_ft_, mono_ft_neg_;
    std::vector<std::vector<std::vector<Elem>>> mono_dt_, mono_dt_neg_;
    std::vector<std::vector<std::vector<Elem>>> mono_lt_, mono_lt_neg_;

    std::vector<Elem> ft_, dt_, lt_;
    std::vector<std::uint32_t> ft_hist_;
    std::size_t ft_zero_cells_ = 0, ft_good_values_ = 0, dt_zero_cells_ = 0, lt_zero_cells_ = 0;
};

/// Additive closure of a set of equal-length tables under pointwise ring
/// addition; size is capped by budget.tables. Returns the member tables.
std::vector<std::vector<Elem>> table_span(const Ring& r,
                                          const std::vector<std::vector<Elem>>& gens,
                                          const Budget& budget);

/// |PolFun| by enumerating all coefficient tuples of degree < deg(monic
/// central null) and deduplicating tables.
std::uint64_t count_polyfun_enumerate(const RingHandle& r, const Budget& budget = {});
/// |PolFun| as the size of the additive span of the tables of c*x^j.
std::uint64_t count_polyfun_span(const RingHandle& r, const Budget& budget = {});

/**
 * Indices of the null-polynomial ideals in R[x], over polynomials of degree
 * below d = deg monic_central_null(R[beta]):
 *   idx_null  = #induced functions               = [R[x] : Null]
 *   idx_anull = #(function, lambda-table) pairs  = [R[x] : ANull]
 *   ratio     = #lambda-tables of null f         = [Null : ANull]
 * method "enumerate" walks all |R|^d tuples; "span" computes subgroup orders
 * by modular row elimination over Z_{p^c} (prime-power characteristic) with
 * an explicit kernel pass for ratio, so the identity check stays independent.
 */
struct IdealStats {
    std::string spec;
    int d = 0;
    std::uint64_t idx_null = 0;
    std::uint64_t idx_anull = 0;
    std::uint64_t ratio = 0;
    std::string method;
    bool identity = false;  // idx_anull == idx_null * ratio
};

/// method: "auto" picks enumeration when |R|^d fits the tuple budget, else
/// the elimination path; "enumerate" / "span" force one (BudgetExceeded when
/// the forced path cannot run within budget).
IdealStats ideal_stats(const RingHandle& base, const Budget& budget = {},
                       const std::string& method = "auto");

/// Degree of the monic central null polynomial of base[beta]; the degree
/// bound below which every dual polynomial function has a representative.
std::size_t dual_null_degree(const RingHandle& base);

/// |PolFun(R_k)| = idx_anull * idx_null^k, with an independent span count on
/// the dual ring itself when it fits the budget.
struct DualFunCount {
    std::uint64_t formula = 0;
    std::optional<std::uint64_t> span_oracle;
    bool agree = true;
};

DualFunCount count_polyfun_dual(const RingHandle& base, std::size_t k, const Budget& budget = {});

/// Null / lambda generator data extracted by the span path: polynomials
/// spanning Null below the chosen degree bound under integer combinations.
/// degree 0 means the dual-ring bound (every lambda table is realized there).
std::vector<Poly> null_generators(const RingHandle& base, const Budget& budget = {},
                                  std::size_t degree = 0);

/// exhaustive f = assembled (f0..fk) of component degree < bound:
/// null on R_k iff f0 in ANull and every f_i in Null. Sampled when the pair
/// count exceeds the tuple budget.
Report null_decomposition_check(const RingHandle& base, std::size_t k, int bound,
                                const std::string& mode = "auto", std::uint64_t seed = 0,
                                const Budget& budget = {});

}  // namespace ringlab
