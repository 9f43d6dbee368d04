#pragma once

#include <string>
#include <vector>

#include "ringlab/ring.hpp"

namespace ringlab {

/**
 * Polynomial over a finite ring, in the right-substitution convention:
 * f = sum c_j x^j acts as f(a) = sum c_j a^j, coefficients multiplying from
 * the left. Coefficients are stored low degree first with no trailing zeros;
 * the zero polynomial is the empty sequence.
 */
struct Poly {
    RingHandle ring;
    std::vector<Elem> c;

    bool is_zero() const { return c.empty(); }
    /// -1 for the zero polynomial, else the index of the leading coefficient.
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Elem coeff(std::size_t j) const { return j < c.size() ? c[j] : ring->zero(); }
    bool monic() const { return !c.empty() && c.back() == ring->one(); }

    void normalize();

    static Poly zero(RingHandle r);
    static Poly from_coeffs(RingHandle r, std::vector<Elem> coeffs);
    /// c * x^j
    static Poly monomial(RingHandle r, Elem c, std::size_t j);
    static Poly x(RingHandle r);
    static Poly constant(RingHandle r, Elem c);

    bool operator==(const Poly& o) const { return c == o.c; }
};

Poly poly_add(const Poly& f, const Poly& g);
Poly poly_sub(const Poly& f, const Poly& g);
/// Product in the convention (fg)(x) = sum_j f_j g(x) x^j: the coefficient of
/// x^{i+j} accumulates f_j * g_i, left factor's coefficients on the left.
Poly poly_mul(const Poly& f, const Poly& g);
/// s * f (each coefficient multiplied by s from the left).
Poly scale_left(Elem s, const Poly& f);

/// f(a) via Horner; valid because the accumulator only ever multiplies a on
/// the right.
Elem eval_right(const Poly& f, Elem a);

/// sum j*c_j x^{j-1}, the integer multiple computed by repeated addition.
Poly formal_derivative(const Poly& f);

/**
 * The two-variable companion of f: lambda_f(y,z) = sum_{j>=1} c_j m_j(y,z)
 * where m_j(y,z) = sum_{r=1}^{j} y^{r-1} z y^{j-r}. Computed by the O(deg)
 * recurrence m_1 = z, m_{j+1} = y*m_j + z*y^j.
 */
Elem lambda_eval(const Poly& f, Elem y, Elem z);
/// Literal double-sum form; the oracle the recurrence is tested against.
Elem lambda_eval_double_sum(const Poly& f, Elem y, Elem z);

/// m_j(y,z) per the recurrence; the beta-component of (y + z*beta)^j.
Elem power_mix(const Ring& r, Elem y, Elem z, std::size_t j);

/// Full size*size table, cell (y,z) at index y*size + z.
std::vector<Elem> lambda_table(const Poly& f, const Budget& budget = {});

/// Quotient and remainder of division by a monic g from the right:
/// f = q*g + r with deg r < deg g.
struct DivMod {
    Poly quot, rem;
};
DivMod right_divmod(const Poly& f, const Poly& g);

/// Minimal (tail, period), tail >= 1, period >= 1, with
/// r^{tail+period} = r^{tail}.
struct Preperiod {
    int tail = 0;
    int period = 0;
};
Preperiod power_preperiod(const Ring& r, Elem a);

/**
 * x^{M+L} - x^M where M is the maximum power tail and L the lcm of power
 * periods over all elements: a monic null polynomial whose coefficients are
 * 0 and -1, hence central. Its degree bounds every enumeration downstream.
 */
Poly monic_central_null(const RingHandle& r);

/// Right side of the dual evaluation identity
/// f(a + sum b_i beta_i) = f0(a) + sum (lambda_{f0}(a,b_i) + f_i(a)) beta_i,
/// assembled as a dual-ring element. comps[0] = f0, comps[i] = f_i.
Elem dual_eval_via_lemma(const Ring& dual, const std::vector<Poly>& comps, Elem a,
                         const std::vector<Elem>& bs);

/// Reinterpret a base polynomial over the dual ring (indices embed directly).
Poly embed_into_dual(const RingHandle& dual, const Poly& f);
/// Dual polynomial with coefficient j = encode(f0[j], f1[j].. fk[j]).
Poly assemble_dual_poly(const RingHandle& dual, const std::vector<Poly>& comps);
/// Inverse of assemble: k+1 base polynomials from a dual polynomial.
std::vector<Poly> split_dual_poly(const RingHandle& dual, const Poly& f);

/**
 * Degree reduction that preserves the induced function on the dual ring:
 * comps[0] is reduced mod the dual ring's monic central null polynomial
 * (whose coefficients are embedded base elements), comps[i>=1] mod the base
 * ring's. Returns components of degree < those bounds.
 */
std::vector<Poly> canonical_reduce(const RingHandle& dual, const std::vector<Poly>& comps);

/// Comma-separated coefficient indices, low degree first ("0,3,1" = x^2+3x).
Poly parse_poly(RingHandle r, const std::string& text);
std::string poly_to_string(const Poly& f);

}  // namespace ringlab
