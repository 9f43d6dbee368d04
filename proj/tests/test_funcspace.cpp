#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "ringlab/funcspace.hpp"
#include "ringlab/poly.hpp"
#include "ringlab/ring.hpp"

using namespace ringlab;

namespace {

Poly random_poly(const RingHandle& r, std::size_t coeffs, std::mt19937_64& rng) {
    std::vector<Elem> c(coeffs);
    for (auto& ci : c) ci = static_cast<Elem>(rng() % r->size());
    return Poly::from_coeffs(r, std::move(c));
}

// additive closure of coefficient vectors (padded to length d) under
// pointwise ring addition; the integer span of the generators
std::set<std::vector<Elem>> coeff_span(const Ring& r, const std::vector<Poly>& gens,
                                       std::size_t d) {
    std::set<std::vector<Elem>> members;
    members.insert(std::vector<Elem>(d, r.zero()));
    std::vector<std::vector<Elem>> work(members.begin(), members.end());
    while (!work.empty()) {
        std::vector<Elem> cur = std::move(work.back());
        work.pop_back();
        for (const Poly& g : gens) {
            std::vector<Elem> next = cur;
            for (std::size_t j = 0; j < d; ++j)
                next[j] = r.add(next[j], j < g.c.size() ? g.c[j] : r.zero());
            if (members.insert(next).second) work.push_back(std::move(next));
        }
    }
    return members;
}

}  // namespace

TEST_CASE("function tables record the induced map") {
    RingHandle r = construct_ring("zn:4");
    FuncTable id = func_table(Poly::x(r));
    CHECK(id.out == std::vector<Elem>{0, 1, 2, 3});
    CHECK(id.bijective);

    FuncTable sq = func_table(parse_poly(r, "0,0,1"));
    CHECK(sq.out == std::vector<Elem>{0, 1, 0, 1});
    CHECK_FALSE(sq.bijective);
    CHECK(table_bijective(id.out));
    CHECK_FALSE(table_bijective(sq.out));
}

TEST_CASE("null, flat-null, and derivative-null classification") {
    RingHandle r = construct_ring("zn:4");
    Poly mcn = monic_central_null(r);

    CHECK(is_null(mcn));
    CHECK_FALSE(is_null(Poly::x(r)));
    CHECK_FALSE(is_anull(mcn));                 // its two-variable table is 2x*z, not zero
    CHECK(is_anull(poly_mul(mcn, mcn)));        // but the square always flattens
    CHECK(is_anull(Poly::zero(r)));

    RingHandle f2 = construct_ring("gf:2");
    Poly frob_gap = parse_poly(f2, "0,1,1");    // x^2 + x
    CHECK(is_null(frob_gap));
    CHECK_FALSE(is_anull(frob_gap));            // lambda(y,z) = z

    // the triangular example: null derivative without a flat table
    RingHandle ut = construct_ring("ut:2:gf:2");
    Poly h = Poly::from_coeffs(ut, {0, 0, ut->one(), 0, ut->one()});
    CHECK(is_nullprime(h));
    CHECK_FALSE(is_anull(h));
    // over a commutative ring that separation cannot happen below: flat
    // implies derivative-null via z = 1
    CHECK(is_nullprime(poly_mul(mcn, mcn)));
}

TEST_CASE("equality of induced functions") {
    RingHandle r = construct_ring("gf:2");
    CHECK(equiv_on(Poly::x(r), parse_poly(r, "0,0,1")));  // Frobenius fixes F_2
    CHECK_FALSE(equiv_on(Poly::x(r), parse_poly(r, "1,1")));

    RingHandle z4 = construct_ring("zn:4");
    Poly f = parse_poly(z4, "1,2,3");
    CHECK(equiv_on(f, poly_add(f, monic_central_null(z4))));
}

TEST_CASE("dual equivalence criterion equals table equality, exhaustively") {
    RingHandle d = construct_ring("dual:1:gf:2");
    RingHandle base = as_dual(*d)->base();
    // all pairs of component tuples of degree < 3
    std::vector<std::vector<Poly>> tuples;
    for (int c0 = 0; c0 < 8; ++c0)
        for (int c1 = 0; c1 < 8; ++c1) {
            auto bits = [](int v) {
                return std::vector<Elem>{static_cast<Elem>(v & 1),
                                         static_cast<Elem>((v >> 1) & 1),
                                         static_cast<Elem>((v >> 2) & 1)};
            };
            tuples.push_back({Poly::from_coeffs(base, bits(c0)),
                              Poly::from_coeffs(base, bits(c1))});
        }
    std::vector<std::vector<Elem>> tables;
    for (const auto& t : tuples) {
        Poly f = assemble_dual_poly(d, t);
        std::vector<Elem> out(d->size());
        for (Elem x = 0; x < d->size(); ++x) out[x] = eval_right(f, x);
        tables.push_back(std::move(out));
    }
    for (std::size_t i = 0; i < tuples.size(); ++i)
        for (std::size_t j = i; j < tuples.size(); ++j)
            REQUIRE(equiv_dual_criterion(d, tuples[i], tuples[j]) ==
                    (tables[i] == tables[j]));
}

TEST_CASE("incremental enumeration tracks function, derivative, and lambda tables") {
    RingHandle r = construct_ring("zn:4");
    std::vector<Elem> all = {0, 1, 2, 3};
    PolyEnumerator en(r, std::vector<std::vector<Elem>>(4, all),
                      PolyEnumerator::FT | PolyEnumerator::DT | PolyEnumerator::LT);
    CHECK(en.total() == 256);

    std::uint64_t steps = 0, null_count = 0, bij_count = 0;
    while (!en.done()) {
        Poly f = en.current_poly();
        // cheap invariants every step, full recomputation on a stride
        REQUIRE(en.ft_zero() == is_null(f));
        REQUIRE(en.ft_bijective() == table_bijective(en.func_table()));
        if (steps % 17 == 0) {
            FuncTable ft = func_table(f);
            REQUIRE(en.func_table() == ft.out);
            REQUIRE(en.deriv_table() == func_table(formal_derivative(f)).out);
            REQUIRE(en.lambda_tab() == lambda_table(f));
        }
        null_count += en.ft_zero();
        bij_count += en.ft_bijective();
        ++steps;
        en.advance();
    }
    CHECK(steps == 256);
    CHECK(null_count == 4);  // 4^4 tuples / 64 functions
    CHECK(bij_count > 0);
}

TEST_CASE("restricted alphabets enumerate exactly their grid") {
    RingHandle r = construct_ring("zn:4");
    std::vector<std::vector<Elem>> alpha = {{0, 2}, {1, 3}, {0, 1, 2}};
    PolyEnumerator en(r, alpha, PolyEnumerator::FT);
    std::set<std::vector<Elem>> seen;
    while (!en.done()) {
        std::vector<Elem> c = en.coeffs();
        REQUIRE(c.size() == 3);
        REQUIRE((c[0] == 0 || c[0] == 2));
        REQUIRE((c[1] == 1 || c[1] == 3));
        REQUIRE(c[2] <= 2);
        seen.insert(c);
        en.advance();
    }
    CHECK(en.total() == 12);
    CHECK(seen.size() == 12);
}

TEST_CASE("additive spans of tables") {
    RingHandle r = construct_ring("zn:4");
    std::vector<Elem> ones(r->size(), 1);
    Budget budget;
    auto span = table_span(*r, {ones}, budget);
    CHECK(span.size() == 4);  // 0, 1, 2, 3 constant tables

    std::vector<Elem> idt = {0, 1, 2, 3};
    CHECK(table_span(*r, {ones, idt}, budget).size() == 16);  // all affine maps

    Budget tiny;
    tiny.tables = 3;
    CHECK_THROWS_AS(table_span(*r, {ones, idt}, tiny), BudgetExceeded);
}

TEST_CASE("polynomial function counts by enumeration and span") {
    struct Row {
        const char* spec;
        std::uint64_t count;
    };
    const Row rows[] = {
        {"gf:2", 4}, {"gf:3", 27}, {"gf:4", 256}, {"zn:4", 64}, {"ut:2:gf:2", 256},
        {"zn:8", 1024},
    };
    for (const Row& row : rows) {
        CAPTURE(row.spec);
        RingHandle r = construct_ring(row.spec);
        CHECK(count_polyfun_enumerate(r) == row.count);
        CHECK(count_polyfun_span(r) == row.count);
    }
    // zn:9 is past the default enumeration budget; the span path still works
    RingHandle z9 = construct_ring("zn:9");
    CHECK(count_polyfun_span(z9) == 19683);
    CHECK_THROWS_AS(count_polyfun_enumerate(z9), BudgetExceeded);
}

TEST_CASE("ideal indices and the index identity") {
    struct Row {
        const char* spec;
        int d;
        std::uint64_t idx_null, idx_anull, ratio;
    };
    const Row rows[] = {
        {"gf:2", 4, 4, 16, 4},
        {"zn:4", 6, 64, 256, 4},
        {"gf:3", 8, 27, 729, 27},
        {"ut:2:gf:2", 7, 256, 16384, 64},
    };
    for (const Row& row : rows) {
        CAPTURE(row.spec);
        IdealStats st = ideal_stats(construct_ring(row.spec));
        CHECK(st.d == row.d);
        CHECK(st.idx_null == row.idx_null);
        CHECK(st.idx_anull == row.idx_anull);
        CHECK(st.ratio == row.ratio);
        CHECK(st.identity);
    }

    SUBCASE("both methods agree where both run") {
        IdealStats en = ideal_stats(construct_ring("zn:4"), {}, "enumerate");
        IdealStats sp = ideal_stats(construct_ring("zn:4"), {}, "span");
        CHECK(en.idx_null == sp.idx_null);
        CHECK(en.idx_anull == sp.idx_anull);
        CHECK(en.ratio == sp.ratio);
    }
    SUBCASE("zn:8 runs through elimination only") {
        IdealStats st = ideal_stats(construct_ring("zn:8"));
        CHECK(st.method == "span");
        CHECK(st.idx_null == 1024);
        CHECK(st.idx_anull == 65536);
        CHECK(st.ratio == 64);
        CHECK(st.identity);
        CHECK_THROWS_AS(ideal_stats(construct_ring("zn:8"), {}, "enumerate"),
                        BudgetExceeded);
    }
}

TEST_CASE("dual null degree equals the dual ring's own null bound") {
    struct Row {
        const char* spec;
        std::size_t d1;
    };
    const Row rows[] = {
        {"gf:2", 4}, {"zn:4", 6}, {"gf:3", 8}, {"gf:4", 8},
        {"ut:2:gf:2", 7}, {"zn:8", 12}, {"zn:9", 21},
    };
    for (const Row& row : rows) {
        CAPTURE(row.spec);
        RingHandle r = construct_ring(row.spec);
        CHECK(dual_null_degree(r) == row.d1);
        RingHandle d = construct_ring("dual:1:" + std::string(row.spec));
        CHECK(static_cast<std::size_t>(monic_central_null(d).degree()) == row.d1);
    }
}

TEST_CASE("dual function counts: formula against the independent span oracle") {
    DualFunCount a = count_polyfun_dual(construct_ring("gf:2"), 1);
    CHECK(a.formula == 64);
    REQUIRE(a.span_oracle.has_value());
    CHECK(*a.span_oracle == 64);
    CHECK(a.agree);

    DualFunCount b = count_polyfun_dual(construct_ring("zn:4"), 1);
    CHECK(b.formula == 16384);
    CHECK(b.agree);

    DualFunCount c = count_polyfun_dual(construct_ring("gf:2"), 2);
    CHECK(c.formula == 256);  // 16 * 4^2
    REQUIRE(c.span_oracle.has_value());
    CHECK(c.agree);
}

TEST_CASE("null generators span the null lattice below a degree bound") {
    RingHandle r = construct_ring("zn:4");

    SUBCASE("at the dual bound") {
        std::vector<Poly> gens = null_generators(r);
        for (const Poly& g : gens) {
            CAPTURE(poly_to_string(g));
            CHECK(is_null(g));
            CHECK(g.degree() < 6);
        }
        CHECK(coeff_span(*r, gens, 6).size() == 64);  // 4^6 / 64 functions
    }
    SUBCASE("at the base bound") {
        std::vector<Poly> gens = null_generators(r, {}, 4);
        for (const Poly& g : gens) CHECK(is_null(g));
        CHECK(coeff_span(*r, gens, 4).size() == 4);  // 4^4 / 64
    }
    SUBCASE("fields have no nonzero null polynomials below their bound") {
        RingHandle f2 = construct_ring("gf:2");
        std::vector<Poly> gens = null_generators(f2, {}, 2);
        CHECK(coeff_span(*f2, gens, 2).size() == 1);
    }
}

TEST_CASE("null decomposition check: componentwise criterion on the dual") {
    Report ex = null_decomposition_check(construct_ring("gf:2"), 1, 4, "exhaustive");
    CHECK(ex.passed());
    CHECK(ex.mode == "exhaustive");
    CHECK(ex.counts["pairs_checked"] == 256);  // 2^(4+4)
    CHECK(ex.counts["mismatches"] == 0);

    Report sam = null_decomposition_check(construct_ring("zn:4"), 1, 3, "sampled", 5);
    CHECK(sam.passed());
    CHECK(sam.mode == "sampled");
    CHECK(sam.counts["mismatches"] == 0);

    Report two = null_decomposition_check(construct_ring("gf:2"), 2, 2, "exhaustive");
    CHECK(two.passed());
    CHECK(two.counts["pairs_checked"] == 64);  // 2^(2*3)
}

TEST_CASE("random engineered null dual polynomials decompose componentwise") {
    RingHandle base = construct_ring("zn:4");
    RingHandle d = construct_ring("dual:1:zn:4");
    Poly mcn = monic_central_null(base);
    Poly flat = poly_mul(mcn, mcn);
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        // f0 from the flat ideal, f1 from the null ideal: must be null on the dual
        std::vector<Poly> comps = {poly_mul(random_poly(base, 3, rng), flat),
                                   poly_mul(random_poly(base, 3, rng), mcn)};
        // left multiples only engineer one-sided membership; verify both ways
        REQUIRE(is_anull(comps[0]));
        REQUIRE(is_null(comps[1]));
        CHECK(is_null(assemble_dual_poly(d, comps)));
    }
}
