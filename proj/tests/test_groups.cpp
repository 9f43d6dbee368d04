#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ringlab/analysis.hpp"
#include "ringlab/funcspace.hpp"
#include "ringlab/groups.hpp"
#include "ringlab/perm.hpp"
#include "ringlab/poly.hpp"
#include "ringlab/ring.hpp"

using namespace ringlab;

namespace {

std::vector<Elem> identity_table(std::size_t n) {
    std::vector<Elem> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<Elem>(i);
    return t;
}

std::vector<Elem> compose_raw(const std::vector<Elem>& F, const std::vector<Elem>& G) {
    std::vector<Elem> out(G.size());
    for (std::size_t i = 0; i < G.size(); ++i) out[i] = F[G[i]];
    return out;
}

bool contains_table(const PermSet& s, const std::vector<Elem>& t) {
    for (const auto& m : s.tables)
        if (m == t) return true;
    return false;
}

}  // namespace

TEST_CASE("table composition") {
    RingHandle r = construct_ring("zn:4");
    FuncTable F = func_table(parse_poly(r, "1,1"));  // a -> a + 1
    FuncTable G = func_table(parse_poly(r, "0,3"));  // a -> 3a
    FuncTable FG = compose_tables(F, G);
    for (Elem a = 0; a < 4; ++a) CHECK(FG.out[a] == F.out[G.out[a]]);
    CHECK(FG.bijective);

    RingHandle other = construct_ring("gf:4");  // same size, different ring
    CHECK_THROWS_AS(compose_tables(F, func_table(Poly::x(other))), WrongRing);
}

TEST_CASE("composition closure") {
    RingHandle r = construct_ring("zn:4");

    SUBCASE("a translation generates the full translation group") {
        PermSet gen;
        gen.ring = r;
        gen.tables = {func_table(parse_poly(r, "1,1")).out};
        PermSet cl = closure(gen);
        CHECK(cl.closed);
        CHECK(cl.tables.size() == 4);
        CHECK(contains_table(cl, identity_table(4)));

        // word provenance: composing the recorded generators reproduces each member
        for (std::size_t i = 0; i < cl.tables.size(); ++i) {
            std::vector<Elem> acc = identity_table(4);
            for (std::uint32_t g : cl.words[i]) acc = compose_raw(acc, gen.tables[g]);
            CHECK(acc == cl.tables[i]);
        }
    }
    SUBCASE("non-bijective generators close without group assertions") {
        PermSet gen;
        gen.ring = r;
        gen.tables = {std::vector<Elem>(4, 2)};  // constant map
        PermSet cl = closure(gen);
        CHECK(cl.tables.size() == 1);
        CHECK_FALSE(contains_table(cl, identity_table(4)));
    }
    SUBCASE("member cap") {
        PermSet gen;
        gen.ring = r;
        gen.tables = {func_table(parse_poly(r, "1,1")).out};
        Budget tiny;
        tiny.tables = 2;
        CHECK_THROWS_AS(closure(gen, tiny), BudgetExceeded);
    }
}

TEST_CASE("the nilpotent-translation groups") {
    struct Row {
        const char* spec;
        std::size_t k;
        std::uint64_t order;
    };
    const Row rows[] = {{"gf:2", 1, 4}, {"gf:2", 2, 16}, {"zn:4", 1, 64}};
    for (const Row& row : rows) {
        CAPTURE(row.spec);
        CAPTURE(row.k);
        auto [set, gr] = build_Pxk(construct_ring(row.spec), row.k);
        CHECK(gr.order == row.order);
        CHECK(gr.abelian);
        CHECK(gr.contains_identity);
        CHECK(set.closed);
        CHECK(set.tables.size() == row.order);
    }
}

TEST_CASE("pure permutation sets") {
    SUBCASE("gf:2") {
        PureSets pr = build_PR(construct_ring("gf:2"), 1);
        CHECK(pr.raw.tables.size() == 2);  // the L distinct pure permutations
        CHECK(pr.closed.tables.size() == 2);
        CHECK(contains_table(pr.closed, identity_table(4)));
    }
    SUBCASE("zn:4: already composition-closed") {
        PureSets pr = build_PR(construct_ring("zn:4"), 1);
        CHECK(pr.raw.tables.size() == 32);
        CHECK(pr.closed.tables.size() == 32);
        for (const auto& t : pr.raw.tables) CHECK(table_bijective(t));
    }
}

TEST_CASE("stabilizer of the base inside the pure permutations") {
    SUBCASE("trivial on gf:2") {
        StabResult st = stabilizer_Stk(construct_ring("gf:2"), 1);
        CHECK(st.set.tables.size() == 1);
        CHECK(st.ratio == 4);
        CHECK(st.all_fix_base);
        CHECK(st.within_ratio);
        CHECK_FALSE(st.equals_ratio.has_value());  // fields are chain rings of length 1
    }
    SUBCASE("zn:4 fills the ratio") {
        StabResult st = stabilizer_Stk(construct_ring("zn:4"), 1);
        CHECK(st.set.tables.size() == 4);
        CHECK(st.ratio == 4);
        REQUIRE(st.equals_ratio.has_value());
        CHECK(*st.equals_ratio);
    }
    SUBCASE("zn:8 fills the ratio") {
        StabResult st = stabilizer_Stk(construct_ring("zn:8"), 1);
        CHECK(st.set.tables.size() == 64);
        CHECK(st.ratio == 64);
        CHECK(*st.equals_ratio);
    }
    SUBCASE("strict on the triangular ring") {
        StabResult st = stabilizer_Stk(construct_ring("ut:2:gf:2"), 1);
        CHECK(st.set.tables.size() == 16);
        CHECK(st.ratio == 64);
        CHECK(st.within_ratio);
        CHECK(st.all_fix_base);
        CHECK_FALSE(st.equals_ratio.has_value());  // not a chain ring
    }
    SUBCASE("members fix every pure point") {
        StabResult st = stabilizer_Stk(construct_ring("zn:4"), 2);
        const std::size_t n = 4;
        for (const auto& t : st.set.tables)
            for (std::size_t a = 0; a < n; ++a) REQUIRE(t[a] == a);
    }
}

TEST_CASE("stabilizers at different nilpotent counts have matching structure") {
    for (auto [k, j] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 3}, {1, 3}}) {
        CAPTURE(k);
        CAPTURE(j);
        CHECK(stab_iso_order_check(construct_ring("gf:2"), k, j).passed());
        CHECK(stab_iso_order_check(construct_ring("zn:4"), k, j).passed());
    }
    Report rep = stab_iso_order_check(construct_ring("zn:4"), 1, 2, 11);
    CHECK(rep.counts["order_k"] == rep.counts["order_j"]);
}

TEST_CASE("semidirect decomposition of the dual permutation group") {
    SUBCASE("gf:2") {
        GroupReport gr = semidirect_check(construct_ring("gf:2"), 1);
        CHECK(gr.order == 8);
        REQUIRE(gr.normal_in.has_value());
        CHECK(gr.normal_in->first == 8);
        CHECK(gr.normal_in->second);
        CHECK(gr.intersection_order == 1);
        REQUIRE(gr.product_covers.has_value());
        CHECK(*gr.product_covers);
        CHECK(gr.abelian);  // the normal factor is
    }
    SUBCASE("zn:4") {
        GroupReport gr = semidirect_check(construct_ring("zn:4"), 1);
        CHECK(gr.order == 2048);
        CHECK(gr.normal_in->second);
        CHECK(gr.intersection_order == 1);
        CHECK(*gr.product_covers);
    }
    SUBCASE("gf:3") {
        GroupReport gr = semidirect_check(construct_ring("gf:3"), 1);
        CHECK(gr.order == 1296);
        CHECK(gr.normal_in->second);
        CHECK(gr.intersection_order == 1);
        CHECK(*gr.product_covers);
    }
    CHECK_THROWS_AS(semidirect_check(construct_ring("mat:2:gf:2"), 1), NotCommutative);
    CHECK_THROWS_AS(semidirect_check(construct_ring("ut:2:gf:2"), 1), NotCommutative);
}

TEST_CASE("restriction counting on the closed pure permutations") {
    SUBCASE("zn:4") {
        Report rep = quotient_order_check(construct_ring("zn:4"), 1);
        CHECK(rep.passed());
        CHECK(rep.counts["closure_order"] == 32);
        CHECK(rep.counts["fixer_order"] == 4);
        CHECK(rep.counts["image_order"] == 8);
        CHECK(rep.counts["stabilizer_order"] == 4);
        // every check is live on a chain base: nothing skipped
        for (const Check& c : rep.checks) CHECK(c.status == "pass");
    }
    SUBCASE("gf:2") {
        Report rep = quotient_order_check(construct_ring("gf:2"), 1);
        CHECK(rep.passed());
        CHECK(rep.counts["closure_order"] == 2);
        CHECK(rep.counts["fixer_order"] == 1);
        CHECK(rep.counts["image_order"] == 2);
        bool chain_check_skipped = false;
        for (const Check& c : rep.checks)
            if (c.name == "chain_restriction_image_is_base_prpol")
                chain_check_skipped = c.status == "skipped";
        CHECK(chain_check_skipped);  // a field's chain has length 1
    }
}
