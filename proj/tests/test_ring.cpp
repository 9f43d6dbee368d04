#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>

#include "ringlab/analysis.hpp"
#include "ringlab/ring.hpp"

using namespace ringlab;

TEST_CASE("spec grammar: canonicalization and rejects") {
    CHECK(canonical_spec("gf:2") == "gf:2:1");
    CHECK(canonical_spec("zn:12") == "zn:12");
    CHECK(canonical_spec("dual:2:zn:4") == "dual:2:zn:4");
    CHECK(canonical_spec("prod:gf:2+zn:4") == canonical_spec("prod:gf:2:1+zn:4"));

    CHECK_THROWS_AS(canonical_spec(""), ParseError);
    CHECK_THROWS_AS(canonical_spec("zn:"), ParseError);
    CHECK_THROWS_AS(canonical_spec("zn:4 "), ParseError);
    CHECK_THROWS_AS(canonical_spec("frob:3"), ParseError);
    CHECK_THROWS_AS(canonical_spec("gf:6"), ParseError);   // 6 is not a prime power
    CHECK_THROWS_AS(canonical_spec("dual:0:zn:4"), ParseError);

    // explicit gf modulus: accepted iff irreducible over Z_p
    CHECK(construct_ring("gf:2:2:1,1,1")->size() == 4);    // x^2+x+1
    CHECK_THROWS_AS(construct_ring("gf:2:2:1,0,1"), NotIrreducible);  // x^2+1 = (x+1)^2
}

TEST_CASE("triangular and matrix specs parse at top level and nested") {
    // "ut:" shares a suffix with "mat:"; both must work in either position
    RingHandle ut = construct_ring("ut:2:gf:2");
    CHECK(ut->size() == 8);
    CHECK(ut->characteristic() == 2);
    CHECK_FALSE(ut->commutative());

    RingHandle mat = construct_ring("mat:2:gf:2");
    CHECK(mat->size() == 16);
    CHECK_FALSE(mat->commutative());

    CHECK(construct_ring("dual:1:ut:2:gf:2")->size() == 64);
    CHECK(construct_ring("dual:1:mat:2:gf:2")->size() == 256);
    CHECK(construct_ring("prod:ut:2:gf:2+gf:2")->size() == 16);
}

TEST_CASE("sizes, characteristic, and commutativity across the grammar") {
    struct Row {
        const char* spec;
        std::size_t size;
        std::uint64_t chr;
        bool comm;
    };
    const Row rows[] = {
        {"zn:4", 4, 4, true},           {"zn:9", 9, 9, true},
        {"gf:4", 4, 2, true},           {"gf:3", 3, 3, true},
        {"prod:gf:2+gf:2", 4, 2, true}, {"dual:1:zn:4", 16, 4, true},
        {"dual:2:gf:2", 8, 2, true},    {"dual:1:dual:1:ut:2:gf:2", 4096, 2, false},
    };
    for (const Row& row : rows) {
        CAPTURE(row.spec);
        RingHandle r = construct_ring(row.spec);
        CHECK(r->size() == row.size);
        CHECK(r->characteristic() == row.chr);
        CHECK(r->commutative() == row.comm);
    }
}

TEST_CASE("ring axioms hold exhaustively on the desk-scale corpus") {
    for (const char* spec : {"zn:8", "gf:4", "ut:2:gf:2", "mat:2:gf:2", "prod:gf:2+gf:2"}) {
        CAPTURE(spec);
        RingHandle r = construct_ring(spec);
        Report rep = validate_axioms(r, "exhaustive");
        CHECK(rep.passed());
        CHECK(rep.mode == "exhaustive");
    }
}

TEST_CASE("dual rings follow the componentwise arithmetic rules") {
    RingHandle d = construct_ring("dual:2:zn:4");
    const DualRing* dr = as_dual(*d);
    REQUIRE(dr != nullptr);
    RingHandle base = dr->base();
    REQUIRE(base->size() == 4);
    REQUIRE(d->size() == 64);

    SUBCASE("encode/decode round trip") {
        for (Elem x = 0; x < d->size(); ++x) {
            std::vector<Elem> parts = dr->decode(x);
            REQUIRE(parts.size() == 3);
            CHECK(dr->encode(parts[0], {parts[1], parts[2]}) == x);
        }
    }

    SUBCASE("multiplication kills all products of nilpotent generators") {
        Elem b1 = dr->encode(0, {1, 0});
        Elem b2 = dr->encode(0, {0, 1});
        CHECK(d->mul(b1, b1) == d->zero());
        CHECK(d->mul(b2, b2) == d->zero());
        CHECK(d->mul(b1, b2) == d->zero());
        CHECK(d->mul(b2, b1) == d->zero());
    }

    SUBCASE("product rule (a0*b0, a0*bi + ai*b0) against direct computation") {
        for (Elem x = 0; x < d->size(); ++x) {
            std::vector<Elem> a = dr->decode(x);
            for (Elem y = 0; y < d->size(); ++y) {
                std::vector<Elem> b = dr->decode(y);
                Elem expect = dr->encode(
                    base->mul(a[0], b[0]),
                    {base->add(base->mul(a[0], b[1]), base->mul(a[1], b[0])),
                     base->add(base->mul(a[0], b[2]), base->mul(a[2], b[0]))});
                REQUIRE(d->mul(x, y) == expect);
            }
        }
    }

    SUBCASE("base ring embeds as the low indices") {
        for (Elem a = 0; a < base->size(); ++a)
            for (Elem b = 0; b < base->size(); ++b) {
                CHECK(d->add(a, b) == base->add(a, b));
                CHECK(d->mul(a, b) == base->mul(a, b));
            }
    }

    SUBCASE("free helpers agree and reject foreign rings") {
        Elem x = dr->encode(3, {1, 2});
        CHECK(dual_decompose(*d, x) == std::vector<Elem>{3, 1, 2});
        CHECK(dual_compose(*d, 3, {1, 2}) == x);
        RingHandle zn = construct_ring("zn:4");
        CHECK_THROWS_AS(dual_decompose(*zn, 1), WrongRing);
        CHECK_THROWS_AS(dual_compose(*d, 0, {1}), WrongRing);  // needs k components
    }
}

TEST_CASE("units and inverses") {
    SUBCASE("zn:8 has the odd residues as units") {
        RingHandle r = construct_ring("zn:8");
        CHECK(unit_set(*r) == std::vector<Elem>{1, 3, 5, 7});
        CHECK(inverse(*r, 3) == 3);  // 3*3 = 9 = 1
        CHECK(inverse(*r, 7) == 7);
        CHECK_THROWS_AS(inverse(*r, 2), NotAUnit);
        CHECK_THROWS_AS(inverse(*r, 0), NotAUnit);
    }
    SUBCASE("mat:2:gf:2 has the six invertible matrices") {
        RingHandle r = construct_ring("mat:2:gf:2");
        std::vector<Elem> units = unit_set(*r);
        CHECK(units.size() == 6);  // |GL_2(F_2)|
        for (Elem u : units) {
            Elem v = inverse(*r, u);
            CHECK(r->mul(u, v) == r->one());
            CHECK(r->mul(v, u) == r->one());
        }
    }
    SUBCASE("dual elements are units exactly when the pure part is") {
        RingHandle d = construct_ring("dual:1:zn:4");
        const DualRing* dr = as_dual(*d);
        std::vector<std::uint8_t> base_units = unit_mask(*dr->base());
        std::vector<std::uint8_t> dual_units = unit_mask(*d);
        for (Elem x = 0; x < d->size(); ++x)
            CHECK(static_cast<bool>(dual_units[x]) ==
                  static_cast<bool>(base_units[dr->decode(x)[0]]));
    }
}

TEST_CASE("center and Jacobson radical") {
    SUBCASE("full matrices: scalar center, trivial radical") {
        RingHandle r = construct_ring("mat:2:gf:2");
        CHECK(center(*r).size() == 2);
        CHECK(jacobson_radical(*r) == std::vector<Elem>{0});
    }
    SUBCASE("triangular matrices: strictly upper radical") {
        RingHandle r = construct_ring("ut:2:gf:2");
        CHECK(center(*r).size() == 2);
        std::vector<Elem> j = jacobson_radical(*r);
        REQUIRE(j.size() == 2);
        for (Elem x : j) CHECK(r->mul(x, x) == r->zero());
    }
    SUBCASE("zn:8: radical is 2Z_8 with nilpotency three") {
        RingHandle r = construct_ring("zn:8");
        std::vector<Elem> j = jacobson_radical(*r);
        CHECK(j == std::vector<Elem>{0, 2, 4, 6});
        CHECK(nilpotency_index(*r, j) == 3);
    }
    SUBCASE("products of fields are semisimple") {
        RingHandle r = construct_ring("prod:gf:2+gf:2");
        CHECK(jacobson_radical(*r) == std::vector<Elem>{0});
    }
}

TEST_CASE("chain structure analysis") {
    SUBCASE("zn:8 is a chain ring of length three") {
        RingHandle r = construct_ring("zn:8");
        ChainInfo info = chain_analysis(*r);
        CHECK(info.is_local);
        CHECK(info.is_chain);
        CHECK(info.N == 3);
        CHECK(info.e == 1);
        CHECK(info.q == 2);
        CHECK(info.p == 2);
        CHECK(info.c == 3);
        REQUIRE(info.t.has_value());
        // the maximal ideal is generated by t on both sides
        Elem t = *info.t;
        std::vector<Elem> tr;
        for (Elem a = 0; a < r->size(); ++a) tr.push_back(r->mul(t, a));
        std::sort(tr.begin(), tr.end());
        tr.erase(std::unique(tr.begin(), tr.end()), tr.end());
        CHECK(tr == info.max_ideal);

        std::vector<std::vector<Elem>> powers = ideal_powers(*r, info);
        REQUIRE(powers.size() == 4);
        CHECK(powers[0].size() == 8);
        CHECK(powers[1].size() == 4);
        CHECK(powers[2].size() == 2);
        CHECK(powers[3] == std::vector<Elem>{0});
    }
    SUBCASE("zn:9 is a chain ring of length two") {
        ChainInfo info = chain_analysis(*construct_ring("zn:9"));
        CHECK(info.is_chain);
        CHECK(info.N == 2);
        CHECK(info.q == 3);
        CHECK(info.p == 3);
        CHECK(info.c == 2);
    }
    SUBCASE("fields are chain rings with trivial maximal ideal") {
        ChainInfo info = chain_analysis(*construct_ring("gf:4"));
        CHECK(info.is_chain);
        CHECK(info.N == 1);
        CHECK(info.q == 4);
        CHECK(info.max_ideal == std::vector<Elem>{0});
        CHECK_FALSE(info.e.has_value());  // characteristic is already prime
    }
    SUBCASE("non-local rings are flagged") {
        CHECK_FALSE(chain_analysis(*construct_ring("ut:2:gf:2")).is_local);
        CHECK_FALSE(chain_analysis(*construct_ring("mat:2:gf:2")).is_local);
        CHECK_FALSE(chain_analysis(*construct_ring("prod:gf:2+gf:2")).is_local);
    }
    SUBCASE("dual of zn:4 is local but not chain") {
        ChainInfo info = chain_analysis(*construct_ring("dual:1:zn:4"));
        CHECK(info.is_local);
        CHECK_FALSE(info.is_chain);  // maximal ideal needs two generators
    }
}

TEST_CASE("additive orders match the chain formula") {
    RingHandle r = construct_ring("zn:8");
    ChainInfo info = chain_analysis(*r);
    const std::uint64_t expected[] = {1, 8, 4, 8, 2, 8, 4, 8};
    for (Elem x = 0; x < r->size(); ++x) {
        AdditiveOrder ao = additive_order(*r, x, info);
        CAPTURE(x);
        CHECK(ao.order == expected[x]);
        REQUIRE(ao.formula.has_value());
        CHECK(ao.agree);
    }
    RingHandle r9 = construct_ring("zn:9");
    ChainInfo info9 = chain_analysis(*r9);
    CHECK(additive_order(*r9, 3, info9).order == 3);
    CHECK(additive_order(*r9, 1, info9).order == 9);
}

TEST_CASE("quotient rings collapse a two-sided ideal") {
    RingHandle r = construct_ring("zn:8");
    SUBCASE("Z8 / (4) behaves like Z4") {
        std::vector<Elem> proj;
        RingHandle q = quotient_ring(r, {0, 4}, &proj);
        REQUIRE(q->size() == 4);
        CHECK(q->characteristic() == 4);
        CHECK(chain_analysis(*q).N == 2);
        REQUIRE(proj.size() == 8);
        for (Elem a = 0; a < 8; ++a)
            for (Elem b = 0; b < 8; ++b) {
                CHECK(q->add(proj[a], proj[b]) == proj[r->add(a, b)]);
                CHECK(q->mul(proj[a], proj[b]) == proj[r->mul(a, b)]);
            }
    }
    SUBCASE("Z8 / J is the residue field") {
        RingHandle q = quotient_ring(r, jacobson_radical(*r));
        CHECK(q->size() == 2);
        CHECK(q->characteristic() == 2);
    }
}

TEST_CASE("sum-of-units reachability") {
    CHECK(sum_of_units_reachable(*construct_ring("zn:4")));
    CHECK(sum_of_units_reachable(*construct_ring("gf:2")));
    CHECK(sum_of_units_reachable(*construct_ring("mat:2:gf:2")));
    CHECK_FALSE(sum_of_units_reachable(*construct_ring("ut:2:gf:2")));
    CHECK_FALSE(sum_of_units_reachable(*construct_ring("prod:gf:2+gf:2")));
}

TEST_CASE("semicommutativity: ab = 0 forces arb = 0 on zn:8 but not on matrices") {
    SemiCommutativity ok = semicommutativity_check(*construct_ring("zn:8"));
    CHECK(ok.holds);
    CHECK(ok.exhaustive);

    RingHandle m = construct_ring("mat:2:gf:2");
    SemiCommutativity bad = semicommutativity_check(*m);
    CHECK_FALSE(bad.holds);
    REQUIRE(bad.witness.has_value());
    auto [a, b, mid] = *bad.witness;
    CHECK(m->mul(a, b) == m->zero());
    CHECK(m->mul(m->mul(a, mid), b) != m->zero());
}

TEST_CASE("construction budgets cap ring size") {
    ConstructOptions opt;
    opt.budget.elements = 100;
    CHECK_THROWS_AS(construct_ring("zn:101", opt), BudgetExceeded);
    CHECK_THROWS_AS(construct_ring("dual:1:zn:16", opt), BudgetExceeded);  // 256 > 100
    CHECK(construct_ring("zn:100", opt)->size() == 100);
}

TEST_CASE("storage policy: small rings get tables, duals stay structural") {
    CHECK(construct_ring("zn:8")->storage() == "materialized-tables");
    RingHandle d = construct_ring("dual:1:zn:4");
    CHECK(d->storage() == "structural");
    CHECK(d->add_table() == nullptr);

    ConstructOptions opt;
    opt.materialize = 1;
    RingHandle dm = construct_ring("dual:1:zn:4", opt);
    REQUIRE(dm->add_table() != nullptr);
    REQUIRE(dm->mul_table() != nullptr);
    for (Elem a = 0; a < dm->size(); ++a)
        for (Elem b = 0; b < dm->size(); ++b) {
            CHECK(dm->add_table()[a * dm->size() + b] == d->add(a, b));
            CHECK(dm->mul_table()[a * dm->size() + b] == d->mul(a, b));
        }
}

TEST_CASE("additive radices describe the index encoding") {
    CHECK(additive_radices("zn:4") == std::vector<std::uint32_t>{4});
    CHECK(additive_radices("gf:4") == std::vector<std::uint32_t>{2, 2});
    CHECK(additive_radices("ut:2:gf:2") == std::vector<std::uint32_t>{2, 2, 2});
    CHECK(additive_radices("dual:1:zn:4") == std::vector<std::uint32_t>{4, 4});
    // the second product factor occupies the low digits
    CHECK(additive_radices("prod:gf:2+zn:4") == std::vector<std::uint32_t>{4, 2});
    CHECK_FALSE(additive_radices("quot:zn:8:2").has_value());

    // addition really is digit-wise in those radices
    for (const char* spec : {"dual:1:zn:4", "prod:gf:2+zn:4"}) {
        CAPTURE(spec);
        RingHandle r = construct_ring(spec);
        auto radices = *additive_radices(r->spec());
        auto digits = [&](Elem x) {
            std::vector<std::uint32_t> out;
            for (std::uint32_t m : radices) {
                out.push_back(x % m);
                x = static_cast<Elem>(x / m);
            }
            return out;
        };
        for (Elem a = 0; a < r->size(); ++a)
            for (Elem b = 0; b < r->size(); ++b) {
                auto da = digits(a), db = digits(b), ds = digits(r->add(a, b));
                for (std::size_t i = 0; i < radices.size(); ++i)
                    REQUIRE(ds[i] == (da[i] + db[i]) % radices[i]);
            }
    }
}

TEST_CASE("table cache: warm loads reproduce the ring") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ringlab_test_ring_cache";
    fs::remove_all(dir);
    fs::create_directories(dir);

    ConstructOptions opt;
    opt.cache_dir = dir.string();
    RingHandle cold = construct_ring("mat:2:gf:2", opt);
    CHECK_FALSE(fs::is_empty(dir));
    RingHandle warm = construct_ring("mat:2:gf:2", opt);
    RingHandle plain = construct_ring("mat:2:gf:2");
    CHECK(warm->size() == plain->size());
    CHECK(warm->one() == plain->one());
    for (Elem a = 0; a < plain->size(); ++a)
        for (Elem b = 0; b < plain->size(); ++b) {
            REQUIRE(warm->add(a, b) == plain->add(a, b));
            REQUIRE(warm->mul(a, b) == plain->mul(a, b));
        }
    CHECK(cold->spec() == warm->spec());
    fs::remove_all(dir);
}
