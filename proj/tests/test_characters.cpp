#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "charsum/characters.hpp"
#include "charsum/cyclotomic.hpp"

using namespace charsum;

TEST_CASE("eval") {
    auto ctx = ModulusContext::get(5, 2);
    Character chi0 = principal_character(ctx);
    for (i64 x : {1, 2, 3, 7, 24}) {
        auto v = chi0.eval(x);
        CHECK_FALSE(v.zero);
        CHECK(v.exp_phi == 0);
    }
    Character chi = generator_character(ctx);
    auto v = chi.eval(7);
    CHECK_FALSE(v.zero);
    CHECK(v.exp_phi == 5);  // ind(7) = 5
    CHECK(v.phi == 20);
    CHECK(v.exp_ring == 25);  // scaled by N/phi = p
    CHECK(v.ring_order == 100);
    CHECK(chi.eval(10).zero);
    CHECK(chi.eval(0).zero);
}

TEST_CASE("eval is completely multiplicative on units") {
    for (auto [p, m] : std::vector<std::pair<i64, int>>{{5, 2}, {3, 4}, {7, 2}}) {
        auto ctx = ModulusContext::get(p, m);
        Character chi(ctx, 3 % ctx->phi());
        const i64 q = ctx->q();
        for (i64 x = 1; x < q; ++x) {
            if (x % p == 0) continue;
            for (i64 y = x; y < q; y += 7) {
                if (y % p == 0) continue;
                auto vx = chi.eval(x), vy = chi.eval(y), vxy = chi.eval(mul_mod(x, y, q));
                CHECK(vxy.exp_phi == mod_floor(vx.exp_phi + vy.exp_phi, ctx->phi()));
            }
        }
    }
}

TEST_CASE("is_primitive and conductor") {
    auto p5m1 = ModulusContext::get(5, 1);
    CHECK_FALSE(Character(p5m1, 0).is_primitive());
    CHECK(Character(p5m1, 1).is_primitive());
    CHECK(Character(p5m1, 1).conductor() == 1);
    CHECK(Character(p5m1, 0).conductor() == 0);

    auto p5m2 = ModulusContext::get(5, 2);
    CHECK_FALSE(Character(p5m2, 5).is_primitive());  // 5 | c
    CHECK(Character(p5m2, 1).is_primitive());
    CHECK(Character(p5m2, 0).conductor() == 0);
    CHECK(Character(p5m2, 5).conductor() == 1);

    auto p5m3 = ModulusContext::get(5, 3);
    CHECK(Character(p5m3, 10).conductor() == 2);  // v_5(10) = 1, phi = 100
    CHECK(Character(p5m3, 25).conductor() == 1);  // c = p^(m-1) u
    CHECK(Character(p5m3, 4).conductor() == 3);
}

TEST_CASE("conductor matches the definition by exhaustion") {
    // smallest j such that chi only depends on x mod p^j
    for (auto [p, m] : std::vector<std::pair<i64, int>>{{3, 3}, {5, 2}, {7, 2}}) {
        auto ctx = ModulusContext::get(p, m);
        const i64 q = ctx->q();
        for (i64 c = 0; c < ctx->phi(); ++c) {
            Character chi(ctx, c);
            int j = 0;
            for (; j <= m; ++j) {
                i64 pj = 1;
                for (int i = 0; i < j; ++i) pj *= p;
                bool factors = true;
                for (i64 x = 1; x < q && factors; ++x) {
                    if (x % p == 0) continue;
                    i64 y = mod_floor(x + pj, q);
                    if (y % p == 0) continue;
                    if (chi.eval(x).exp_phi != chi.eval(y).exp_phi) factors = false;
                }
                if (factors) break;
            }
            CHECK(chi.conductor() == j);
        }
    }
}

TEST_CASE("kth_power_witness") {
    auto p5m1 = ModulusContext::get(5, 1);
    auto w0 = Character(p5m1, 0).kth_power_witness(3);
    REQUIRE(w0.has_value());
    CHECK(w0->exponent() == 0);
    CHECK_FALSE(Character(p5m1, 1).kth_power_witness(2).has_value());  // (2,4) = 2 does not divide 1
    auto w2 = Character(p5m1, 2).kth_power_witness(2);
    REQUIRE(w2.has_value());
    CHECK(w2->exponent() == 1);  // 3 also works; smallest returned
}

TEST_CASE("kth_power_witness agrees with exhaustive search") {
    for (auto [p, m] : std::vector<std::pair<i64, int>>{{5, 2}, {3, 4}, {7, 2}, {13, 1}}) {
        auto ctx = ModulusContext::get(p, m);
        const i64 phi = ctx->phi();
        REQUIRE(phi <= 5000);
        for (i64 k : {1, 2, 3, 4, 5, 6, 9, 10, 12}) {
            for (i64 c = 0; c < phi; c += (phi > 100 ? 7 : 1)) {
                Character chi(ctx, c);
                auto witness = chi.kth_power_witness(k);
                i64 found = -1;
                for (i64 c3 = 0; c3 < phi; ++c3) {
                    if (mod_floor(static_cast<i64>(static_cast<i128>(c3) * k % phi), phi) == c) {
                        found = c3;
                        break;
                    }
                }
                CAPTURE(p); CAPTURE(m); CAPTURE(k); CAPTURE(c);
                if (found < 0) {
                    CHECK_FALSE(witness.has_value());
                } else {
                    REQUIRE(witness.has_value());
                    CHECK(witness->exponent() == found);  // both are the smallest
                    CHECK(witness->pow(k) == chi);
                }
            }
        }
    }
}

TEST_CASE("product, power, inverse, conjugate") {
    auto ctx = ModulusContext::get(11, 1);  // phi = 10
    Character a(ctx, 3), b(ctx, 4);
    CHECK(a.mul(b).exponent() == 7);
    CHECK(a.mul(a.conjugate()).is_principal());
    CHECK(a.pow(ctx->phi()).is_principal());
    CHECK(a.pow(-1) == a.inverse());
    CHECK(a.inverse().exponent() == 7);
}

TEST_CASE("orthogonality: sum of chi over units vanishes exactly") {
    for (auto [p, m] : std::vector<std::pair<i64, int>>{{5, 2}, {3, 3}, {7, 1}}) {
        auto ctx = ModulusContext::get(p, m);
        const i64 N = ctx->ring_order();
        for (i64 c = 0; c < ctx->phi(); ++c) {
            Character chi(ctx, c);
            CycInt total(N);
            for (i64 x = 1; x < ctx->q(); ++x) {
                if (x % p == 0) continue;
                total.add_term(chi.eval(x).exp_ring, 1);
            }
            if (c == 0)
                CHECK(equals(total, CycInt::constant(N, ctx->phi())));
            else
                CHECK(is_zero(total));
        }
    }
}

TEST_CASE("enumerate_X") {
    auto p5m2 = ModulusContext::get(5, 2);
    // n = 0: the conductor condition is vacuous, all D characters appear
    {
        Character chi3(p5m2, 7);
        auto X = enumerate_X(chi3, 4, 0);
        CHECK(X.size() == 4);
        for (size_t i = 0; i < X.size(); ++i) CHECK(X[i].exponent() == static_cast<i64>(i) * 5);
    }
    // D = 1: [chi0] iff chi3 has small enough conductor
    {
        CHECK(enumerate_X(Character(p5m2, 5), 1, 1).size() == 1);  // conductor 1 <= m-n = 1
        CHECK(enumerate_X(Character(p5m2, 1), 1, 1).empty());      // conductor 2 > 1
    }
    // p=5, m=2, D=2, chi3 = chi0, n=1: c4 in {0, 10}, both have v_5 >= 1
    {
        auto X = enumerate_X(principal_character(p5m2), 2, 1);
        REQUIRE(X.size() == 2);
        CHECK(X[0].exponent() == 0);
        CHECK(X[1].exponent() == 10);
    }
}

TEST_CASE("enumerate_X equals the brute filter") {
    for (auto [p, m] : std::vector<std::pair<i64, int>>{{5, 2}, {3, 3}, {7, 2}}) {
        auto ctx = ModulusContext::get(p, m);
        const i64 phi = ctx->phi();
        for (i64 D : {1, 2, 3, 5, 7, 10, 15}) {
            if (phi % D != 0) continue;
            for (int n = 0; n < m; ++n) {
                for (i64 c3 = 0; c3 < phi; c3 += 3) {
                    Character chi3(ctx, c3);
                    auto X = enumerate_X(chi3, D, n);
                    std::vector<i64> expect;
                    for (i64 c4 = 0; c4 < phi; ++c4) {
                        Character chi4(ctx, c4);
                        bool torsion =
                            mod_floor(static_cast<i64>(static_cast<i128>(c4) * D % phi), phi) == 0;
                        if (torsion && chi3.mul(chi4).conductor() <= m - n) expect.push_back(c4);
                    }
                    std::vector<i64> got;
                    for (auto& chi4 : X) got.push_back(chi4.exponent());
                    CHECK(got == expect);
                    CHECK(static_cast<i64>(got.size()) <= D);
                }
            }
        }
    }
}

TEST_CASE("restrict_to_level round trips through induced characters") {
    auto ctx = ModulusContext::get(7, 3);
    Character chi(ctx, 98);  // v_7(98) = 2, conductor 1
    Character low = chi.restrict_to_level(1);
    CHECK(low.exponent() == 2);
    // the induced character agrees on units: equal as roots of unity
    for (i64 x = 1; x < 7; ++x) {
        auto vh = chi.eval(x);
        auto vl = low.eval(x);
        CHECK(mod_floor(vh.exp_phi * low.phi() - vl.exp_phi * chi.phi(), chi.phi() * low.phi()) == 0);
    }
    CHECK_THROWS_AS(Character(ctx, 1).restrict_to_level(2), UnsupportedSpec);
}
