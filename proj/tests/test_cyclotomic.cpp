#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fwb/certificates.hpp"
#include "fwb/cyclotomic.hpp"

using namespace fwb;

TEST_CASE("roots of unity, canonical reductions") {
    CHECK(Cyc::rootOfUnity(1, 0) == Cyc::one());
    CHECK(Cyc::rootOfUnity(4, 2) == Cyc::fromInt(-1));
    // 1 + z3 + z3^2 = 0, so z3 + z3^2 = -1.
    Cyc s = Cyc::rootOfUnity(3, 1) + Cyc::rootOfUnity(3, 2);
    CHECK(s == Cyc::fromInt(-1));
    // z8 * z8 = z4, across-conductor equality included.
    CHECK(Cyc::rootOfUnity(8, 1) * Cyc::rootOfUnity(8, 1) == Cyc::rootOfUnity(4, 1));
    // Conductor 2 mod 4 collapses: zeta_6 lives in Q(zeta_3).
    CHECK(Cyc::rootOfUnity(6, 1).conductor() == 3);
    CHECK(Cyc::rootOfUnity(6, 1) == -Cyc::rootOfUnity(3, 2));
}

TEST_CASE("powers and N-th power identity over many conductors") {
    for (long long N : {2, 3, 4, 5, 7, 8, 9, 12, 15, 16, 24, 36, 45, 60, 81, 100, 120}) {
        Cyc z = Cyc::rootOfUnity(N, 1);
        Cyc pow = Cyc::one();
        for (long long i = 0; i < N; ++i) pow = pow * z;
        CHECK(pow == Cyc::one());
    }
}

TEST_CASE("hand-reduced product in Q(zeta_5)") {
    // (z + z^4)(z^2 + z^3) expands to z^3 + z^4 + z^6 + z^7 = z + z^2 + z^3 + z^4 = -1,
    // and in the power basis -1 - (z + z^4) equals z^2 + z^3.
    Cyc a = Cyc::rootOfUnity(5, 1) + Cyc::rootOfUnity(5, 4);
    Cyc b = Cyc::rootOfUnity(5, 2) + Cyc::rootOfUnity(5, 3);
    CHECK(a * b == Cyc::fromInt(-1));
    CHECK(b == Cyc::fromInt(-1) - a);
}

TEST_CASE("as_rational") {
    Cyc v = Cyc::one() + Cyc::rootOfUnity(3, 1) + Cyc::rootOfUnity(3, 2) + Cyc::fromInt(5);
    REQUIRE(v.asRational().has_value());
    CHECK(*v.asRational() == Rat(5));
    CHECK(!Cyc::rootOfUnity(8, 1).asRational().has_value());
    Cyc full;
    for (int k = 1; k <= 6; ++k) full += Cyc::rootOfUnity(7, k);
    CHECK(*full.asRational() == Rat(-1));
}

TEST_CASE("conjugation and reality") {
    for (long long N : {5, 8, 12, 20}) {
        for (long long k = 1; k < N; ++k) {
            Cyc z = Cyc::rootOfUnity(N, k);
            CHECK(z.conj() == Cyc::rootOfUnity(N, N - k));
            Cyc norm = z * z.conj();
            CHECK(norm == Cyc::one());
            CHECK((z + z.conj()).isReal());
        }
    }
}

TEST_CASE("division and inverse") {
    Cyc a = Cyc::rootOfUnity(7, 2) + Cyc::fromInt(3);
    Cyc inv = a.inverse();
    CHECK(a * inv == Cyc::one());
    Cyc b = Cyc::rootOfUnity(12, 5) - Cyc::fromInt(2);
    CHECK((a / b) * b == a);
    CHECK_THROWS_AS(a / Cyc::zero(), DivisionByZero);
}

TEST_CASE("conductor growth bounded by lcm and products stay in the field") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        long long N = 2 + rng.below(118);
        Cyc z = Cyc::rootOfUnity(N, 1 + rng.below(N - 1));
        Cyc acc = Cyc::one();
        for (int i = 0; i < 5; ++i) acc = acc * z;
        CHECK(N % acc.conductor() == 0);
        Cyc zN = Cyc::one();
        for (long long i = 0; i < N; ++i) zN = zN * z;
        CHECK(zN == Cyc::one());
    }
}

TEST_CASE("normalized descends to minimal conductor") {
    // z12^3 = i has conductor 4.
    Cyc v = Cyc::rootOfUnity(12, 3);
    CHECK(v.conductor() == 4);
    // (z12 + z12^11) = 2cos(pi/6) = sqrt(3), conductor 12.
    Cyc s3 = Cyc::rootOfUnity(12, 1) + Cyc::rootOfUnity(12, 11);
    CHECK(s3 * s3 == Cyc::fromInt(3));
    // A sum landing in a subfield: z15^5 + z15^10 = z3 + z3^2 = -1.
    Cyc w = Cyc::rootOfUnity(15, 5) + Cyc::rootOfUnity(15, 10);
    CHECK(w.normalized().conductor() == 1);
    CHECK(w == Cyc::fromInt(-1));
    // Embedded rational comes back down.
    Cyc e = Cyc::fromInt(7).embedded(20);
    CHECK(e.normalized().conductor() == 1);
}

TEST_CASE("sqrt embeddings square to the radicand") {
    for (long long r : {1, 2, 3, 5, 6, 7, 8, 10, 12, 13, 15, 18, 30}) {
        Cyc s = Cyc::sqrtOfInt(r);
        CHECK(s * s == Cyc::fromInt(r));
        CHECK(signOfReal(s) == 1);
    }
}

TEST_CASE("sign certificates") {
    CHECK(signOfReal(Cyc::fromRational(Rat(-3, 7))) == -1);
    // 2cos(2pi/5) = (sqrt(5)-1)/2 > 0
    Cyc c5 = Cyc::rootOfUnity(5, 1) + Cyc::rootOfUnity(5, 4);
    CHECK(signOfReal(c5) == 1);
    // 2cos(4pi/5) < 0
    Cyc c52 = Cyc::rootOfUnity(5, 2) + Cyc::rootOfUnity(5, 3);
    CHECK(signOfReal(c52) == -1);
    CHECK(floorOfReal(c5) == 0);
    CHECK(floorOfReal(c5 + Cyc::fromInt(2)) == 2);
    // Exact integers are recognized.
    CHECK(floorOfReal(Cyc::sqrtOfInt(4)) == 2);
    // sqrt(2)*sqrt(3) = sqrt(6)
    CHECK(Cyc::sqrtOfInt(2) * Cyc::sqrtOfInt(3) == Cyc::sqrtOfInt(6));
}

TEST_CASE("a conj(a) is real and nonnegative for random sums of roots") {
    Rng rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        long long N = 3 + rng.below(37);
        Cyc a;
        for (int i = 0; i < 4; ++i)
            a += Cyc::rootOfUnity(N, rng.below(N)).scaledBy(Rat(rng.below(7) - 3));
        Cyc n = a * a.conj();
        CHECK(n.isReal());
        if (!n.isZero()) CHECK(signOfReal(n) == 1);
    }
}
