#include <catch2/catch_amalgamated.hpp>

#include "coxpander/numring.hpp"

using namespace coxpander;

namespace {

// deterministic generator for property checks
struct Rng {
    uint64_t s = 0x243f6a8885a308d3ull;
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    int range(int lo, int hi) { return lo + int(next() % uint64_t(hi - lo + 1)); }
};

RingElem random_elem(const Ring& R, Rng& rng, int span = 9) {
    RingElem e(R.degree);
    for (auto& c : e) e[&c - e.data()] = rng.range(-span, span);
    return e;
}

}  // namespace

TEST_CASE("minimal polynomials of 2cos(pi/L)") {
    auto coeffs = [](const Ring& R) {
        std::vector<long long> out;
        for (const auto& c : R.minpoly) out.push_back(c.convert_to<long long>());
        return out;
    };
    CHECK(coeffs(make_ring(1)) == std::vector<long long>{2, 1});
    CHECK(coeffs(make_ring(2)) == std::vector<long long>{0, 1});
    CHECK(coeffs(make_ring(3)) == std::vector<long long>{-1, 1});
    CHECK(coeffs(make_ring(4)) == std::vector<long long>{-2, 0, 1});
    CHECK(coeffs(make_ring(5)) == std::vector<long long>{-1, -1, 1});
    CHECK(coeffs(make_ring(6)) == std::vector<long long>{-3, 0, 1});
    CHECK(coeffs(make_ring(7)) == std::vector<long long>{1, -2, -1, 1});
    CHECK(coeffs(make_ring(12)) == std::vector<long long>{1, 0, -4, 0, 1});
    CHECK(coeffs(make_ring(15)) == std::vector<long long>{1, -4, -4, 1, 1});
    CHECK(make_ring(5).degree == 2);
    CHECK(make_ring(15).degree == 4);
}

TEST_CASE("minimal polynomial is monic with the right numeric root") {
    for (int L : {3, 4, 5, 7, 9, 12, 15, 20, 21, 30}) {
        Ring R = make_ring(L);
        CHECK(R.minpoly.back() == 1);
        double acc = 0;
        const double theta = 2.0 * std::cos(M_PI / L);
        for (int i = R.degree; i >= 0; --i) acc = acc * theta + R.minpoly[i].convert_to<double>();
        CHECK(std::abs(acc) < 1e-10);
    }
}

TEST_CASE("embed_label basics") {
    Ring R5 = make_ring(5);
    CHECK(embed_label(R5, 2) == ring_from_int(R5, 0));
    // theta = phi = (1+sqrt5)/2 in the conductor-5 ring
    CHECK(embed_label(R5, 5) == ring_theta(R5));
    CHECK(std::abs(ring_numeric(R5, embed_label(R5, 5)) - (1 + std::sqrt(5.0)) / 2) < 1e-12);

    Ring R15 = make_ring(15);
    CHECK(std::abs(ring_numeric(R15, embed_label(R15, 3)) - 1.0) < 1e-12);
    CHECK(std::abs(ring_numeric(R15, embed_label(R15, 5)) - 2 * std::cos(M_PI / 5)) < 1e-12);
    CHECK(std::abs(ring_numeric(R15, embed_label(R15, 15)) - 2 * std::cos(M_PI / 15)) < 1e-12);

    Ring R4 = make_ring(4);
    CHECK(std::abs(ring_numeric(R4, embed_label(R4, 4)) - std::sqrt(2.0)) < 1e-12);

    CHECK(embed_label(R5, kInfLabel) == ring_from_int(R5, 2));
    CHECK_THROWS_AS(embed_label(R5, 4), DomainError);
}

TEST_CASE("ring arithmetic commutes with the numeric embedding") {
    Rng rng;
    for (int L : {5, 7, 12, 15}) {
        Ring R = make_ring(L);
        for (int it = 0; it < 50; ++it) {
            RingElem a = random_elem(R, rng), b = random_elem(R, rng);
            double lhs = ring_numeric(R, ring_mul(R, a, b));
            double rhs = ring_numeric(R, a) * ring_numeric(R, b);
            CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
            CHECK(std::abs(ring_numeric(R, ring_add(a, b)) -
                           (ring_numeric(R, a) + ring_numeric(R, b))) < 1e-9);
        }
    }
}

TEST_CASE("certified sign agrees with numerics and zero is exact") {
    Ring R = make_ring(5);
    CHECK(ring_sign(R, ring_zero(R)) == 0);
    CHECK(ring_sign(R, ring_from_int(R, 7)) == 1);
    CHECK(ring_sign(R, ring_from_int(R, -7)) == -1);
    // phi^2 - phi - 1 = 0 exactly
    RingElem phi = ring_theta(R);
    RingElem expr = ring_sub(ring_sub(ring_mul(R, phi, phi), phi), ring_from_int(R, 1));
    CHECK(ring_sign(R, expr) == 0);
    // 2 - phi > 0, 1 - phi < 0
    CHECK(ring_sign(R, ring_sub(ring_from_int(R, 2), phi)) == 1);
    CHECK(ring_sign(R, ring_sub(ring_from_int(R, 1), phi)) == -1);
}

TEST_CASE("reduction mod p is a ring homomorphism") {
    Rng rng;
    for (int L : {5, 7, 15}) {
        Ring R = make_ring(L);
        for (uint32_t p : {3u, 5u, 7u, 11u, 13u, 31u, 97u}) {
            for (ModMode mode : {ModMode::FullRing, ModMode::ResidueField}) {
                ModRing M = make_mod_ring(R, p, mode);
                for (int it = 0; it < 30; ++it) {
                    RingElem a = random_elem(R, rng), b = random_elem(R, rng);
                    CHECK(reduce_mod(R, M, ring_add(a, b)) ==
                          mod_add(M, reduce_mod(R, M, a), reduce_mod(R, M, b)));
                    CHECK(reduce_mod(R, M, ring_mul(R, a, b)) ==
                          mod_mul(M, reduce_mod(R, M, a), reduce_mod(R, M, b)));
                }
            }
        }
    }
}

TEST_CASE("phi mod 2 is rejected, phi mod small primes behaves") {
    Ring R = make_ring(5);
    CHECK_THROWS_AS(make_mod_ring(R, 2), DomainError);
    CHECK_THROWS_AS(make_mod_ring(R, 9), DomainError);
    // full ring mod 3: x^2-x-1 irreducible (F_9)
    ModRing M3 = make_mod_ring(R, 3, ModMode::FullRing);
    CHECK(M3.degree == 2);
    CHECK(M3.is_field);
    // mod 5: ramified, residue field F_5
    ModRing M5 = make_mod_ring(R, 5, ModMode::ResidueField);
    CHECK(M5.degree == 1);
    // mod 11: split, residue field F_11; full ring is not a field
    ModRing M11r = make_mod_ring(R, 11, ModMode::ResidueField);
    CHECK(M11r.degree == 1);
    ModRing M11f = make_mod_ring(R, 11, ModMode::FullRing);
    CHECK(M11f.degree == 2);
    CHECK_FALSE(M11f.is_field);
    // phi mod a prime: coordinates reduce componentwise in the full ring
    ModRing M7 = make_mod_ring(R, 7, ModMode::FullRing);
    RingElem e{Int(-3), Int(12)};
    ModElem r = reduce_mod(R, M7, e);
    CHECK(r == ModElem{4, 5});
}

TEST_CASE("reduce(phi)^2 = reduce(phi^2) mod 5") {
    Ring R = make_ring(5);
    ModRing M = make_mod_ring(R, 5, ModMode::ResidueField);
    RingElem phi = ring_theta(R);
    CHECK(reduce_mod(R, M, ring_mul(R, phi, phi)) ==
          mod_mul(M, reduce_mod(R, M, phi), reduce_mod(R, M, phi)));
}
