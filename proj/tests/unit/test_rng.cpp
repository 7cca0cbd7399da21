#include <doctest.h>

#include <cmath>
#include <set>

#include "juniward/rng.hpp"

using namespace juniward;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using C = Philox4x32::Counter;
    // Random123 kat_vectors: zero counter and key.
    CHECK(Philox4x32(0)(C{0, 0, 0, 0}) == C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    // All-ones counter and key.
    CHECK(Philox4x32(0xffffffffffffffffull)(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}) ==
          C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    // Digits of pi.
    CHECK(Philox4x32(0x299f31d0a4093822ull)(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}) ==
          C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("uniform draws are in [0,1), coordinate-keyed and roughly uniform") {
    CHECK(uniform_at(7, 3, 4, RngStream::Embedding) == uniform_at(7, 3, 4, RngStream::Embedding));
    CHECK(uniform_at(7, 3, 4, RngStream::Embedding) != uniform_at(7, 3, 4, RngStream::Texture));
    CHECK(uniform_at(7, 3, 4, RngStream::Embedding) != uniform_at(8, 3, 4, RngStream::Embedding));
    CHECK(uniform_at(7, 3, 4, RngStream::Embedding) != uniform_at(7, 4, 3, RngStream::Embedding));

    double sum = 0.0;
    std::set<double> distinct;
    const int n = 200 * 200;
    for (std::uint32_t r = 0; r < 200; ++r) {
        for (std::uint32_t c = 0; c < 200; ++c) {
            const double u = uniform_at(1, r, c, RngStream::Test);
            REQUIRE(u >= 0.0);
            REQUIRE(u < 1.0);
            sum += u;
            distinct.insert(u);
        }
    }
    // Mean of U[0,1) has sd 1/sqrt(12 n).
    CHECK(std::abs(sum / n - 0.5) <= 4.0 / std::sqrt(12.0 * n));
    CHECK(distinct.size() == static_cast<std::size_t>(n));
}
