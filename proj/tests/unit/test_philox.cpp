#include <doctest.h>

#include <cmath>

#include "repower/philox.hpp"

using namespace repower;

TEST_SUITE("philox")
{
    // Known-answer vectors of the Random123 reference implementation.
    TEST_CASE("known answers")
    {
        CHECK(Philox4x32::generate({0, 0, 0, 0}, {0, 0}) ==
              Philox4x32::Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
        CHECK(Philox4x32::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                   {0xffffffff, 0xffffffff}) ==
              Philox4x32::Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
        CHECK(Philox4x32::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                   {0xa4093822, 0x299f31d0}) ==
              Philox4x32::Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
    }

    TEST_CASE("streams are reproducible and distinct")
    {
        StreamRng a(7, 3), b(7, 3), c(7, 4), d(7, 3, 1);
        for (int i = 0; i < 100; ++i) {
            const double x = a.uniform();
            CHECK(x == b.uniform());
            CHECK(x != c.uniform());
            CHECK(x != d.uniform());
            CHECK(x > 0.0);
            CHECK(x < 1.0);
        }
    }

    TEST_CASE("normal moments")
    {
        StreamRng rng(123, 0);
        const int n = 200000;
        double s = 0, s2 = 0;
        for (int i = 0; i < n; ++i) {
            const double z = rng.normal();
            s += z;
            s2 += z * z;
        }
        const double mean = s / n;
        CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
        CHECK(std::abs(s2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
    }
}
