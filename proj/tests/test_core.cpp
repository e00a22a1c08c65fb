#include <gtest/gtest.h>

#include <set>
#include <unordered_set>

#include "spacenet/core/errors.hpp"
#include "spacenet/core/rng.hpp"
#include "spacenet/core/types.hpp"

using namespace spacenet;

TEST(LinkId, NormalizesEndpointOrder) {
    const LinkId a(7, 3);
    const LinkId b(3, 7);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.a(), 3u);
    EXPECT_EQ(a.b(), 7u);
    EXPECT_EQ(a.other(3), 7u);
    EXPECT_EQ(a.other(7), 3u);
    EXPECT_TRUE(a.touches(7));
    EXPECT_FALSE(a.touches(4));
    EXPECT_EQ(std::hash<LinkId>{}(a), std::hash<LinkId>{}(b));
}

TEST(LinkId, RejectsSelfLoop) { EXPECT_THROW(LinkId(4, 4), std::invalid_argument); }

TEST(LinkId, StringRoundTrip) {
    const LinkId id(12, 5);
    EXPECT_EQ(id.str(), "5-12");
    EXPECT_EQ(LinkId::parse(id.str()), id);
    EXPECT_THROW(LinkId::parse("5"), MalformedLog);
    EXPECT_THROW(LinkId::parse("5-x"), MalformedLog);
    EXPECT_THROW(LinkId::parse("3-3"), MalformedLog);
}

TEST(LinkKind, StringRoundTrip) {
    for (const auto k : {LinkKind::Isl, LinkKind::Ill, LinkKind::GroundSpace, LinkKind::Terrestrial}) {
        EXPECT_EQ(link_kind_from_string(to_string(k)), k);
    }
    EXPECT_THROW(link_kind_from_string("laser"), ConfigError);
}

TEST(Rng, SameSeedSameStream) {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(Rng, UniformStaysInUnitInterval) {
    Rng rng(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Rng, MomentsMatchDistributions) {
    Rng rng(7);
    constexpr int n = 200000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(3.0, 2.0);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    EXPECT_NEAR(mean, 3.0, 0.03);
    EXPECT_NEAR(sq / n - mean * mean, 4.0, 0.08);

    double psum = 0.0;
    double pmin = 1e300;
    for (int i = 0; i < n; ++i) {
        const double x = rng.pareto(2.0, 3.0);
        psum += x;
        pmin = std::min(pmin, x);
    }
    EXPECT_GE(pmin, 2.0);
    EXPECT_NEAR(psum / n, 3.0, 0.05);  // shape * scale / (shape - 1)
}

TEST(Rng, BelowCoversRange) {
    Rng rng(3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 10000; ++i) {
        const auto k = rng.below(6);
        ASSERT_LT(k, 6u);
        seen.insert(k);
    }
    EXPECT_EQ(seen.size(), 6u);
}

TEST(Rng, DerivedSeedsSeparateStreams) {
    std::unordered_set<std::uint64_t> seeds;
    for (std::uint64_t s = 0; s < 50; ++s) {
        for (const auto stream : {RngStream::Loss, RngStream::Traffic, RngStream::Test}) {
            for (std::uint64_t i = 0; i < 5; ++i) seeds.insert(derive_seed(s, stream, i));
        }
    }
    EXPECT_EQ(seeds.size(), 50u * 3u * 5u);
    EXPECT_EQ(derive_seed(9, RngStream::Loss), derive_seed(9, RngStream::Loss));
}

TEST(Rng, SplitMixReferenceValue) {
    // First output of the reference splitmix64 generator seeded with 0.
    EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}
