#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ubwt/mmphf.hpp"

using namespace ubwt;

TEST(Mphf, IsBijective) {
    std::mt19937_64 rng(20);
    for (size_t m : {0, 1, 2, 7, 100, 5000}) {
        std::set<u64> ks;
        while (ks.size() < m) ks.insert(rng());
        std::vector<u64> keys(ks.begin(), ks.end());
        Mphf f(keys, 42);
        std::vector<int> hit(m, 0);
        for (u64 k : keys) {
            u64 v = f.eval(k);
            ASSERT_LT(v, std::max<size_t>(m, 1));
            if (m) ++hit[v];
        }
        for (int h : hit) ASSERT_EQ(h, 1);
    }
}

TEST(Mmphf, Examples) {
    Mmphf f({3, 9, 12}, 16, 1);
    EXPECT_EQ(f.eval(9), 2u);
    EXPECT_EQ(f.eval(3), 1u);
    EXPECT_EQ(f.eval(12), 3u);
    u64 junk = f.eval(5);
    EXPECT_GE(junk, 1u);
    EXPECT_LE(junk, 3u);
    Mmphf g({7}, 10, 1);
    EXPECT_EQ(g.eval(7), 1u);
    EXPECT_THROW(Mmphf({4, 4}, 10, 1), std::invalid_argument);
}

TEST(Mmphf, RandomSetsExactRanks) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10000; ++trial) {
        size_t m = trial % 500 == 0 ? 20000 : rng() % 40 + 1;
        u64 U = m + (rng() % (u64(1) << (rng() % 40)));
        std::set<u64> ks;
        while (ks.size() < m) ks.insert(rng() % (U + 1));
        std::vector<u64> keys(ks.begin(), ks.end());
        Mmphf f(keys, U, trial);
        for (size_t r = 0; r < m; ++r) ASSERT_EQ(f.eval(keys[r]), r + 1) << trial;
    }
}

TEST(Mmphf, SpacePerKey) {
    std::mt19937_64 rng(22);
    size_t m = 1 << 14;
    u64 U = u64(1) << 30;
    std::set<u64> ks;
    while (ks.size() < m) ks.insert(rng() % U);
    std::vector<u64> keys(ks.begin(), ks.end());
    Mmphf f(keys, U, 5);
    double per_key = static_cast<double>(f.size_in_bits()) / m;
    EXPECT_LE(per_key, 12.0 * std::log2(std::log2(static_cast<double>(U))));
}

TEST(Mmphf, SeedDeterminism) {
    std::vector<u64> keys;
    for (u64 x = 5; x < 5000; x += 7) keys.push_back(x);
    Mmphf a(keys, 5000, 9), b(keys, 5000, 9);
    Writer wa, wb;
    a.save(wa);
    b.save(wb);
    EXPECT_EQ(wa.bytes(), wb.bytes());
    Reader r(wa.bytes());
    Mmphf c;
    c.load(r);
    for (size_t i = 0; i < keys.size(); ++i) ASSERT_EQ(c.eval(keys[i]), i + 1);
}
