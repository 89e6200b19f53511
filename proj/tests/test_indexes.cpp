#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ubwt/indexes.hpp"

using namespace ubwt;
using oracle::Seq;

namespace {
BwtString index_of(const Seq& s) {
    uint32_t sig = *std::max_element(s.begin(), s.end()) + 1;
    BwtString b(bwt_from_suffix_array(s), sig);
    b.build_range_distinct();
    return b;
}
}  // namespace

TEST(Ssa, FixedExamples) {
    auto s = oracle::codes("abab#");
    auto b = index_of(s);
    SuccinctSuffixArray ssa;
    ssa.build(b, 2);
    EXPECT_EQ(ssa.count({1, 2}), 2u);
    EXPECT_EQ(ssa.count({2, 2}), 0u);
    std::vector<size_t> sa;
    for (size_t r = 1; r <= 5; ++r) sa.push_back(ssa.locate(r));
    EXPECT_EQ(sa, (std::vector<size_t>{5, 3, 1, 4, 2}));
    EXPECT_EQ(ssa.substring(2, 4), (Seq{2, 1, 2}));
    EXPECT_EQ(ssa.substring(1, 5), s);
    EXPECT_THROW(ssa.locate(0), std::out_of_range);
    EXPECT_THROW(ssa.substring(3, 2), std::out_of_range);
    EXPECT_EQ(default_sample_rate(1, 1), 1u);
}

TEST(Ssa, RandomTexts) {
    std::mt19937_64 rng(30);
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = trial < 150 ? rng() % 500 + 1 : rng() % 10000 + 1;
        auto s = oracle::random_text(rng, n, static_cast<uint32_t>(rng() % 6 + 1));
        auto b = index_of(s);
        auto sa = oracle::suffix_array(s);
        SuccinctSuffixArray ssa;
        size_t r = trial % 3 == 0 ? 0 : rng() % 20 + 1;
        ssa.build(b, r);
        r = ssa.sample_rate();
        for (size_t row = 1; row <= s.size(); row += (s.size() > 1000 ? 7 : 1)) {
            size_t steps;
            ASSERT_EQ(ssa.locate(row, &steps), sa[row - 1]);
            ASSERT_LE(steps, r - 1);
        }
        for (int k = 0; k < 20; ++k) {
            size_t e = rng() % s.size() + 1, f = e + rng() % (s.size() - e + 1);
            ASSERT_EQ(ssa.substring(e, f), Seq(s.begin() + e - 1, s.begin() + f));
            size_t pos = rng() % s.size() + 1;
            ASSERT_EQ(sa[ssa.rank_of_position(pos) - 1], pos);
            Seq p(rng() % 4 + 1);
            for (auto& c : p) c = 1 + static_cast<uint32_t>(rng() % std::max<uint32_t>(1, b.sigma() - 1));
            ASSERT_EQ(ssa.count(p), oracle::count_occ(s, p));
        }
        ASSERT_EQ(ssa.substring(1, s.size()), s);
    }
}

TEST(Csa, LookupEqualsSuffixArray) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = trial < 150 ? rng() % 300 + 1 : rng() % 10000 + 1;
        auto s = oracle::random_text(rng, n, static_cast<uint32_t>(rng() % 6 + 1));
        auto sa = oracle::suffix_array(s);
        LayeredCsa csa;
        unsigned layers = trial % 4 == 0 ? 1 : 2;
        unsigned B = trial % 5 == 0 ? 4 : 0;
        csa.build(s, layers, B);
        for (size_t row = 1; row <= s.size(); ++row) {
            size_t steps;
            ASSERT_EQ(csa.lookup(row, &steps), sa[row - 1]) << trial << " row " << row;
            ASSERT_LE(steps, (csa.block() - 1) * csa.layers());
        }
    }
    LayeredCsa one;
    one.build(Seq{0});
    EXPECT_EQ(one.lookup(1), 1u);
    auto s = oracle::codes("abab#");
    LayeredCsa c;
    c.build(s, 2, 2);
    EXPECT_EQ(c.lookup(1), 5u);
    EXPECT_THROW(c.lookup(6), std::out_of_range);
}

namespace {
struct CstFixture {
    Seq s;
    BwtString bwt;
    SuccinctSuffixArray ssa;
    Topology topo;
    CompressedSuffixTree cst;
    explicit CstFixture(Seq text, size_t r = 0) : s(std::move(text)), bwt(index_of(s)) {
        ssa.build(bwt, r);
        topo = build_topology(bwt);
        cst.build(ssa, topo, oracle::plcp(s));
    }
};
}  // namespace

TEST(Cst, FixedExamples) {
    CstFixture f(oracle::codes("abab#"), 2);
    auto& t = f.topo;
    size_t ab = t.locus({2, 3});
    EXPECT_EQ(f.cst.string_depth(ab), 2u);
    EXPECT_EQ(f.cst.string_depth(1), 0u);
    EXPECT_EQ(f.cst.child(1, 1), ab);
    EXPECT_EQ(f.cst.blind_child(1, 1), ab);
    EXPECT_EQ(f.cst.child(ab, 0), t.select_leaf(2));  // "ab#"
    EXPECT_EQ(f.cst.child(ab, 1), t.select_leaf(3));  // "abab#"
    EXPECT_EQ(f.cst.child(ab, 2), 0u);
    size_t leaf = t.select_leaf(3);  // "abab#"
    EXPECT_EQ(f.cst.string_ancestor(leaf, 2), ab);
    EXPECT_EQ(f.cst.string_ancestor(leaf, 5), leaf);
    EXPECT_THROW(f.cst.string_ancestor(leaf, 6), std::out_of_range);
    CstFixture g(oracle::codes("aab#"));
    EXPECT_EQ(g.cst.child(1, 3), 0u);  // symbol absent from the text
}

TEST(Cst, RandomAgainstNaive) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = oracle::random_text(rng, rng() % 200 + 1, static_cast<uint32_t>(rng() % 4 + 1));
        CstFixture f(s, rng() % 5 + 1);
        auto sa = oracle::suffix_array(s);
        auto& t = f.topo;
        size_t n = s.size();
        auto label = [&](size_t v) {
            Interval I = t.interval(v);
            size_t d = f.cst.string_depth(v);
            return Seq(s.begin() + sa[I.lo - 1] - 1, s.begin() + sa[I.lo - 1] - 1 + d);
        };
        for (size_t v = 1; v <= t.nodes(); ++v) {
            Interval I = t.interval(v);
            size_t d = f.cst.string_depth(v);
            if (t.is_leaf(v)) {
                ASSERT_EQ(d, n - sa[I.lo - 1] + 1);
            } else if (v > 1) {
                // depth = lcp of the interval's boundary suffixes
                ASSERT_EQ(d, oracle::lcp(s, sa[I.lo - 1], sa[I.hi - 1]));
            }
            for (uint32_t a = 0; a < f.bwt.sigma(); ++a) {
                size_t w = f.cst.child(v, a);
                size_t expect = 0;
                for (size_t c = t.first_child(v); c; c = t.next_sibling(c)) {
                    Seq lc = label(c);
                    if (lc.size() > d && lc[d] == a) expect = c;
                }
                ASSERT_EQ(w, expect);
                if (expect) {
                    ASSERT_EQ(f.cst.blind_child(v, a), expect);
                }
            }
            if (d >= 1) {
                size_t dd = rng() % d + 1;
                size_t u = f.cst.string_ancestor(v, dd);
                Seq lv = label(v), lu = label(u);
                ASSERT_GE(lu.size(), dd);
                ASSERT_TRUE(std::equal(lu.begin(), lu.begin() + dd, lv.begin()));
                size_t p = t.parent(u);
                ASSERT_LT(f.cst.string_depth(p), dd);
            }
        }
    }
}

TEST(Indexes, SaveLoad) {
    std::mt19937_64 rng(33);
    auto s = oracle::random_text(rng, 3000, 4);
    CstFixture f(s, 16);
    LayeredCsa csa;
    csa.build(s);
    Writer w;
    f.ssa.save(w);
    f.cst.save(w);
    csa.save(w);
    Reader r(w.bytes());
    SuccinctSuffixArray ssa2;
    ssa2.load(r, f.bwt);
    CompressedSuffixTree cst2;
    cst2.load(r, ssa2, f.topo);
    LayeredCsa csa2;
    csa2.load(r);
    for (size_t row = 1; row <= s.size(); row += 13) {
        ASSERT_EQ(ssa2.locate(row), f.ssa.locate(row));
        ASSERT_EQ(csa2.lookup(row), csa.lookup(row));
    }
    for (size_t v = 1; v <= f.topo.nodes(); v += 11) {
        ASSERT_EQ(cst2.string_depth(v), f.cst.string_depth(v));
        ASSERT_EQ(cst2.child(v, 2), f.cst.child(v, 2));
    }
}
