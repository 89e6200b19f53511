#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ubwt/enumerate.hpp"

using namespace ubwt;
using oracle::Seq;

namespace {

BwtString index_of(const Seq& s) {
    uint32_t sig = *std::max_element(s.begin(), s.end()) + 1;
    BwtString b(bwt_from_suffix_array(s), sig);
    b.build_range_distinct();
    return b;
}

std::multiset<Seq> enumerated(const Seq& s, EnumerationStats* st = nullptr, unsigned threads = 1) {
    auto b = index_of(s);
    auto sa = oracle::suffix_array(s);
    std::multiset<Seq> got;
    std::mutex mu;
    ExtensionScratch* last = nullptr;
    (void)last;
    auto stats = enumerate_right_maximal(
        b,
        [&](const ReprView& w, const ExtensionScratch&) {
            size_t p = sa[w.first[0] - 1];
            Seq lab(s.begin() + p - 1, s.begin() + p - 1 + w.depth);
            std::lock_guard<std::mutex> g(mu);
            got.insert(lab);
        },
        threads);
    if (st) *st = stats;
    return got;
}

}  // namespace

TEST(ExtendLeft, AbabExamples) {
    auto s = oracle::codes("abab#");
    auto b = index_of(s);
    ExtensionScratch ext;
    RangeDistinctContext ctx;
    // W = "b": chars [#, a], first [4,5,6]
    std::vector<uint32_t> ch{0, 1};
    std::vector<size_t> fi{4, 5, 6};
    ReprView w{1, ch.data(), fi.data(), 2};
    ext.extend(b, w, ctx);
    ASSERT_EQ(ext.left().size(), 1u);
    EXPECT_EQ(ext.left()[0], 1u);
    EXPECT_EQ(ext.gamma(1), 2u);
    std::vector<uint32_t> c2;
    std::vector<size_t> f2;
    ext.repr_of(1, c2, f2);
    EXPECT_EQ(c2, (std::vector<uint32_t>{0, 1}));
    EXPECT_EQ(f2, (std::vector<size_t>{2, 3, 4}));
    ext.clean();
    EXPECT_TRUE(ext.is_clean());
    // W = empty
    std::vector<uint32_t> rc;
    std::vector<size_t> rf;
    root_repr(b, rc, rf);
    ReprView r{0, rc.data(), rf.data(), rc.size()};
    ext.extend(b, r, ctx);
    std::vector<uint32_t> left = ext.left();
    std::sort(left.begin(), left.end());
    EXPECT_EQ(left, (std::vector<uint32_t>{0, 1, 2}));
    EXPECT_EQ(ext.gamma(2), 2u);
    EXPECT_EQ(ext.gamma(1), 1u);
    ext.clean();
}

TEST(ExtendLeft, ImplicitLinkShape) {
    // children of the root start with A, C, G; only the G-child's BWT range holds C
    auto s = oracle::codes("gcaat#");  // a=1 c=3 g=7 t=20
    auto b = index_of(s);
    ExtensionScratch ext;
    RangeDistinctContext ctx;
    std::vector<uint32_t> rc;
    std::vector<size_t> rf;
    root_repr(b, rc, rf);
    ReprView r{0, rc.data(), rf.data(), rc.size()};
    ext.extend(b, r, ctx);
    EXPECT_EQ(ext.gamma(3), 1u);  // "c" extends only to "ca": implicit Weiner link
    ext.clean();
}

TEST(Enumerate, FixedCases) {
    auto got = enumerated(oracle::codes("abab#"));
    EXPECT_EQ(got, (std::multiset<Seq>{{}, {2}, {1, 2}}));
    got = enumerated(oracle::codes("aaaa#"));
    EXPECT_EQ(got, (std::multiset<Seq>{{}, {1}, {1, 1}, {1, 1, 1}}));
    got = enumerated(oracle::codes("a#"));
    EXPECT_EQ(got, (std::multiset<Seq>{{}}));
}

TEST(Enumerate, RandomAgainstSuffixTree) {
    std::mt19937_64 rng(40);
    for (int trial = 0; trial < 300; ++trial) {
        size_t n = rng() % 200 + 1;
        uint32_t sigma = static_cast<uint32_t>(rng() % 5 + 1);
        auto s = oracle::random_text(rng, n, sigma);
        EnumerationStats st;
        auto got = enumerated(s, &st);
        ASSERT_EQ(got, oracle::internal_nodes(s));
        ASSERT_LE(st.tuples, 5 * s.size());
        uint32_t sig = *std::max_element(s.begin(), s.end());
        size_t bound = (sig + 1) * (static_cast<size_t>(std::floor(std::log2(s.size()))) + 1);
        ASSERT_LE(st.max_stack, bound);
    }
}

TEST(Enumerate, ChildIntervalsTileAndScratchIsClean) {
    std::mt19937_64 rng(41);
    auto s = oracle::random_text(rng, 500, 3);
    auto b = index_of(s);
    bool ok = true;
    enumerate_right_maximal(b, [&](const ReprView& w, const ExtensionScratch&) {
        for (size_t i = 0; i + 1 < w.k; ++i) ok &= w.chars[i] < w.chars[i + 1];
        ok &= w.k >= 2;
        ok &= w.first[0] <= w.first[w.k] - 1;
    });
    EXPECT_TRUE(ok);
}

TEST(Enumerate, ParallelMatchesSerial) {
    std::mt19937_64 rng(42);
    auto s = oracle::random_text(rng, 3000, 4);
    EXPECT_EQ(enumerated(s, nullptr, 4), enumerated(s));
}

namespace {

std::multiset<Seq> gen_enumerated(const std::vector<Seq>& texts, GenMode mode) {
    std::vector<BwtString> bw;
    for (auto& t : texts) bw.push_back(index_of(t));
    std::vector<const BwtString*> ptr;
    for (auto& b : bw) ptr.push_back(&b);
    std::vector<std::vector<size_t>> sas;
    for (auto& t : texts) sas.push_back(oracle::suffix_array(t));
    std::multiset<Seq> got;
    GenOptions opt;
    opt.mode = mode;
    enumerate_generalized(
        ptr,
        [&](const GenView& g) {
            for (size_t p = 0; p < g.m; ++p)
                if (g.text(p).k) {
                    size_t pos = sas[p][g.text(p).first[0] - 1];
                    got.insert(Seq(texts[p].begin() + pos - 1, texts[p].begin() + pos - 1 + g.depth));
                    return;
                }
        },
        opt);
    return got;
}

// Nodes of the generalized suffix tree of T1 #1 T2 #2 ... (separators distinct).
std::multiset<Seq> gen_oracle(const std::vector<Seq>& texts, bool impure_only) {
    Seq cat;
    uint32_t shift = static_cast<uint32_t>(texts.size());
    std::vector<size_t> owner;
    for (size_t p = 0; p < texts.size(); ++p) {
        for (size_t i = 0; i + 1 < texts[p].size(); ++i) {
            cat.push_back(texts[p][i] + shift);
            owner.push_back(p);
        }
        cat.push_back(static_cast<uint32_t>(texts.size() - 1 - p));
        owner.push_back(p);
    }
    std::multiset<Seq> out;
    for (auto& lab : oracle::internal_nodes(cat)) {
        Seq l = lab;
        for (auto& c : l) c -= shift;
        if (impure_only) {
            std::set<size_t> docs;
            for (size_t i = 0; i + lab.size() <= cat.size(); ++i)
                if (std::equal(lab.begin(), lab.end(), cat.begin() + i)) docs.insert(owner[i]);
            if (lab.empty()) docs = {0, 1};
            if (docs.size() < 2) continue;
        }
        out.insert(l);
    }
    return out;
}

}  // namespace

TEST(EnumerateGeneralized, FixedAndDegenerate) {
    auto t1 = oracle::codes("abba#"), t2 = oracle::codes("aba#");
    EXPECT_EQ(gen_enumerated({t1, t2}, GenMode::AllNodes), gen_oracle({t1, t2}, false));
    EXPECT_EQ(gen_enumerated({t1}, GenMode::AllNodes), oracle::internal_nodes(t1));
    auto a = oracle::codes("ab#");
    auto all = gen_enumerated({a, a}, GenMode::AllNodes);
    EXPECT_EQ(gen_enumerated({a, a}, GenMode::ImpureOnly), all);
}

TEST(EnumerateGeneralized, RandomPairs) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 300; ++trial) {
        uint32_t sigma = static_cast<uint32_t>(rng() % 4 + 1);
        auto t1 = oracle::random_text(rng, rng() % 40 + 1, sigma);
        auto t2 = oracle::random_text(rng, rng() % 40 + 1, sigma);
        ASSERT_EQ(gen_enumerated({t1, t2}, GenMode::AllNodes), gen_oracle({t1, t2}, false));
        ASSERT_EQ(gen_enumerated({t1, t2}, GenMode::ImpureOnly), gen_oracle({t1, t2}, true));
    }
}
