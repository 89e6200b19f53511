#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ubwt/analysis.hpp"
#include "ubwt/container.hpp"

using namespace ubwt;

namespace {

std::string random_text(std::mt19937_64& rng, size_t n, int sigma) {
    std::string s(n, 'a');
    for (auto& c : s) c = static_cast<char>('a' + rng() % sigma);
    return s;
}

void build(StringIndex& x, const std::string& raw, BuildOptions o = {}) { x.build(encode_text(raw), o); }

// Everything the CLI can ask, as one comparable value.
struct Answers {
    std::vector<uint32_t> bwt, plcp, text;
    std::vector<size_t> counts, locs, csa;
    std::vector<RepeatPair> maxrep;
    std::vector<Maw> maw;
    bool operator==(const Answers&) const = default;
};

Answers answers(const StringIndex& x, std::mt19937_64 rng) {
    Answers a;
    a.bwt = x.bwt.symbols();
    a.plcp = x.plcp;
    size_t n = x.bwt.size();
    a.text = x.ssa.substring(1, n);
    for (size_t row = 1; row <= n; ++row) {
        a.locs.push_back(x.ssa.locate(row));
        a.csa.push_back(x.csa.lookup(row));
    }
    for (int q = 0; q < 20; ++q) {
        size_t i = 1 + rng() % n, len = 1 + rng() % 4;
        std::vector<uint32_t> p(x.text.symbols.begin() + (i - 1), x.text.symbols.begin() + std::min(n, i - 1 + len));
        a.counts.push_back(x.ssa.count(p));
    }
    a.maxrep = maximal_repeats(x.bwt);
    a.maw = minimal_absent_words(x.bwt, x.text.num_separators);
    return a;
}

std::vector<uint8_t> section_bytes(const std::vector<uint8_t>& file, const std::string& name) {
    return Container::parse(file).bytes(name);
}

TEST(Container, SectionTable) {
    Container c;
    c.seed = 7;
    c.put("a", {1, 2, 3});
    c.put("bb", {});
    c.put("c", {9});
    auto bytes = c.serialize();
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "UBWT");
    EXPECT_EQ(bytes.size() % 8, 0u);
    Reader r(bytes);
    r.u32();
    EXPECT_EQ(r.u32(), kContainerVersion);
    EXPECT_EQ(r.u64(), 7u);
    ASSERT_EQ(r.u64(), 3u);
    u64 prev = 0;
    for (int k = 0; k < 3; ++k) {
        for (size_t i = 0; i < kSectionName; ++i) r.u8();
        u64 off = r.u64(), len = r.u64();
        EXPECT_EQ(off % 8, 0u);
        EXPECT_GT(off, prev);
        prev = off + len;
    }
    auto d = Container::parse(bytes);
    EXPECT_EQ(d.seed, 7u);
    EXPECT_EQ(d.names(), (std::vector<std::string>{"a", "bb", "c"}));
    EXPECT_EQ(d.bytes("a"), (std::vector<uint8_t>{1, 2, 3}));
    EXPECT_TRUE(d.bytes("bb").empty());
    EXPECT_THROW(d.bytes("zz"), FormatError);
    EXPECT_THROW(c.put("a", {}), std::invalid_argument);
}

TEST(Container, Corruption) {
    StringIndex x;
    build(x, "mississippi");
    auto bytes = x.serialize();
    for (size_t pos : {size_t(9), bytes.size() / 2, bytes.size() - 1}) {
        auto bad = bytes;
        bad[pos] ^= 0x10;
        StringIndex y;
        EXPECT_THROW(y.load(bad), FormatError) << pos;
    }
    StringIndex y;
    EXPECT_THROW(y.load({}), FormatError);
    try {
        y.load({});
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
    }
    auto wrong = bytes;
    wrong[4] = 9;
    EXPECT_THROW(y.load(wrong), FormatError);
    auto cut = bytes;
    cut.resize(cut.size() - 8);
    EXPECT_THROW(y.load(cut), FormatError);
}

TEST(Container, BwtSection) {
    StringIndex x;
    build(x, "abab");
    auto sec = section_bytes(x.serialize(), "bwt");
    Reader r(sec);
    BwtString b;
    b.load(r);
    EXPECT_EQ(b.symbols(), oracle::codes("bb#aa"));
    EXPECT_EQ(x.plcp, (std::vector<uint32_t>{2, 1, 0, 0, 0}));
}

TEST(Container, ConstructionPathsAgree) {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 30; ++it) {
        std::string s = random_text(rng, 1 + rng() % 300, 1 + it % 5);
        std::vector<std::vector<uint8_t>> files;
        for (auto c : {Construction::Naive, Construction::SuffixArray, Construction::Linear}) {
            StringIndex x;
            BuildOptions o;
            o.construction = c;
            o.seed = 11;
            build(x, s, o);
            files.push_back(x.serialize());
        }
        EXPECT_EQ(section_bytes(files[0], "bwt"), section_bytes(files[1], "bwt"));
        EXPECT_EQ(section_bytes(files[1], "bwt"), section_bytes(files[2], "bwt"));
        EXPECT_EQ(files[0], files[2]);
    }
}

TEST(Container, RoundTrip) {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 40; ++it) {
        std::string s = random_text(rng, 1 + rng() % 400, 1 + it % 4);
        BuildOptions o;
        o.seed = rng();
        o.bidirectional = it % 2;
        o.sample_rate = 1 + rng() % 8;
        StringIndex x;
        build(x, s, o);
        auto bytes = x.serialize();
        StringIndex y;
        y.load(bytes);
        EXPECT_EQ(y.seed, o.seed);
        EXPECT_EQ(answers(x, std::mt19937_64(it)), answers(y, std::mt19937_64(it)));
        EXPECT_EQ(decode_text(y.text), s);
        ASSERT_EQ(static_cast<bool>(y.bidir), o.bidirectional);
        if (o.bidirectional) {
            EXPECT_EQ(build_ds(*y.bidir, 2), build_ds(*x.bidir, 2));
            EXPECT_EQ(y.bidir->reverse().symbols(), x.bidir->reverse().symbols());
        }
        EXPECT_EQ(y.serialize(), bytes);

        StringIndex z;
        build(z, s, o);
        EXPECT_EQ(z.serialize(), bytes);
    }
}

TEST(Container, Options) {
    StringIndex x;
    BuildOptions o;
    o.csa_eps = 0;
    EXPECT_THROW(build(x, "abc", o), std::invalid_argument);
    o.csa_eps = 1;
    build(x, "abcabc", o);
    EXPECT_EQ(x.csa.layers(), 1u);
}

}  // namespace
