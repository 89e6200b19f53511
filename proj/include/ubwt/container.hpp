#pragma once
// Index container: "UBWT", u32 version, u64 seed, section table, 8-byte
// aligned sections, trailing FNV-1a checksum over everything before it.
//
//   0   magic[4]  version u32  seed u64  count u64
//   24  count x { name[16] (NUL padded)  offset u64  length u64 }
//   ..  sections, each starting at a multiple of 8
//   end checksum u64

#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bidirectional.hpp"
#include "construct.hpp"
#include "indexes.hpp"
#include "io.hpp"
#include "textcore.hpp"
#include "topology.hpp"

namespace ubwt {

inline constexpr uint32_t kContainerVersion = 1;
inline constexpr size_t kSectionName = 16;

inline u64 fnv1a64(const uint8_t* p, size_t n) {
    u64 h = 0xcbf29ce484222325ULL;
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Container {
public:
    u64 seed = 0;

    void put(const std::string& name, std::vector<uint8_t> bytes) {
        if (name.empty() || name.size() >= kSectionName) throw std::invalid_argument("section name length");
        for (auto& s : sections_)
            if (s.first == name) throw std::invalid_argument("duplicate section " + name);
        sections_.emplace_back(name, std::move(bytes));
    }
    template <class T>
    void put_object(const std::string& name, const T& obj) {
        Writer w;
        obj.save(w);
        put(name, std::move(w.bytes()));
    }

    bool has(const std::string& name) const { return find(name) != nullptr; }
    const std::vector<uint8_t>& bytes(const std::string& name) const {
        auto* s = find(name);
        if (!s) throw FormatError("missing section " + name);
        return *s;
    }
    Reader reader(const std::string& name) const { return Reader(bytes(name)); }
    std::vector<std::string> names() const {
        std::vector<std::string> v;
        for (auto& s : sections_) v.push_back(s.first);
        return v;
    }

    std::vector<uint8_t> serialize() const {
        Writer w;
        for (char ch : std::string("UBWT")) w.u8(static_cast<uint8_t>(ch));
        w.u32(kContainerVersion);
        w.u64(seed);
        w.u64(sections_.size());
        size_t off = 24 + sections_.size() * (kSectionName + 16);
        for (auto& [name, data] : sections_) {
            off = (off + 7) / 8 * 8;
            for (size_t i = 0; i < kSectionName; ++i) w.u8(i < name.size() ? static_cast<uint8_t>(name[i]) : 0);
            w.u64(off);
            w.u64(data.size());
            off += std::max<size_t>(data.size(), 1);  // empty sections still occupy a slot
        }
        for (auto& [name, data] : sections_) {
            w.align8();
            w.bytes().insert(w.bytes().end(), data.begin(), data.end());
            if (data.empty()) w.u8(0);
        }
        w.align8();
        u64 h = fnv1a64(w.bytes().data(), w.size());
        w.u64(h);
        return std::move(w.bytes());
    }

    static Container parse(const std::vector<uint8_t>& b) {
        if (b.size() < 8) throw FormatError("missing container version");
        if (std::string(b.begin(), b.begin() + 4) != "UBWT") throw FormatError("not a UBWT container");
        Reader r(b);
        r.u32();
        uint32_t version = r.u32();
        if (version != kContainerVersion)
            throw FormatError("unsupported container version " + std::to_string(version));
        if (b.size() < 32 || b.size() % 8) throw FormatError("truncated container");
        size_t body = b.size() - 8;
        u64 stored = Reader(b.data() + body, 8).u64();
        if (stored != fnv1a64(b.data(), body)) throw FormatError("checksum mismatch");
        Container c;
        c.seed = r.u64();
        u64 count = r.u64();
        if (count > body / (kSectionName + 16)) throw FormatError("section table");
        size_t prev_end = 24 + count * (kSectionName + 16);
        for (u64 k = 0; k < count; ++k) {
            std::string name;
            for (size_t i = 0; i < kSectionName; ++i) {
                char ch = static_cast<char>(r.u8());
                if (ch) name.push_back(ch);
            }
            u64 off = r.u64(), len = r.u64();
            if (off % 8 || off < prev_end || off > body || len > body - off) throw FormatError("section table");
            prev_end = off + std::max<u64>(len, 1);
            c.sections_.emplace_back(name, std::vector<uint8_t>(b.begin() + off, b.begin() + off + len));
        }
        return c;
    }

private:
    const std::vector<uint8_t>* find(const std::string& name) const {
        for (auto& s : sections_)
            if (s.first == name) return &s.second;
        return nullptr;
    }
    std::vector<std::pair<std::string, std::vector<uint8_t>>> sections_;
};

inline std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return std::vector<uint8_t>(std::istreambuf_iterator<char>(in), {});
}

inline void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot create " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path);
}

// ---- the full string index ------------------------------------------------------

enum class Construction { Naive, SuffixArray, Linear };

struct BuildOptions {
    Construction construction = Construction::SuffixArray;
    size_t sample_rate = 0;  // 0 = default
    double csa_eps = 0.5;
    bool bidirectional = false;
    u64 seed = 0;
};

inline std::vector<uint32_t> build_bwt_symbols(const std::vector<uint32_t>& s, Construction c) {
    switch (c) {
        case Construction::Naive: return bwt_naive(s);
        case Construction::SuffixArray: return bwt_from_suffix_array(s);
        case Construction::Linear: return bwt_linear_symbols(s);
    }
    throw std::invalid_argument("construction");
}

// Everything a query needs.  Members point at each other, so the object is
// built and loaded in place.
class StringIndex {
public:
    StringIndex() = default;
    StringIndex(const StringIndex&) = delete;
    StringIndex& operator=(const StringIndex&) = delete;

    Text text;
    BwtString bwt;
    Topology topo;
    WeinerSupport ws;
    SuccinctSuffixArray ssa;
    LayeredCsa csa;
    std::vector<uint32_t> plcp;
    std::unique_ptr<BidirIndex> bidir;  // only with BuildOptions::bidirectional
    u64 seed = 0;

    void build(Text t, const BuildOptions& o) {
        if (!(o.csa_eps > 0 && o.csa_eps <= 1)) throw std::invalid_argument("csa eps must be in (0, 1]");
        text = std::move(t);
        seed = o.seed;
        bwt.build(build_bwt_symbols(text.symbols, o.construction), text.alphabet_size());
        bwt.build_range_distinct(RangeDistinct::Backend::Select, seed);
        topo = build_topology(bwt);
        ws.build(topo, bwt, true, mix64(seed ^ 0x3e1));
        ssa.build(bwt, o.sample_rate);
        csa.build(text.symbols, static_cast<unsigned>(std::lround(1.0 / o.csa_eps)));
        auto b = std::make_unique<BidirIndex>();
        b->build(bwt, mix64(seed ^ 0xb1d));
        plcp = build_plcp(*b);
        if (o.bidirectional) bidir = std::move(b);
    }

    Container to_container() const {
        Container c;
        c.seed = seed;
        c.put_object("text", text);
        c.put_object("bwt", bwt);
        c.put_object("topology", topo);
        c.put_object("weiner", ws);
        c.put_object("samples", ssa);
        c.put_object("csa", csa);
        Writer w;
        w.vec(plcp);
        c.put("plcp", std::move(w.bytes()));
        if (bidir) c.put_object("bidirectional", *bidir);
        return c;
    }
    std::vector<uint8_t> serialize() const { return to_container().serialize(); }

    void load(const std::vector<uint8_t>& bytes) {
        Container c = Container::parse(bytes);
        seed = c.seed;
        section(c, "text", [&](Reader& r) { text.load(r); });
        section(c, "bwt", [&](Reader& r) { bwt.load(r); });
        section(c, "topology", [&](Reader& r) { topo.load(r); });
        section(c, "weiner", [&](Reader& r) { ws.load(r); });
        section(c, "samples", [&](Reader& r) { ssa.load(r, bwt); });
        section(c, "csa", [&](Reader& r) { csa.load(r); });
        section(c, "plcp", [&](Reader& r) { r.vec(plcp); });
        bidir.reset();
        if (c.has("bidirectional")) {
            bidir = std::make_unique<BidirIndex>();
            section(c, "bidirectional", [&](Reader& r) { bidir->load(r); });
        }
        if (text.length() != bwt.size() || plcp.size() != bwt.size() || !bwt.has_range_distinct())
            throw FormatError("inconsistent sections");
    }

private:
    template <class F>
    static void section(const Container& c, const std::string& name, F&& f) {
        Reader r = c.reader(name);
        f(r);
        if (!r.done()) throw FormatError("trailing bytes in section " + name);
    }
};

}  // namespace ubwt
