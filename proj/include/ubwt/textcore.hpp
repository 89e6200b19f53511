#pragma once
// Text ingestion: dense alphabet remapping, separators, FASTA records, C array.
// Separators take the smallest codes; with m records the record i separator
// is m - i, so the final terminator is code 0 and is the unique minimum.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "io.hpp"

namespace ubwt {

enum class SeparatorPolicy { One, PerRecord };

struct Text {
    std::vector<uint32_t> symbols;
    uint32_t sigma = 0;           // distinct non-separator codes
    uint32_t num_separators = 0;  // separator codes 0..num_separators-1
    bool terminated = false;
    std::vector<uint8_t> raw_of;  // internal code - num_separators -> raw byte

    size_t length() const { return symbols.size(); }
    uint32_t alphabet_size() const { return sigma + num_separators; }
    bool is_separator(uint32_t c) const { return c < num_separators; }

    void save(Writer& w) const {
        w.vec(symbols);
        w.u32(sigma);
        w.u32(num_separators);
        w.u8(terminated);
        w.vec(raw_of);
    }
    void load(Reader& r) {
        r.vec(symbols);
        sigma = r.u32();
        num_separators = r.u32();
        terminated = r.u8();
        r.vec(raw_of);
        if (raw_of.size() != sigma) throw FormatError("text alphabet");
    }
};

inline constexpr size_t kMaxRecords = size_t(1) << 24;

// Encodes records over a shared dense alphabet.  With SeparatorPolicy::One
// the records are concatenated and a single terminator is appended.
inline Text encode_records(const std::vector<std::string>& records, SeparatorPolicy policy) {
    size_t total = 0;
    for (auto& r : records) total += r.size();
    if (records.empty() || total == 0) throw std::invalid_argument("empty input");
    if (records.size() > kMaxRecords) throw std::invalid_argument("more records than available separator codes");
    std::array<bool, 256> present{};
    for (auto& r : records)
        for (unsigned char ch : r) present[ch] = true;
    Text t;
    t.num_separators = policy == SeparatorPolicy::One ? 1 : static_cast<uint32_t>(records.size());
    std::array<uint32_t, 256> code{};
    for (int b = 0; b < 256; ++b)
        if (present[b]) {
            code[b] = t.num_separators + t.sigma++;
            t.raw_of.push_back(static_cast<uint8_t>(b));
        }
    t.symbols.reserve(total + t.num_separators);
    uint32_t m = static_cast<uint32_t>(records.size());
    for (uint32_t i = 0; i < m; ++i) {
        for (unsigned char ch : records[i]) t.symbols.push_back(code[ch]);
        if (policy == SeparatorPolicy::PerRecord) t.symbols.push_back(m - 1 - i);
    }
    if (policy == SeparatorPolicy::One) t.symbols.push_back(0);
    t.terminated = true;
    return t;
}

inline Text encode_text(const std::string& raw, SeparatorPolicy policy = SeparatorPolicy::One) {
    return encode_records({raw}, policy);
}

// Texts sharing one alphabet (each terminated by its own code-0 terminator).
inline std::vector<Text> encode_shared(const std::vector<std::string>& texts) {
    std::array<bool, 256> present{};
    for (auto& r : texts) {
        if (r.empty()) throw std::invalid_argument("empty input");
        for (unsigned char ch : r) present[ch] = true;
    }
    std::array<uint32_t, 256> code{};
    uint32_t sigma = 0;
    std::vector<uint8_t> raw_of;
    for (int b = 0; b < 256; ++b)
        if (present[b]) {
            code[b] = 1 + sigma++;
            raw_of.push_back(static_cast<uint8_t>(b));
        }
    std::vector<Text> out;
    for (auto& r : texts) {
        Text t;
        t.num_separators = 1;
        t.sigma = sigma;
        t.raw_of = raw_of;
        t.terminated = true;
        for (unsigned char ch : r) t.symbols.push_back(code[ch]);
        t.symbols.push_back(0);
        out.push_back(std::move(t));
    }
    return out;
}

// Raw bytes of the text; separators are dropped (One) or end each record.
inline std::vector<std::string> decode_records(const Text& t) {
    std::vector<std::string> out(1);
    for (uint32_t c : t.symbols) {
        if (t.is_separator(c)) {
            out.emplace_back();
            continue;
        }
        out.back().push_back(static_cast<char>(t.raw_of[c - t.num_separators]));
    }
    if (out.size() > 1 && out.back().empty()) out.pop_back();
    return out;
}

inline std::string decode_text(const Text& t) {
    std::string s;
    for (auto& r : decode_records(t)) s += r;
    return s;
}

// FASTA: '>' starts a record; sequence lines are concatenated; CR tolerated.
inline std::vector<std::string> parse_fasta(const std::string& data) {
    std::vector<std::string> recs;
    size_t i = 0;
    bool in_record = false;
    while (i < data.size()) {
        size_t e = data.find('\n', i);
        if (e == std::string::npos) e = data.size();
        std::string line = data.substr(i, e - i);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] == '>') {
            recs.emplace_back();
            in_record = true;
        } else if (!line.empty()) {
            if (!in_record) {
                recs.emplace_back();
                in_record = true;
            }
            recs.back() += line;
        }
        i = e + 1;
    }
    recs.erase(std::remove_if(recs.begin(), recs.end(), [](const std::string& r) { return r.empty(); }), recs.end());
    return recs;
}

// counts[c] = number of symbols strictly smaller than c, for c in [0..alphabet].
inline std::vector<uint64_t> c_array(const std::vector<uint32_t>& s, uint32_t alphabet) {
    std::vector<uint64_t> C(alphabet + 1, 0);
    for (uint32_t c : s) {
        if (c >= alphabet) throw std::invalid_argument("symbol out of range");
        ++C[c + 1];
    }
    for (uint32_t c = 0; c < alphabet; ++c) C[c + 1] += C[c];
    return C;
}

inline std::vector<uint64_t> c_array(const Text& t) { return c_array(t.symbols, t.alphabet_size()); }

}  // namespace ubwt
