#pragma once
// The BWT string over a set of rotations (normally all rotations of a
// terminated text) with LF / psi navigation, backward search, inversion and
// batched locate.  Rows and text positions are 1-based.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rangedistinct.hpp"
#include "sais.hpp"
#include "seqindex.hpp"
#include "textcore.hpp"

namespace ubwt {

struct Interval {
    size_t lo = 1, hi = 0;  // [lo..hi], empty when lo > hi
    bool empty() const { return lo > hi; }
    size_t width() const { return empty() ? 0 : hi - lo + 1; }
    bool operator==(const Interval&) const = default;
};

// ---- reference constructions -------------------------------------------------

// Row order of all rotations (0-based start positions), by explicit sorting.
inline std::vector<uint32_t> rotation_order_naive(const std::vector<uint32_t>& s) {
    size_t n = s.size();
    std::vector<uint32_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    auto cmp = [&](uint32_t a, uint32_t b) {
        for (size_t k = 0; k < n; ++k) {
            uint32_t x = s[(a + k) % n], y = s[(b + k) % n];
            if (x != y) return x < y;
        }
        return false;
    };
    std::sort(rows.begin(), rows.end(), cmp);
    for (size_t i = 1; i < n; ++i)
        if (!cmp(rows[i - 1], rows[i])) throw std::invalid_argument("duplicate rotations");
    return rows;
}

inline std::vector<uint32_t> bwt_naive(const std::vector<uint32_t>& s) {
    size_t n = s.size();
    if (n == 0) throw std::invalid_argument("empty text");
    auto rows = rotation_order_naive(s);
    std::vector<uint32_t> L(n);
    for (size_t i = 0; i < n; ++i) L[i] = s[(rows[i] + n - 1) % n];
    return L;
}
inline std::vector<uint32_t> bwt_naive(const Text& t) { return bwt_naive(t.symbols); }

inline bool is_terminated(const std::vector<uint32_t>& s) {
    if (s.empty()) return false;
    uint32_t last = s.back();
    for (size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] <= last) return false;
    return true;
}

// 1-based suffix array of a terminated text.
inline std::vector<uint32_t> suffix_array_1based(const std::vector<uint32_t>& s) {
    uint32_t K = s.empty() ? 1 : *std::max_element(s.begin(), s.end()) + 1;
    auto sa = suffix_array(s, K);
    for (auto& x : sa) ++x;
    return sa;
}

inline std::vector<uint32_t> bwt_from_suffix_array(const std::vector<uint32_t>& s) {
    if (!is_terminated(s)) throw std::invalid_argument("unterminated text");
    auto sa = suffix_array_1based(s);
    size_t n = s.size();
    std::vector<uint32_t> L(n);
    for (size_t i = 0; i < n; ++i) L[i] = s[(sa[i] + n - 2) % n];
    return L;
}
inline std::vector<uint32_t> bwt_from_suffix_array(const Text& t) { return bwt_from_suffix_array(t.symbols); }

// ---- BwtString ------------------------------------------------------------------

class BwtString {
public:
    BwtString() = default;
    BwtString(const std::vector<uint32_t>& L, uint32_t alphabet, bool rotation_set = false) {
        build(L, alphabet, rotation_set);
    }

    void build(const std::vector<uint32_t>& L, uint32_t alphabet, bool rotation_set = false) {
        n_ = L.size();
        sigma_ = std::max<uint32_t>(alphabet, 1);
        rotation_set_ = rotation_set;
        seq_.build(L, sigma_);
        C_ = seq_.counts();
        build_unary();
    }

    void build_range_distinct(RangeDistinct::Backend be = RangeDistinct::Backend::Select, u64 seed = 0) {
        rd_.build(seq_, be, seed);
        has_rd_ = true;
    }
    bool has_range_distinct() const { return has_rd_; }

    size_t size() const { return n_; }
    uint32_t sigma() const { return sigma_; }
    bool rotation_set() const { return rotation_set_; }
    const std::vector<u64>& C() const { return C_; }
    const SequenceIndex& seq() const { return seq_; }
    const RangeDistinct& rd() const { return rd_; }

    uint32_t operator[](size_t i) const { return seq_.access(i); }
    std::vector<uint32_t> symbols() const {
        std::vector<uint32_t> v(n_);
        for (size_t i = 1; i <= n_; ++i) v[i - 1] = seq_.access(i);
        return v;
    }
    size_t rank(uint32_t c, size_t i) const { return seq_.rank(c, i); }
    size_t select(uint32_t c, size_t j) const { return seq_.select(c, j); }
    u64 count(uint32_t c) const { return seq_.count(c); }

    size_t lf(size_t i) const {
        check(i);
        auto [c, r] = seq_.access_rank(i);
        return C_[c] + r;
    }
    // First symbol of row i (the symbol a with C[a] < i <= C[a+1]).
    uint32_t first_symbol(size_t i) const {
        check(i);
        return static_cast<uint32_t>(cunary_.select1(i) - i - 1);
    }
    size_t psi(size_t i) const {
        uint32_t a = first_symbol(i);
        return seq_.select(a, i - C_[a]);
    }

    Interval full() const { return {1, n_}; }
    // Interval of cW from that of W.
    Interval backward_step(Interval I, uint32_t c) const {
        if (c >= sigma_ || I.empty()) return {1, 0};
        size_t lo = C_[c] + rank(c, I.lo - 1) + 1;
        size_t hi = C_[c] + rank(c, I.hi);
        if (lo > hi) return {1, 0};
        return {lo, hi};
    }
    Interval backward_search(const std::vector<uint32_t>& pattern) const {
        Interval I = full();
        for (size_t k = pattern.size(); k-- > 0 && !I.empty();) I = backward_step(I, pattern[k]);
        return I;
    }

    // Visits (text position, row) from position n down to 1.
    void invert_stream(const std::function<void(size_t, size_t)>& out) const {
        size_t r = 1;
        for (size_t pos = n_; pos >= 1; --pos) {
            if (pos < n_ && r == 1) throw std::runtime_error("malformed BWT: LF cycle broken");
            out(pos, r);
            r = lf(r);
        }
        if (r != 1) throw std::runtime_error("malformed BWT: LF cycle broken");
    }
    std::vector<uint32_t> invert() const {
        std::vector<uint32_t> t(n_);
        invert_stream([&](size_t pos, size_t r) { t[pos - 1] = first_symbol(r); });
        return t;
    }

    // (row, payload) -> (SA[row], payload), with a single inversion.
    template <class P>
    std::vector<std::pair<size_t, P>> batched_locate(std::vector<std::pair<size_t, P>> pairs) const {
        if (pairs.empty()) return {};
        for (auto& [r, p] : pairs) check(r);
        std::sort(pairs.begin(), pairs.end(), [](auto& a, auto& b) { return a.first < b.first; });
        std::vector<size_t> rows;
        for (auto& [r, p] : pairs)
            if (rows.empty() || rows.back() != r) rows.push_back(r);
        std::vector<size_t> sa(rows.size());
        size_t logn = std::max<size_t>(1, static_cast<size_t>(std::log2(static_cast<double>(n_) + 1)));
        if (rows.size() * logn < n_) {
            // coarse marking: one bit per group of log n rows
            size_t g = logn;
            BitVector marked((n_ + g - 1) / g);
            for (size_t r : rows) marked.set((r - 1) / g + 1);
            marked.build();
            invert_stream([&](size_t pos, size_t r) {
                if (!marked[(r - 1) / g + 1]) return;
                auto it = std::lower_bound(rows.begin(), rows.end(), r);
                if (it != rows.end() && *it == r) sa[it - rows.begin()] = pos;
            });
        } else {
            BitVector marked(n_);
            for (size_t r : rows) marked.set(r);
            marked.build();
            invert_stream([&](size_t pos, size_t r) {
                if (marked[r]) sa[marked.rank1(r) - 1] = pos;
            });
        }
        size_t k = 0;
        for (auto& pr : pairs) {
            while (rows[k] != pr.first) ++k;
            pr.first = sa[k];
        }
        return pairs;
    }

    size_t size_in_bits() const { return seq_.size_in_bits() + cunary_.size_in_bits() + (has_rd_ ? rd_.size_in_bits() : 0); }

    void save(Writer& w) const {
        w.u64(n_);
        w.u32(sigma_);
        w.u8(rotation_set_);
        seq_.save(w);
        w.u8(has_rd_);
        if (has_rd_) rd_.save(w);
    }
    void load(Reader& r) {
        n_ = r.u64();
        sigma_ = r.u32();
        rotation_set_ = r.u8();
        seq_.load(r);
        if (seq_.size() != n_ || seq_.sigma() != sigma_) throw FormatError("bwt section");
        C_ = seq_.counts();
        build_unary();
        has_rd_ = r.u8();
        if (has_rd_) rd_.load(r);
    }

private:
    void check(size_t i) const {
        if (i == 0 || i > n_) throw std::out_of_range("row out of range");
    }
    void build_unary() {
        cunary_ = BitVector(n_ + sigma_);
        size_t p = 0;
        for (uint32_t c = 0; c < sigma_; ++c) {
            ++p;  // zero
            for (u64 k = 0; k < C_[c + 1] - C_[c]; ++k) cunary_.set(++p);
        }
        cunary_.build();
    }

    size_t n_ = 0;
    uint32_t sigma_ = 1;
    bool rotation_set_ = false;
    SequenceIndex seq_;
    std::vector<u64> C_;
    BitVector cunary_;
    RangeDistinct rd_;
    bool has_rd_ = false;
};

inline BwtString make_bwt(const Text& t, bool with_rd = true) {
    BwtString b(bwt_from_suffix_array(t), t.alphabet_size());
    if (with_rd) b.build_range_distinct();
    return b;
}

}  // namespace ubwt
