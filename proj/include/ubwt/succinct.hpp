#pragma once
// Bit-level primitives. Every position argument is 1-based; rank(i) counts
// over the prefix of length i and select(j) returns the position of the j-th
// occurrence.

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "io.hpp"

namespace ubwt {

using u64 = uint64_t;
using u32 = uint32_t;

namespace detail {

struct SelectTable {
    std::array<std::array<uint8_t, 8>, 256> t{};
    constexpr SelectTable() {
        for (int x = 0; x < 256; ++x) {
            int k = 0;
            for (int b = 0; b < 8; ++b)
                if (x >> b & 1) t[x][k++] = static_cast<uint8_t>(b);
        }
    }
};
inline constexpr SelectTable kSel{};

// Offset of the (k+1)-th set bit of x; k < popcount(x).
inline unsigned select_in_word(u64 x, unsigned k) {
    unsigned off = 0;
    for (;;) {
        unsigned c = std::popcount(x & 0xff);
        if (k < c) return off + kSel.t[x & 0xff][k];
        k -= c;
        x >>= 8;
        off += 8;
    }
}

inline u64 low_mask(unsigned r) { return r >= 64 ? ~u64(0) : ((u64(1) << r) - 1); }

}  // namespace detail

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(size_t n, bool v = false) : n_(n), w_(n / 64 + 1, v ? ~u64(0) : 0) {
        if (v) trim();
    }

    size_t size() const { return n_; }
    bool operator[](size_t i) const {
        --i;
        return w_[i >> 6] >> (i & 63) & 1;
    }
    bool get(size_t i) const { return (*this)[i]; }
    void set(size_t i, bool v = true) {
        --i;
        if (v) w_[i >> 6] |= u64(1) << (i & 63);
        else w_[i >> 6] &= ~(u64(1) << (i & 63));
    }
    void push_back(bool v) {
        if ((n_ >> 6) + 1 > w_.size()) w_.push_back(0);
        ++n_;
        if ((n_ >> 6) + 1 > w_.size()) w_.push_back(0);
        set(n_, v);
    }
    void append(bool v, size_t times) {
        for (size_t t = 0; t < times; ++t) push_back(v);
    }
    const std::vector<u64>& words() const { return w_; }

    // Builds the rank/select directories; must be called after the last write.
    void build() {
        if (w_.size() < n_ / 64 + 1) w_.resize(n_ / 64 + 1, 0);
        trim();
        size_t nw = w_.size();
        size_t nsb = (nw + 7) / 8;
        super_.assign(nsb + 1, 0);
        block_.assign(nw, 0);
        u64 acc = 0;
        for (size_t q = 0; q < nw; ++q) {
            if (q % 8 == 0) super_[q / 8] = acc;
            block_[q] = static_cast<uint16_t>(acc - super_[q / 8]);
            acc += std::popcount(w_[q]);
        }
        super_[nsb] = acc;
        ones_ = acc;
        sel1_.clear();
        sel0_.clear();
        // sample[k] = superblock holding the (k*kSample+1)-th one (resp. zero)
        u64 need1 = 1, need0 = 1;
        for (size_t s = 0; s < nsb; ++s) {
            u64 o_end = super_[s + 1];
            u64 z_end = std::min<u64>(static_cast<u64>((s + 1) * 512), n_) - o_end;
            while (need1 <= o_end) {
                sel1_.push_back(static_cast<u32>(s));
                need1 += kSample;
            }
            while (need0 <= z_end) {
                sel0_.push_back(static_cast<u32>(s));
                need0 += kSample;
            }
        }
        built_ = true;
    }
    bool built() const { return built_; }

    size_t ones() const { return ones_; }
    size_t zeros() const { return n_ - ones_; }

    size_t rank1(size_t i) const {
        assert(built_ && i <= n_);
        size_t q = i >> 6;
        return super_[q >> 3] + block_[q] + std::popcount(w_[q] & detail::low_mask(i & 63));
    }
    size_t rank0(size_t i) const { return i - rank1(i); }
    size_t rank(bool b, size_t i) const { return b ? rank1(i) : rank0(i); }

    size_t select1(size_t j) const {
        if (j == 0 || j > ones_) throw std::out_of_range("select1 argument");
        size_t lo = sel1_[(j - 1) / kSample];
        size_t hi = (j - 1) / kSample + 1 < sel1_.size() ? sel1_[(j - 1) / kSample + 1] : super_.size() - 2;
        // last superblock s in [lo,hi] with super_[s] < j
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            if (super_[mid] < j) lo = mid;
            else hi = mid - 1;
        }
        size_t rem = j - super_[lo];
        size_t q = lo * 8;
        size_t qe = std::min(q + 8, w_.size());
        while (q + 1 < qe && block_[q + 1] < rem) ++q;
        rem -= block_[q];
        return q * 64 + detail::select_in_word(w_[q], static_cast<unsigned>(rem - 1)) + 1;
    }
    size_t select0(size_t j) const {
        if (j == 0 || j > n_ - ones_) throw std::out_of_range("select0 argument");
        size_t lo = sel0_[(j - 1) / kSample];
        size_t hi = (j - 1) / kSample + 1 < sel0_.size() ? sel0_[(j - 1) / kSample + 1] : super_.size() - 2;
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            if (mid * 512 - super_[mid] < j) lo = mid;
            else hi = mid - 1;
        }
        size_t rem = j - (lo * 512 - super_[lo]);
        size_t q = lo * 8;
        size_t qe = std::min(q + 8, w_.size());
        while (q + 1 < qe && ((q + 1 - lo * 8) * 64 - block_[q + 1]) < rem) ++q;
        rem -= (q - lo * 8) * 64 - block_[q];
        return q * 64 + detail::select_in_word(~w_[q], static_cast<unsigned>(rem - 1)) + 1;
    }
    size_t select(bool b, size_t j) const { return b ? select1(j) : select0(j); }

    size_t size_in_bits() const {
        return 64 * (w_.size() + super_.size() + sel1_.size() / 2 + sel0_.size() / 2) + 16 * block_.size();
    }

    void save(Writer& w) const {
        w.u64(n_);
        w.vec(w_);
    }
    void load(Reader& r) {
        n_ = r.u64();
        r.vec(w_);
        if (w_.size() != n_ / 64 + 1) throw FormatError("bitvector size mismatch");
        build();
    }

    bool operator==(const BitVector& o) const {
        if (n_ != o.n_) return false;
        for (size_t q = 0; q < n_ / 64 + 1; ++q)
            if (w_[q] != o.w_[q]) return false;
        return true;
    }

private:
    static constexpr size_t kSample = 512;
    void trim() {
        size_t q = n_ >> 6;
        w_[q] &= detail::low_mask(n_ & 63);
        for (size_t k = q + 1; k < w_.size(); ++k) w_[k] = 0;
    }

    size_t n_ = 0;
    std::vector<u64> w_ = std::vector<u64>(1, 0);
    std::vector<u64> super_;
    std::vector<uint16_t> block_;
    std::vector<u32> sel1_, sel0_;
    size_t ones_ = 0;
    bool built_ = false;
};

// Fixed-width packed integer array, 1-based.
class IntVector {
public:
    IntVector() = default;
    IntVector(size_t n, unsigned width) : n_(n), width_(std::max(1u, width)), w_((n * width_ + 63) / 64 + 1, 0) {}

    static unsigned width_for(u64 maxval) { return std::max(1u, static_cast<unsigned>(std::bit_width(maxval))); }

    size_t size() const { return n_; }
    unsigned width() const { return width_; }
    u64 operator[](size_t i) const { return get(i); }
    u64 get(size_t i) const {
        size_t b = (i - 1) * width_;
        size_t q = b >> 6, r = b & 63;
        u64 v = w_[q] >> r;
        if (r + width_ > 64) v |= w_[q + 1] << (64 - r);
        return v & detail::low_mask(width_);
    }
    void set(size_t i, u64 v) {
        size_t b = (i - 1) * width_;
        size_t q = b >> 6, r = b & 63;
        u64 m = detail::low_mask(width_);
        v &= m;
        w_[q] = (w_[q] & ~(m << r)) | (v << r);
        if (r + width_ > 64) {
            unsigned hi = static_cast<unsigned>(r + width_ - 64);
            w_[q + 1] = (w_[q + 1] & ~detail::low_mask(hi)) | (v >> (64 - r));
        }
    }
    size_t size_in_bits() const { return 64 * w_.size(); }

    void save(Writer& w) const {
        w.u64(n_);
        w.u32(width_);
        w.vec(w_);
    }
    void load(Reader& r) {
        n_ = r.u64();
        width_ = r.u32();
        r.vec(w_);
        if (width_ == 0 || width_ > 64 || w_.size() != (n_ * width_ + 63) / 64 + 1) throw FormatError("intvector size");
    }

private:
    size_t n_ = 0;
    unsigned width_ = 1;
    std::vector<u64> w_ = std::vector<u64>(1, 0);
};

// Elias-Fano encoding of a non-decreasing sequence x_1 <= ... <= x_n.
class EliasFano {
public:
    EliasFano() = default;
    explicit EliasFano(const std::vector<u64>& xs) { build(xs); }

    void build(const std::vector<u64>& xs) {
        n_ = xs.size();
        u64 u = n_ ? xs.back() : 0;
        low_bits_ = 0;
        if (n_ && u > n_) low_bits_ = static_cast<unsigned>(std::bit_width(u / n_) - 1);
        low_ = IntVector(n_, low_bits_);
        high_ = BitVector(n_ + (u >> low_bits_) + 1);
        u64 prev = 0;
        for (size_t i = 1; i <= n_; ++i) {
            u64 x = xs[i - 1];
            if (x < prev) throw std::invalid_argument("EliasFano: sequence not monotone");
            prev = x;
            if (low_bits_) low_.set(i, x & detail::low_mask(low_bits_));
            high_.set((x >> low_bits_) + i);
        }
        high_.build();
    }

    size_t size() const { return n_; }
    u64 operator[](size_t i) const { return get(i); }
    u64 get(size_t i) const {
        if (i == 0 || i > n_) throw std::out_of_range("EliasFano index");
        u64 hi = high_.select1(i) - i;
        return (hi << low_bits_) | (low_bits_ ? low_.get(i) : 0);
    }
    // Number of elements <= x.
    size_t count_leq(u64 x) const {
        u64 hb = x >> low_bits_;
        // elements with high part < hb: ones before the hb-th zero
        size_t lo = hb == 0 ? 0 : (hb <= high_.zeros() ? high_.select0(hb) - hb : n_);
        size_t hi = (hb + 1 <= high_.zeros()) ? high_.select0(hb + 1) - (hb + 1) : n_;
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            if (get(mid + 1) <= x) lo = mid + 1;
            else hi = mid;
        }
        return lo;
    }
    size_t size_in_bits() const { return high_.size_in_bits() + low_.size_in_bits(); }
    size_t payload_bits() const { return high_.size() + n_ * low_bits_; }

    void save(Writer& w) const {
        w.u64(n_);
        w.u32(low_bits_);
        low_.save(w);
        high_.save(w);
    }
    void load(Reader& r) {
        n_ = r.u64();
        low_bits_ = r.u32();
        low_.load(r);
        high_.load(r);
    }

private:
    size_t n_ = 0;
    unsigned low_bits_ = 0;
    IntVector low_;
    BitVector high_;
};

// Prefix sums over a non-negative array A[1..n]: query(i) = A[1]+...+A[i].
class PrefixSum {
public:
    PrefixSum() = default;
    explicit PrefixSum(const std::vector<u64>& a) { build(a); }
    void build(const std::vector<u64>& a) {
        std::vector<u64> s(a.size());
        u64 acc = 0;
        for (size_t i = 0; i < a.size(); ++i) s[i] = acc += a[i];
        ef_.build(s);
    }
    size_t size() const { return ef_.size(); }
    u64 total() const { return ef_.size() ? ef_.get(ef_.size()) : 0; }
    u64 query(size_t i) const {
        if (i > ef_.size()) throw std::out_of_range("prefix sum index");
        return i == 0 ? 0 : ef_.get(i);
    }
    u64 value(size_t i) const { return query(i) - query(i - 1); }
    // Range sum A[i..j].
    u64 range(size_t i, size_t j) const { return j < i ? 0 : query(j) - query(i - 1); }
    size_t size_in_bits() const { return ef_.size_in_bits(); }
    size_t payload_bits() const { return ef_.payload_bits(); }
    void save(Writer& w) const { ef_.save(w); }
    void load(Reader& r) { ef_.load(r); }

private:
    EliasFano ef_;
};

// Concatenated gamma-style codes: x >= 0 costs 1 + 2*ceil(log2(x+1)) bits,
// written as L zeros, a one, then the L low bits of x with L = bitwidth(x).
class GammaStream {
public:
    GammaStream() = default;
    explicit GammaStream(const std::vector<u64>& vals) { build(vals); }

    static unsigned code_length(u64 x) { return 1 + 2 * static_cast<unsigned>(std::bit_width(x)); }

    void build(const std::vector<u64>& vals) {
        bits_ = BitVector();
        starts_ = BitVector();
        for (u64 x : vals) append(x);
        finish();
    }
    void append(u64 x) {
        unsigned L = static_cast<unsigned>(std::bit_width(x));
        starts_.push_back(true);
        starts_.append(false, 2 * L);
        bits_.append(false, L);
        bits_.push_back(true);
        for (unsigned b = L; b-- > 0;) bits_.push_back(x >> b & 1);
        ++n_;
    }
    void finish() {
        starts_.build();
        bits_.build();
    }

    size_t size() const { return n_; }
    u64 read(size_t i) const {
        if (i == 0 || i > n_) throw std::out_of_range("gamma index");
        size_t p = starts_.select1(i);
        unsigned L = 0;
        while (!bits_[p]) ++L, ++p;
        u64 x = 0;
        for (unsigned b = 0; b < L; ++b) x = x << 1 | bits_[++p];
        return x;
    }
    size_t encoded_bits() const { return bits_.size(); }
    size_t size_in_bits() const { return bits_.size_in_bits() + starts_.size_in_bits(); }

    void save(Writer& w) const {
        w.u64(n_);
        bits_.save(w);
        starts_.save(w);
    }
    void load(Reader& r) {
        n_ = r.u64();
        bits_.load(r);
        starts_.load(r);
    }

private:
    size_t n_ = 0;
    BitVector bits_, starts_;
};

// Deterministic predecessor over a sorted set of distinct integers: a bucket
// directory on the high bits narrows each query to a short binary search.
class PredecessorSet {
public:
    PredecessorSet() = default;
    explicit PredecessorSet(std::vector<u64> xs) { build(std::move(xs)); }

    void build(std::vector<u64> xs) {
        for (size_t i = 1; i < xs.size(); ++i)
            if (xs[i] <= xs[i - 1]) throw std::invalid_argument("PredecessorSet: not strictly increasing");
        xs_ = std::move(xs);
        u64 u = xs_.empty() ? 1 : xs_.back() + 1;
        unsigned ub = static_cast<unsigned>(std::bit_width(u));
        unsigned nb = static_cast<unsigned>(std::bit_width(std::max<size_t>(xs_.size(), 1)));
        shift_ = ub > nb ? ub - nb : 0;
        size_t buckets = static_cast<size_t>((u >> shift_) + 2);
        first_.assign(buckets + 1, 0);
        for (u64 x : xs_) ++first_[(x >> shift_) + 1];
        for (size_t b = 1; b <= buckets; ++b) first_[b] += first_[b - 1];
    }

    size_t size() const { return xs_.size(); }
    u64 at(size_t i) const { return xs_[i - 1]; }
    // 1-based index of the largest element <= q.
    std::optional<size_t> predecessor(u64 q) const {
        if (xs_.empty() || q < xs_.front()) return std::nullopt;
        u64 b = q >> shift_;
        if (b + 1 >= first_.size()) return xs_.size();
        // candidates: elements of bucket b that are <= q, else the last element before bucket b
        size_t lo = first_[b], hi = first_[b + 1];
        auto it = std::upper_bound(xs_.begin() + lo, xs_.begin() + hi, q);
        return static_cast<size_t>(it - xs_.begin());
    }

private:
    std::vector<u64> xs_;
    std::vector<u64> first_;
    unsigned shift_ = 0;
};

}  // namespace ubwt
