#pragma once
// Balanced parentheses with a range-min-max excess directory, the tree
// navigation built on it, and an array-free RMQ over a Cartesian-tree BP.
//
// Excess E(p) = (#opens - #closes) in bits 1..p, E(0) = 0.  Directory blocks
// cover the excess values at positions 256s .. 256s+255.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "succinct.hpp"

namespace ubwt {

namespace detail {

struct ExcessTables {
    int8_t exc[256];
    int8_t pre[256][8];  // excess of the first k bits, k = 0..7
    int8_t mn[256];      // min over pre[x][0..7]
    int8_t mx[256];
    constexpr ExcessTables() : exc{}, pre{}, mn{}, mx{} {
        for (int x = 0; x < 256; ++x) {
            int e = 0, lo = 0, hi = 0;
            for (int k = 0; k < 8; ++k) {
                pre[x][k] = static_cast<int8_t>(e);
                lo = std::min(lo, e);
                hi = std::max(hi, e);
                e += (x >> k & 1) ? 1 : -1;
            }
            exc[x] = static_cast<int8_t>(e);
            mn[x] = static_cast<int8_t>(lo);
            mx[x] = static_cast<int8_t>(hi);
        }
    }
};
inline constexpr ExcessTables kExc{};

}  // namespace detail

class ExcessIndex {
public:
    static constexpr size_t kBlock = 256;
    static constexpr long kNone = -1;

    ExcessIndex() = default;
    explicit ExcessIndex(BitVector bits) { build(std::move(bits)); }

    void build(BitVector bits) {
        bits_ = std::move(bits);
        bits_.build();
        n_ = bits_.size();
        nb_ = n_ / kBlock + 1;
        P_ = 1;
        while (P_ < nb_) P_ <<= 1;
        mn_.assign(2 * P_, INT32_MAX);
        mx_.assign(2 * P_, INT32_MIN);
        int64_t e = 0;
        for (size_t p = 0; p <= n_; ++p) {
            if (p) e += bits_[p] ? 1 : -1;
            size_t s = P_ + p / kBlock;
            mn_[s] = std::min<int32_t>(mn_[s], static_cast<int32_t>(e));
            mx_[s] = std::max<int32_t>(mx_[s], static_cast<int32_t>(e));
        }
        for (size_t v = P_ - 1; v >= 1; --v) {
            mn_[v] = std::min(mn_[2 * v], mn_[2 * v + 1]);
            mx_[v] = std::max(mx_[2 * v], mx_[2 * v + 1]);
        }
    }

    const BitVector& bits() const { return bits_; }
    size_t size() const { return n_; }
    int64_t excess(size_t p) const { return 2 * static_cast<int64_t>(bits_.rank1(p)) - static_cast<int64_t>(p); }

    // Smallest j > i with E(j) <= t, or kNone.
    long fwd(size_t i, int64_t t) const {
        size_t p = i + 1;
        if (p > n_) return kNone;
        int64_t e = excess(p);
        long r = scan_fwd(p, e, t);
        if (r != kNone) return r;
        size_t s = (i + 1) / kBlock + 1;
        if (s >= nb_) return kNone;
        long b = first_block(s, [&](size_t v) { return mn_[v] <= t; });
        if (b == kNone) return kNone;
        p = static_cast<size_t>(b) * kBlock;
        return scan_fwd(p, excess(p), t);
    }

    // Largest j < i (j >= 0) with E(j) <= t, or kNone.
    long bwd(size_t i, int64_t t) const {
        if (i == 0) return kNone;
        long p = static_cast<long>(i) - 1;
        long r = scan_bwd(p, excess(p), t);
        if (r != kNone) return r;
        size_t s = static_cast<size_t>(p) / kBlock;
        if (s == 0) return kNone;
        long b = last_block(s - 1, [&](size_t v) { return mn_[v] <= t; });
        if (b == kNone) return kNone;
        p = std::min<long>(b * static_cast<long>(kBlock) + kBlock - 1, static_cast<long>(n_));
        return scan_bwd(p, excess(p), t);
    }

    struct Ext {
        int64_t val;
        size_t pos;
    };
    // Minimum (or maximum) of E over positions [a..b]; leftmost or rightmost position.
    Ext range_min(size_t a, size_t b, bool rightmost = false) const { return range_ext(a, b, false, rightmost); }
    Ext range_max(size_t a, size_t b, bool rightmost = false) const { return range_ext(a, b, true, rightmost); }

    size_t size_in_bits() const { return bits_.size_in_bits() + 64 * mn_.size(); }

private:
    unsigned byte_at(size_t q) const { return static_cast<unsigned>(bits_.words()[q >> 3] >> ((q & 7) * 8)) & 0xff; }
    int step(size_t p) const { return bits_[p] ? 1 : -1; }

    long scan_fwd(size_t p, int64_t e, int64_t t) const {
        size_t end = std::min(n_, (p / kBlock) * kBlock + kBlock - 1);
        const auto& T = detail::kExc;
        while (p <= end) {
            if ((p & 7) == 0 && p + 7 <= end) {
                unsigned x = byte_at(p >> 3);
                if (e + T.mn[x] <= t) {
                    for (int k = 0;; ++k)
                        if (e + T.pre[x][k] <= t) return static_cast<long>(p + k);
                }
                e += T.exc[x];
                p += 8;
            } else {
                if (e <= t) return static_cast<long>(p);
                if (p == n_) break;
                e += step(p + 1);
                ++p;
            }
        }
        return kNone;
    }

    long scan_bwd(long p, int64_t e, int64_t t) const {
        long start = (p / static_cast<long>(kBlock)) * kBlock;
        const auto& T = detail::kExc;
        while (p >= start) {
            if ((p & 7) == 7 && p - 7 >= start) {
                long base = p - 7;
                unsigned x = byte_at(static_cast<size_t>(base) >> 3);
                int64_t eb = e - T.pre[x][7];
                if (eb + T.mn[x] <= t) {
                    for (int k = 7;; --k)
                        if (eb + T.pre[x][k] <= t) return base + k;
                }
                if (base == 0) return kNone;
                e = eb - step(static_cast<size_t>(base));
                p = base - 1;
            } else {
                if (e <= t) return p;
                if (p == 0) return kNone;
                e -= step(static_cast<size_t>(p));
                --p;
            }
        }
        return kNone;
    }

    // Extremum over positions [a..b] by direct scan.
    Ext scan_ext(size_t a, size_t b, bool want_max, bool rightmost) const {
        const auto& T = detail::kExc;
        int64_t e = excess(a);
        Ext best{e, a};
        auto better = [&](int64_t v) {
            if (want_max) return rightmost ? v >= best.val : v > best.val;
            return rightmost ? v <= best.val : v < best.val;
        };
        size_t p = a;
        while (p <= b) {
            if ((p & 7) == 0 && p + 7 <= b) {
                unsigned x = byte_at(p >> 3);
                int64_t cand = e + (want_max ? T.mx[x] : T.mn[x]);
                if (better(cand)) {
                    for (int k = 0; k < 8; ++k)
                        if (better(e + T.pre[x][k])) best = {e + T.pre[x][k], p + k};
                }
                e += T.exc[x];
                p += 8;
            } else {
                if (better(e)) best = {e, p};
                if (p == b) break;
                e += step(p + 1);
                ++p;
            }
        }
        return best;
    }

    Ext range_ext(size_t a, size_t b, bool want_max, bool rightmost) const {
        size_t sa = a / kBlock, sb = b / kBlock;
        if (sa == sb) return scan_ext(a, b, want_max, rightmost);
        Ext L = scan_ext(a, sa * kBlock + kBlock - 1, want_max, rightmost);
        Ext R = scan_ext(sb * kBlock, b, want_max, rightmost);
        bool has_mid = sa + 1 < sb;
        int64_t mid = 0;
        if (has_mid) mid = agg(sa + 1, sb - 1, want_max);
        auto beats = [&](int64_t x, int64_t y) { return want_max ? x > y : x < y; };
        int64_t v = L.val;
        if (beats(R.val, v)) v = R.val;
        if (has_mid && beats(mid, v)) v = mid;
        auto hit = [&](size_t node) { return want_max ? mx_[node] >= v : mn_[node] <= v; };
        if (!rightmost) {
            if (L.val == v) return L;
            if (has_mid && mid == v) {
                long s = first_block(sa + 1, hit);
                return scan_ext(s * kBlock, std::min(n_, s * kBlock + kBlock - 1), want_max, false);
            }
            return R;
        }
        if (R.val == v) return R;
        if (has_mid && mid == v) {
            long s = last_block(sb - 1, hit);
            return scan_ext(s * kBlock, s * kBlock + kBlock - 1, want_max, true);
        }
        return L;
    }

    int64_t agg(size_t l, size_t r, bool want_max) const {
        int64_t res = want_max ? INT64_MIN : INT64_MAX;
        for (size_t lo = l + P_, hi = r + P_ + 1; lo < hi; lo >>= 1, hi >>= 1) {
            if (lo & 1) {
                res = want_max ? std::max<int64_t>(res, mx_[lo]) : std::min<int64_t>(res, mn_[lo]);
                ++lo;
            }
            if (hi & 1) {
                --hi;
                res = want_max ? std::max<int64_t>(res, mx_[hi]) : std::min<int64_t>(res, mn_[hi]);
            }
        }
        return res;
    }

    template <class F>
    long first_block(size_t l, F ok) const {
        return first_rec(1, 0, P_, l, ok);
    }
    template <class F>
    long first_rec(size_t v, size_t nl, size_t nr, size_t l, F& ok) const {
        if (nr <= l || !ok(v)) return kNone;
        if (nr - nl == 1) return static_cast<long>(nl);
        size_t m = (nl + nr) / 2;
        long r = first_rec(2 * v, nl, m, l, ok);
        return r != kNone ? r : first_rec(2 * v + 1, m, nr, l, ok);
    }
    template <class F>
    long last_block(size_t r, F ok) const {
        return last_rec(1, 0, P_, r, ok);
    }
    template <class F>
    long last_rec(size_t v, size_t nl, size_t nr, size_t r, F& ok) const {
        if (nl > r || !ok(v)) return kNone;
        if (nr - nl == 1) return static_cast<long>(nl);
        size_t m = (nl + nr) / 2;
        long x = last_rec(2 * v + 1, m, nr, r, ok);
        return x != kNone ? x : last_rec(2 * v, nl, m, r, ok);
    }

    BitVector bits_;
    size_t n_ = 0, nb_ = 0, P_ = 1;
    std::vector<int32_t> mn_, mx_;
};

// Ordinal tree in BP form.  Node ids are preorder ranks (1-based); id 0 means none.
class BpTree {
public:
    BpTree() = default;
    explicit BpTree(BitVector bits) { build(std::move(bits)); }

    void build(BitVector bits) {
        size_t n = bits.size();
        BitVector leaf(n);
        for (size_t p = 1; p < n; ++p)
            if (bits[p] && !bits[p + 1]) leaf.set(p);
        leaf.build();
        leaf_ = std::move(leaf);
        ex_.build(std::move(bits));
    }

    const BitVector& bits() const { return ex_.bits(); }
    const ExcessIndex& excess_index() const { return ex_; }
    size_t nodes() const { return ex_.bits().ones(); }
    size_t leaves() const { return leaf_.ones(); }
    size_t root() const { return 1; }

    size_t open(size_t v) const { return ex_.bits().select1(v); }
    size_t id_of_open(size_t p) const { return ex_.bits().rank1(p); }
    size_t close(size_t v) const { return close_of(open(v)); }
    size_t close_of(size_t p) const { return static_cast<size_t>(ex_.fwd(p, ex_.excess(p) - 1)); }

    bool is_leaf(size_t v) const { return leaf_[open(v)]; }
    size_t depth(size_t v) const { return static_cast<size_t>(ex_.excess(open(v)) - 1); }
    size_t parent(size_t v) const {
        size_t p = open(v);
        int64_t e = ex_.excess(p);
        if (e <= 1) return 0;
        return id_of_open(static_cast<size_t>(ex_.bwd(p, e - 2)) + 1);
    }
    size_t height(size_t v) const {
        size_t p = open(v);
        return static_cast<size_t>(ex_.range_max(p, close_of(p)).val - ex_.excess(p));
    }
    size_t subtree_size(size_t v) const {
        size_t p = open(v);
        return (close_of(p) - p + 1) / 2;
    }
    // Ancestor of v at tree depth d (root has depth 0).
    size_t ancestor(size_t v, size_t d) const {
        size_t p = open(v);
        if (static_cast<int64_t>(d) > ex_.excess(p) - 1) return 0;
        return id_of_open(static_cast<size_t>(ex_.bwd(p, static_cast<int64_t>(d))) + 1);
    }
    size_t lca(size_t u, size_t v) const {
        size_t x = open(u), y = open(v);
        if (x > y) std::swap(x, y);
        if (close_of(x) >= y) return id_of_open(x);
        auto m = ex_.range_min(x, y, true);
        size_t c = m.pos + 1;  // open of a child of the lca
        int64_t e = ex_.excess(c);
        return id_of_open(static_cast<size_t>(ex_.bwd(c, e - 2)) + 1);
    }

    size_t num_leaves_before(size_t v) const { return leaf_.rank1(open(v) - 1); }
    // Leaf rank (1-based, left to right) of leaf v.
    size_t leaf_rank(size_t v) const { return leaf_.rank1(open(v)); }
    size_t select_leaf(size_t i) const { return id_of_open(leaf_.select1(i)); }
    size_t leftmost_leaf(size_t v) const { return select_leaf(num_leaves_before(v) + 1); }
    size_t rightmost_leaf(size_t v) const { return select_leaf(leaf_.rank1(close(v))); }
    // Leaf-rank interval [l..r] of v's subtree.
    std::pair<size_t, size_t> leaf_range(size_t v) const {
        size_t p = open(v);
        return {leaf_.rank1(p - 1) + 1, leaf_.rank1(close_of(p))};
    }

    size_t first_child(size_t v) const {
        size_t p = open(v);
        return ex_.bits()[p + 1] ? id_of_open(p + 1) : 0;
    }
    size_t next_sibling(size_t v) const {
        size_t c = close(v);
        return c < ex_.size() && ex_.bits()[c + 1] ? id_of_open(c + 1) : 0;
    }
    // i-th child (1-based) or 0.
    size_t child(size_t v, size_t i) const {
        size_t c = first_child(v);
        for (size_t k = 1; c && k < i; ++k) c = next_sibling(c);
        return c;
    }
    size_t num_children(size_t v) const {
        size_t k = 0;
        for (size_t c = first_child(v); c; c = next_sibling(c)) ++k;
        return k;
    }

    bool balanced() const {
        size_t n = ex_.size();
        if (n == 0 || n % 2) return false;
        if (ex_.excess(n) != 0) return false;
        if (n > 1 && ex_.range_min(1, n - 1).val < 1) return false;
        return true;
    }

    void save(Writer& w) const { ex_.bits().save(w); }
    void load(Reader& r) {
        BitVector b;
        b.load(r);
        build(std::move(b));
    }

private:
    ExcessIndex ex_;
    BitVector leaf_;
};

// Range-minimum (or maximum) queries answered from the BP of a Cartesian
// tree; the array itself is not retained.  Ties resolve to the leftmost index.
class Rmq {
public:
    Rmq() = default;
    template <class Vec>
    explicit Rmq(const Vec& a, bool maximum = false) {
        build(a, maximum);
    }

    template <class Vec>
    void build(const Vec& a, bool maximum = false) {
        m_ = a.size();
        maximum_ = maximum;
        BitVector bp;
        std::vector<size_t> st;
        for (size_t x = 0; x < m_; ++x) {
            while (!st.empty() && (maximum ? a[st.back()] < a[x] : a[st.back()] > a[x])) {
                st.pop_back();
                bp.push_back(false);
            }
            st.push_back(x);
            bp.push_back(true);
        }
        bp.append(false, st.size());
        ex_.build(std::move(bp));
    }

    size_t size() const { return m_; }
    // 1-based index of the leftmost minimum of A[i..j].
    size_t query(size_t i, size_t j) const {
        if (i > j || j > m_ || i == 0) throw std::out_of_range("rmq range");
        if (i == j) return i;
        size_t oi = ex_.bits().select1(i), oj = ex_.bits().select1(j);
        auto m = ex_.range_min(oi, oj, true);
        if (m.val < ex_.excess(oi)) return ex_.bits().rank1(m.pos + 1);
        return i;
    }
    size_t size_in_bits() const { return ex_.size_in_bits(); }

    void save(Writer& w) const {
        w.u64(m_);
        w.u8(maximum_);
        ex_.bits().save(w);
    }
    void load(Reader& r) {
        m_ = r.u64();
        maximum_ = r.u8();
        BitVector b;
        b.load(r);
        ex_.build(std::move(b));
    }

private:
    size_t m_ = 0;
    bool maximum_ = false;
    ExcessIndex ex_;
};

}  // namespace ubwt
