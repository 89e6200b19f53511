#pragma once
// BWT construction by merging and by recursive block halving.
//
// merge: the rotations of several disjoint rotation sets are interleaved by
// walking only the impure right-maximal strings of their union; every child
// W·b of such a node that occurs in one set only is a contiguous run of rows,
// copied verbatim to offset 1 + sum_i smaller(b, i).
//
// bwt_linear: X = T'·0^q is cut into B-symbol blocks packed into words; the
// rotation BWT of the block string is sorted directly, then each halving step
// derives the BWT of the block string shifted by B/2 and merges the two.

#include <bit>
#include <functional>
#include <stdexcept>
#include <vector>

#include "enumerate.hpp"

namespace ubwt {

// Interleaved BWT of the union of disjoint rotation sets.  which[r] (if
// requested) receives the index of the set contributing merged row r.
inline std::vector<uint32_t> merge_bwt_symbols(const std::vector<const BwtString*>& parts,
                                               std::vector<uint32_t>* which = nullptr) {
    size_t total = 0;
    for (auto* b : parts) total += b->size();
    std::vector<uint32_t> out(total);
    if (which) which->assign(total, 0);
    if (parts.size() == 1) {
        out = parts[0]->symbols();
        return out;
    }
    size_t copied = 0;
    size_t m = parts.size();
    GenOptions opt;
    opt.mode = GenMode::ImpureOnly;
    opt.distinct_separators = false;
    opt.max_depth = total;
    // rows of set i smaller than W·b
    auto smaller = [&](const ReprView& v, uint32_t b) -> size_t {
        if (v.k == 0 || v.chars[0] >= b) return v.first[0] - 1;
        size_t j = std::upper_bound(v.chars, v.chars + v.k, b - 1) - v.chars;  // chars[j-1] < b
        return v.first[j] - 1;
    };
    enumerate_generalized(
        parts,
        [&](const GenView& g) {
            for (size_t p = 0; p < m; ++p) {
                const ReprView& v = g.text(p);
                for (size_t j = 0; j < v.k; ++j) {
                    uint32_t b = v.chars[j];
                    bool pure = true;
                    for (size_t o = 0; o < m && pure; ++o) {
                        if (o == p) continue;
                        const ReprView& u = g.text(o);
                        pure = !std::binary_search(u.chars, u.chars + u.k, b);
                    }
                    if (!pure) continue;
                    size_t x = 1;
                    for (size_t o = 0; o < m; ++o) x += smaller(g.text(o), b);
                    // within Wb only set p contributes, so its own offset is exact
                    for (size_t r = v.first[j]; r < v.first[j + 1]; ++r, ++x) {
                        if (x > total) throw std::runtime_error("overlapping rotation sets");
                        out[x - 1] = (*parts[p])[r];
                        if (which) (*which)[x - 1] = static_cast<uint32_t>(p);
                        ++copied;
                    }
                }
            }
        },
        opt);
    if (copied != total) throw std::runtime_error("overlapping rotation sets");
    return out;
}

inline BwtString merge_bwts(const BwtString& b1, const BwtString& b2) {
    auto L = merge_bwt_symbols({&b1, &b2});
    BwtString out(L, std::max(b1.sigma(), b2.sigma()), true);
    out.build_range_distinct();
    return out;
}

// ---- block machinery ------------------------------------------------------------

// Order-preserving dense ranks (0-based) of word values, by LSD radix sort.
inline std::vector<uint32_t> dense_ranks(const std::vector<u64>& v, std::vector<u64>* distinct = nullptr) {
    size_t n = v.size();
    u64 all = 0;
    for (u64 x : v) all |= x;
    unsigned bits = std::max<unsigned>(1, static_cast<unsigned>(std::bit_width(all)));
    constexpr unsigned kDigit = 11;
    std::vector<uint32_t> idx(n), tmp(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<size_t> cnt(size_t(1) << kDigit);
    for (unsigned shift = 0; shift < bits; shift += kDigit) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (uint32_t i : idx) ++cnt[(v[i] >> shift) & ((1u << kDigit) - 1)];
        size_t s = 0;
        for (auto& c : cnt) {
            size_t t = c;
            c = s;
            s += t;
        }
        for (uint32_t i : idx) tmp[cnt[(v[i] >> shift) & ((1u << kDigit) - 1)]++] = i;
        idx.swap(tmp);
    }
    std::vector<uint32_t> rank(n);
    if (distinct) distinct->clear();
    uint32_t r = 0;
    for (size_t k = 0; k < n; ++k) {
        if (k > 0 && v[idx[k]] != v[idx[k - 1]]) ++r;
        if (distinct && (k == 0 || v[idx[k]] != v[idx[k - 1]])) distinct->push_back(v[idx[k]]);
        rank[idx[k]] = r;
    }
    return rank;
}

inline u64 block_right(u64 x, unsigned half_bits) { return half_bits >= 64 ? x : x & ((u64(1) << half_bits) - 1); }
inline u64 block_left(u64 x, unsigned half_bits) { return half_bits >= 64 ? 0 : x >> half_bits; }

// Packs s (length a multiple of B) into B-symbol blocks, first symbol most significant.
inline std::vector<u64> pack_blocks(const std::vector<uint32_t>& s, unsigned B, unsigned bits) {
    if (B == 0 || s.size() % B) throw std::invalid_argument("length not a block multiple");
    std::vector<u64> out(s.size() / B);
    for (size_t j = 0; j < out.size(); ++j) {
        u64 x = 0;
        for (unsigned t = 0; t < B; ++t) x = (x << bits) | s[j * B + t];
        out[j] = x;
    }
    return out;
}

// Rotation BWT of a primitive word string by suffix sorting its square.
inline std::vector<u64> rotation_bwt_words(const std::vector<u64>& x) {
    size_t N = x.size();
    auto r = dense_ranks(x);
    uint32_t K = 0;
    for (auto v : r) K = std::max(K, v + 1);
    std::vector<uint32_t> sq(2 * N);
    for (size_t i = 0; i < N; ++i) sq[i] = sq[i + N] = r[i];
    auto sa = suffix_array(sq, K);
    std::vector<u64> L;
    L.reserve(N);
    for (uint32_t p : sa)
        if (p < N) L.push_back(x[(p + N - 1) % N]);
    return L;
}

namespace detail {
inline std::vector<size_t> lf_of_words(const std::vector<u64>& L) {
    auto r = dense_ranks(L);
    uint32_t K = 0;
    for (auto v : r) K = std::max(K, v + 1);
    std::vector<size_t> C(K + 1, 0);
    for (auto v : r) ++C[v + 1];
    for (uint32_t c = 0; c < K; ++c) C[c + 1] += C[c];
    std::vector<size_t> lf(L.size());
    for (size_t i = 0; i < L.size(); ++i) lf[i] = C[r[i]]++;  // 0-based
    return lf;
}
}  // namespace detail

// BWT of the block string shifted left by B/2 symbols, from that of X_B.
inline std::vector<u64> left_shift_bwt(const std::vector<u64>& L, unsigned B, unsigned bits) {
    if (B % 2) throw std::invalid_argument("odd block size");
    unsigned hb = (B / 2) * bits;
    size_t N = L.size();
    auto lf = detail::lf_of_words(L);
    std::vector<u64> key(N);
    for (size_t i = 0; i < N; ++i) key[i] = block_right(L[i], hb);
    // stable bucketing of rows by the right half of their BWT block
    auto kr = dense_ranks(key);
    uint32_t K = 0;
    for (auto v : kr) K = std::max(K, v + 1);
    std::vector<size_t> pos(K + 1, 0);
    for (auto v : kr) ++pos[v + 1];
    for (uint32_t c = 0; c < K; ++c) pos[c + 1] += pos[c];
    std::vector<u64> out(N);
    for (size_t r = 0; r < N; ++r)
        out[pos[kr[r]]++] = (block_right(L[lf[r]], hb) << hb) | block_left(L[r], hb);
    return out;
}

// BWT of X_{B/2} from the BWTs of X_B and of its left shift.
inline std::vector<u64> half_block_merge(const std::vector<u64>& L, const std::vector<u64>& Ls, unsigned B, unsigned bits) {
    std::vector<u64> both(L);
    both.insert(both.end(), Ls.begin(), Ls.end());
    std::vector<u64> alpha;
    auto r = dense_ranks(both, &alpha);
    uint32_t K = static_cast<uint32_t>(alpha.size());
    std::vector<uint32_t> a(r.begin(), r.begin() + L.size()), b(r.begin() + L.size(), r.end());
    BwtString x(a, K, true), y(b, K, true);
    x.build_range_distinct();
    y.build_range_distinct();
    auto merged = merge_bwt_symbols({&x, &y});
    unsigned hb = (B / 2) * bits;
    std::vector<u64> out(merged.size());
    for (size_t i = 0; i < merged.size(); ++i) out[i] = block_right(alpha[merged[i]], hb);
    return out;
}

struct LinearPlan {
    unsigned B = 1;     // top block size (power of two)
    unsigned bits = 1;  // bits per symbol
    size_t q = 0;       // padding symbols
    std::vector<uint32_t> X;
};

// Chooses B = 2^ceil(log(log n' / (2 log sigma))), at least 2 and fitting a word.
inline LinearPlan plan_linear(const std::vector<uint32_t>& s) {
    if (!is_terminated(s)) throw std::invalid_argument("unterminated text");
    LinearPlan pl;
    size_t n = s.size();
    uint32_t K = *std::max_element(s.begin(), s.end()) + 1;
    pl.bits = std::max<unsigned>(1, static_cast<unsigned>(std::bit_width(K - 1)));
    double lg = std::log2(static_cast<double>(std::max<size_t>(n, 2)));
    double ls = std::log2(static_cast<double>(std::max<uint32_t>(K, 2)));
    double target = lg / (2 * ls);
    unsigned B = 2;
    while (B < target) B *= 2;
    while (B > 2 && B * pl.bits > 64) B /= 2;
    pl.B = B;
    size_t np = (n + B - 1) / B * B;
    pl.q = np - (n - 1);
    pl.X.assign(s.begin(), s.end() - 1);
    pl.X.resize(np, 0);
    return pl;
}

// Level hook: (block size, BWT of the packed block string at that level).
using LevelHook = std::function<void(unsigned, const std::vector<u64>&)>;

inline std::vector<uint32_t> bwt_linear_symbols(const std::vector<uint32_t>& s, const LevelHook& hook = {}) {
    if (!is_terminated(s)) throw std::invalid_argument("unterminated text");
    if (s.size() == 1) return s;
    LinearPlan pl = plan_linear(s);
    if (pl.B * pl.bits > 64) return bwt_from_suffix_array(s);
    unsigned B = pl.B;
    auto L = rotation_bwt_words(pack_blocks(pl.X, B, pl.bits));
    if (hook) hook(B, L);
    while (B > 1) {
        auto Ls = left_shift_bwt(L, B, pl.bits);
        L = half_block_merge(L, Ls, B, pl.bits);
        B /= 2;
        if (hook) hook(B, L);
    }
    // drop the rows of rotations starting inside the padding, except the first
    std::vector<uint32_t> out;
    out.reserve(s.size());
    out.push_back(static_cast<uint32_t>(L[0]));
    for (size_t r = pl.q; r < L.size(); ++r) out.push_back(static_cast<uint32_t>(L[r]));
    return out;
}

inline BwtString bwt_linear(const Text& t, bool with_rd = true) {
    BwtString b(bwt_linear_symbols(t.symbols), t.alphabet_size());
    if (with_rd) b.build_range_distinct();
    return b;
}

}  // namespace ubwt
