#pragma once
// String analyses as callbacks over the enumeration of right-maximal
// substrings: maximal repeats, maximal unique and exact matches, minimal
// absent words, deterministic matching statistics, complexities and kernels.
// All positions are 1-based.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bwt.hpp"
#include "enumerate.hpp"

namespace ubwt {

// ---- maximal repeats ------------------------------------------------------------

struct RepeatPair {
    size_t pos, len;
    bool operator==(const RepeatPair&) const = default;
    auto operator<=>(const RepeatPair&) const = default;
};

struct RepeatOcc {
    size_t id, pos, len;
    bool operator==(const RepeatOcc&) const = default;
    auto operator<=>(const RepeatOcc&) const = default;
};

// One occurrence of every distinct maximal repeat (the empty string excluded),
// sorted by position then length.
inline std::vector<RepeatPair> maximal_repeats(const BwtString& bwt) {
    std::vector<std::pair<size_t, size_t>> rows;  // (row, |W|)
    enumerate_right_maximal(bwt, [&](const ReprView& w, const ExtensionScratch& ext) {
        if (ext.left().size() < 2 || w.depth == 0) return;
        rows.emplace_back(w.first[0], w.depth);
    });
    std::vector<RepeatPair> out;
    for (auto& [pos, len] : bwt.batched_locate(std::move(rows))) out.push_back({pos, len});
    std::sort(out.begin(), out.end());
    return out;
}

// Every occurrence of every maximal repeat, grouped by repeat id.
inline std::vector<RepeatOcc> maximal_repeat_occurrences(const BwtString& bwt) {
    std::vector<std::pair<size_t, std::pair<size_t, size_t>>> rows;  // (row, (id, |W|))
    size_t id = 0;
    enumerate_right_maximal(bwt, [&](const ReprView& w, const ExtensionScratch& ext) {
        if (ext.left().size() < 2 || w.depth == 0) return;
        ++id;
        Interval I = w.interval();
        for (size_t r = I.lo; r <= I.hi; ++r) rows.push_back({r, {id, w.depth}});
    });
    std::vector<RepeatOcc> out;
    for (auto& [pos, p] : bwt.batched_locate(std::move(rows))) out.push_back({p.first, pos, p.second});
    std::sort(out.begin(), out.end());
    return out;
}

// ---- maximal unique matches -----------------------------------------------------

struct Mum {
    size_t id, doc, pos, len;
    bool operator==(const Mum&) const = default;
    auto operator<=>(const Mum&) const = default;
};

// MUMs of d >= 2 documents over codes >= 1.  The documents are indexed as
// D1 #1 D2 #1 ... Dd #2 with #1 = 1 and #2 = 0 (inputs shifted up by one).
// Each MUM gets one id and d triples, one per document.
inline std::vector<Mum> maximal_unique_matches(const std::vector<std::vector<uint32_t>>& docs, uint32_t alphabet) {
    size_t d = docs.size();
    if (d < 2) throw std::invalid_argument("MUMs need at least two documents");
    std::vector<uint32_t> u;
    std::vector<size_t> start;  // 1-based start of each document in u
    for (size_t p = 0; p < d; ++p) {
        if (docs[p].empty()) throw std::invalid_argument("empty document");
        start.push_back(u.size() + 1);
        for (uint32_t c : docs[p]) {
            if (c == 0 || c >= alphabet) throw std::invalid_argument("symbol out of range");
            u.push_back(c + 1);
        }
        u.push_back(p + 1 == d ? 0 : 1);
    }
    size_t n = u.size();
    BwtString bwt(bwt_from_suffix_array(u), alphabet + 1);
    bwt.build_range_distinct();

    auto candidate = [&](const ReprView& w, const ExtensionScratch& ext) {
        return w.depth > 0 && ext.left().size() >= 2 && w.interval().width() == d;
    };
    // first pass: mark both ends of every candidate interval (they are disjoint)
    BitVector intervals(n);
    enumerate_right_maximal(bwt, [&](const ReprView& w, const ExtensionScratch& ext) {
        if (!candidate(w, ext)) return;
        intervals.set(w.interval().lo);
        intervals.set(w.interval().hi);
    });
    intervals.build();
    // which documents reach each candidate interval
    BitVector documents(n);
    bwt.invert_stream([&](size_t pos, size_t row) {
        size_t k = intervals.rank1(row);
        size_t x;
        if (k & 1) x = intervals.select1(k);
        else if (intervals[row]) x = intervals.select1(k - 1);
        else return;
        size_t doc = std::upper_bound(start.begin(), start.end(), pos) - start.begin();
        documents.set(x + doc - 1);
    });
    // drop intervals some document does not reach
    std::vector<size_t> drop;
    for (size_t k = 1; k + 1 <= intervals.rank1(n); k += 2) {
        size_t x = intervals.select1(k), y = intervals.select1(k + 1);
        for (size_t i = x; i <= y; ++i)
            if (!documents[i]) {
                drop.push_back(x);
                drop.push_back(y);
                break;
            }
    }
    for (size_t i : drop) intervals.set(i, false);
    // second pass: report the surviving intervals
    std::vector<std::pair<size_t, std::pair<size_t, size_t>>> rows;
    size_t id = 0;
    enumerate_right_maximal(bwt, [&](const ReprView& w, const ExtensionScratch& ext) {
        if (!candidate(w, ext)) return;
        Interval I = w.interval();
        if (!intervals[I.lo] || !intervals[I.hi]) return;
        ++id;
        for (size_t r = I.lo; r <= I.hi; ++r) rows.push_back({r, {id, w.depth}});
    });
    std::vector<Mum> out;
    for (auto& [pos, p] : bwt.batched_locate(std::move(rows))) {
        size_t doc = std::upper_bound(start.begin(), start.end(), pos) - start.begin();
        out.push_back({p.first, doc, pos - start[doc - 1] + 1, p.second});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- pair product ---------------------------------------------------------------

struct SymbolPair {
    uint32_t a, b;
};

struct ProductStats {
    size_t ops = 0;  // pair inspections
};

// All (i, j) with A[i] and B[j] compatible (different first and different
// second symbols), in time linear in |A| + |B| + output.  Pairs in each set
// must be distinct.
inline std::vector<std::pair<size_t, size_t>> pair_product(const std::vector<SymbolPair>& A, const std::vector<SymbolPair>& B,
                                                           ProductStats* stats = nullptr) {
    std::vector<std::pair<size_t, size_t>> out;
    if (A.empty() || B.empty()) return out;
    bool swapped = A.size() > B.size();
    const auto& X = swapped ? B : A;
    const auto& Y = swapped ? A : B;
    size_t ops = 0;
    auto emit = [&](size_t i, size_t j) { swapped ? out.emplace_back(j, i) : out.emplace_back(i, j); };
    auto compat = [](const SymbolPair& p, const SymbolPair& q) { return p.a != q.a && p.b != q.b; };

    std::vector<size_t> rest(X.size());
    for (size_t i = 0; i < rest.size(); ++i) rest[i] = i;
    while (!rest.empty()) {
        size_t s = rest[0];
        const SymbolPair& p = X[s];
        size_t mate = 0;
        bool found = false;
        for (size_t k = 1; k < rest.size() && !found; ++k) {
            ++ops;
            if (compat(p, X[rest[k]])) {
                mate = k;
                found = true;
            }
        }
        if (found) {
            size_t t = rest[mate];
            for (size_t j = 0; j < Y.size(); ++j) {
                ++ops;
                if (compat(p, Y[j])) emit(s, j);
                if (compat(X[t], Y[j])) emit(t, j);
            }
            rest[mate] = rest.back();
            rest.pop_back();
            rest[0] = rest.back();
            rest.pop_back();
            continue;
        }
        // every other remaining pair shares a first or a second symbol with p
        std::vector<size_t> Aa, Ab;
        for (size_t k = 1; k < rest.size(); ++k) {
            ++ops;
            (X[rest[k]].a == p.a ? Aa : Ab).push_back(rest[k]);
        }
        for (size_t j = 0; j < Y.size(); ++j) {
            const SymbolPair& q = Y[j];
            ++ops;
            if (q.a != p.a && q.b != p.b) {
                emit(s, j);
                for (size_t i : Aa) {
                    ++ops;
                    if (X[i].b != q.b) emit(i, j);
                }
                for (size_t i : Ab) {
                    ++ops;
                    if (X[i].a != q.a) emit(i, j);
                }
            } else if (q.a == p.a && q.b != p.b) {
                for (size_t i : Ab) {
                    ++ops;
                    emit(i, j);
                }
            } else if (q.a != p.a && q.b == p.b) {
                for (size_t i : Aa) {
                    ++ops;
                    emit(i, j);
                }
            }
        }
        break;
    }
    if (stats) stats->ops += ops;
    return out;
}

// ---- maximal exact matches ----------------------------------------------------------

struct Mem {
    size_t pos1, pos2, len;
    bool operator==(const Mem&) const = default;
    auto operator<=>(const Mem&) const = default;
};

// MEMs of length >= min_len between two terminated texts over one alphabet,
// sorted lexicographically.
inline std::vector<Mem> maximal_exact_matches(const BwtString& b1, const BwtString& b2, size_t min_len,
                                              ProductStats* stats = nullptr) {
    if (min_len < 1) throw std::invalid_argument("min_len must be >= 1");
    uint32_t sigma = std::max(b1.sigma(), b2.sigma());
    // text-specific terminators get their own codes
    auto sym = [&](size_t p, uint32_t c) { return c == 0 ? sigma + static_cast<uint32_t>(p) : c; };
    std::vector<std::pair<size_t, size_t>> rows1;  // (row in b1, index into hits)
    std::vector<std::pair<size_t, size_t>> rows2;
    struct Hit {
        size_t len;
    };
    std::vector<Hit> hits;
    std::vector<SymbolPair> X[2];
    std::vector<Interval> XI[2];
    enumerate_generalized({&b1, &b2}, [&](const GenView& g) {
        if (g.depth < min_len || g.text(0).k == 0 || g.text(1).k == 0) return;
        for (size_t p = 0; p < 2; ++p) {
            X[p].clear();
            XI[p].clear();
            const auto& ext = (*g.ext)[p];
            for (uint32_t a : ext.left())
                for (uint32_t q = 0; q < ext.gamma(a); ++q) {
                    X[p].push_back({sym(p, a), sym(p, ext.chars(a)[q])});
                    XI[p].push_back({ext.firsts(a)[q], ext.lasts(a)[q]});
                }
        }
        for (auto [i, j] : pair_product(X[0], X[1], stats)) {
            for (size_t x = XI[0][i].lo; x <= XI[0][i].hi; ++x)
                for (size_t y = XI[1][j].lo; y <= XI[1][j].hi; ++y) {
                    rows1.emplace_back(x, hits.size());
                    rows2.emplace_back(y, hits.size());
                    hits.push_back({g.depth});
                }
        }
    });
    // rows are those of aWb, so W starts one past the located a
    std::vector<Mem> out(hits.size());
    for (auto& [pos, h] : b1.batched_locate(std::move(rows1))) out[h].pos1 = pos % b1.size() + 1;
    for (auto& [pos, h] : b2.batched_locate(std::move(rows2))) {
        out[h].pos2 = pos % b2.size() + 1;
        out[h].len = hits[h].len;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- minimal absent words -----------------------------------------------------------

struct Maw {
    size_t pos, len;
    uint32_t symbol;
    bool operator==(const Maw&) const = default;
    auto operator<=>(const Maw&) const = default;
};

// Minimal absent words aWb over the non-separator symbols; each is encoded as
// (p, |W| + 1, b) meaning T[p .. p+|W|] · b.
inline std::vector<Maw> minimal_absent_words(const BwtString& bwt, uint32_t num_separators = 1) {
    std::vector<uint8_t> used(bwt.sigma(), 0);
    std::vector<std::pair<size_t, std::pair<uint32_t, size_t>>> rows;  // (row, (b, |W|+1))
    enumerate_right_maximal(bwt, [&](const ReprView& w, const ExtensionScratch& ext) {
        if (ext.left().size() < 2) return;
        for (size_t i = 0; i < w.k; ++i) used[w.chars[i]] = 1;
        for (uint32_t a : ext.left()) {
            if (a < num_separators) continue;
            const uint32_t* A = ext.chars(a);
            uint32_t g = ext.gamma(a);
            for (uint32_t j = 0; j < g; ++j) used[A[j]] = 0;
            for (size_t j = 0; j < w.k; ++j) {
                uint32_t b = w.chars[j];
                if (b >= num_separators && used[b]) rows.push_back({ext.firsts(a)[0], {b, w.depth + 1}});
            }
            for (uint32_t j = 0; j < g; ++j) used[A[j]] = 1;
        }
        for (size_t i = 0; i < w.k; ++i) used[w.chars[i]] = 0;
    });
    std::vector<Maw> out;
    for (auto& [pos, p] : bwt.batched_locate(std::move(rows))) out.push_back({pos, p.second, p.first});
    std::sort(out.begin(), out.end());
    return out;
}

// ---- deterministic matching statistics ------------------------------------------

namespace detail {

// Marks, for every rotation start i of T# at which some aWb begins with W in
// S, Wb not in S and aW not in S, the value i (as a 1-based T# position).
inline std::vector<size_t> ms_boundaries(const BwtString& bs, const BwtString& bt) {
    BitVector mark(bt.size());
    std::vector<uint8_t> inS;
    enumerate_generalized({&bs, &bt}, [&](const GenView& g) {
        const ReprView& vs = g.text(0);
        const ReprView& vt = g.text(1);
        if (vs.k == 0 || vt.k == 0) return;
        inS.assign(std::max(bs.sigma(), bt.sigma()), 0);
        for (size_t i = 0; i < vs.k; ++i)
            if (vs.chars[i] != 0) inS[vs.chars[i]] = 1;
        const auto& es = (*g.ext)[0];
        const auto& et = (*g.ext)[1];
        for (size_t i = 0; i < vt.k; ++i) {
            uint32_t b = vt.chars[i];
            if (b != 0 && inS[b]) continue;
            for (uint32_t a : et.left()) {
                if (a != 0 && es.gamma(a) > 0) continue;
                const uint32_t* A = et.chars(a);
                uint32_t ga = et.gamma(a);
                for (uint32_t q = 0; q < ga; ++q)
                    if (A[q] == b) {
                        for (size_t r = et.firsts(a)[q]; r <= et.lasts(a)[q]; ++r) mark.set(r);
                        break;
                    }
            }
        }
    });
    std::vector<size_t> pos;
    bt.invert_stream([&](size_t p, size_t r) {
        if (mark[r]) pos.push_back(p);
    });
    return pos;
}

inline BwtString terminated_bwt(std::vector<uint32_t> s, uint32_t alphabet, bool reversed) {
    for (uint32_t c : s)
        if (c == 0 || c >= alphabet) throw std::invalid_argument("symbol out of range");
    if (reversed) std::reverse(s.begin(), s.end());
    s.push_back(0);
    BwtString b(bwt_from_suffix_array(s), alphabet);
    b.build_range_distinct();
    return b;
}

}  // namespace detail

// MS of t against s (threshold 1) from the start/end bitvectors.  Inputs are
// codes >= 1 over one alphabet, without terminators.
inline std::vector<uint32_t> matching_statistics_det(const std::vector<uint32_t>& s, const std::vector<uint32_t>& t,
                                                     uint32_t alphabet) {
    if (s.empty() || t.empty()) throw std::invalid_argument("empty input");
    size_t m = t.size();
    // start[i] = 1 iff MS[i] > MS[i-1] - 1
    std::vector<uint8_t> start(m + 1, 0);
    start[1] = 1;
    {
        auto bs = detail::terminated_bwt(s, alphabet, false);
        auto bt = detail::terminated_bwt(t, alphabet, false);
        for (size_t i : detail::ms_boundaries(bs, bt)) {
            size_t p = i == m + 1 ? 1 : i + 1;  // W starts right after a
            if (p <= m) start[p] = 1;
        }
    }
    // end[x] = 1 iff x = i + MS[i] - 1 for some i, x in [0..m]
    std::vector<uint8_t> end(m + 1, 0);
    {
        auto bs = detail::terminated_bwt(s, alphabet, true);
        auto bt = detail::terminated_bwt(t, alphabet, true);
        for (size_t i : detail::ms_boundaries(bs, bt)) end[i == m + 1 ? m : m - i] = 1;
    }
    std::vector<uint32_t> ms(m);
    size_t x = 0;
    bool first = true;
    for (size_t i = 1; i <= m; ++i) {
        if (start[i]) {
            if (!first) ++x;
            first = false;
            while (x <= m && !end[x]) ++x;
            if (x > m) throw std::logic_error("matching statistics: inconsistent boundaries");
        }
        ms[i - 1] = static_cast<uint32_t>(x + 1 - i);
    }
    return ms;
}

// ---- complexities ------------------------------------------------------------------

// Distinct k-mers of T (T# indexed by bwt).
inline u64 kmer_complexity(const BwtString& bwt, size_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    size_t len = bwt.size() - 1;
    if (k > len) return 0;
    long long c = static_cast<long long>(len + 1 - k);
    enumerate_right_maximal(bwt, [&](const ReprView& w, const ExtensionScratch&) {
        if (w.depth >= k) c += 1 - static_cast<long long>(w.k);
    });
    return static_cast<u64>(c);
}

// Distinct non-empty substrings of T.
inline u64 substring_complexity(const BwtString& bwt) {
    size_t len = bwt.size() - 1;
    __int128 c = static_cast<__int128>(len) * (len + 1) / 2;
    enumerate_right_maximal(bwt, [&](const ReprView& w, const ExtensionScratch&) {
        c -= static_cast<__int128>(w.depth) * (static_cast<long long>(w.k) - 1);
    });
    return static_cast<u64>(c);
}

// ---- kernels ---------------------------------------------------------------------

enum class KernelWeight { Counts, Probabilities };

struct KernelSums {
    long double cross = 0, self1 = 0, self2 = 0;
    double cosine() const {
        if (self1 <= 0 || self2 <= 0) return 0.0;
        return static_cast<double>(cross / std::sqrt(self1 * self2));
    }
};

namespace detail {

// Sum over loci v of ST(T1#, T2#) of g(v) * (H(depth v) - H(depth parent v)),
// for g = f1*f2, f1*f1, f2*f2, telescoped over the internal nodes.  H maps a
// string depth to the total weight of lengths 1..depth, per product.
template <class Acc, class H>
KernelSums kernel_sums(const BwtString& b1, const BwtString& b2, const H& weight) {
    size_t n1 = b1.size() - 1, n2 = b2.size() - 1;
    Acc cross = 0, s1 = 0, s2 = 0;
    for (size_t L = 1; L <= n1; ++L) s1 += weight(1, L);
    for (size_t L = 1; L <= n2; ++L) s2 += weight(2, L);
    enumerate_generalized({&b1, &b2}, [&](const GenView& g) {
        if (g.depth == 0) return;  // H(0) = 0
        const ReprView& v1 = g.text(0);
        const ReprView& v2 = g.text(1);
        auto width = [](const ReprView& v, size_t i) { return static_cast<Acc>(v.first[i + 1] - v.first[i]); };
        Acc f1 = v1.k ? static_cast<Acc>(v1.first[v1.k] - v1.first[0]) : 0;
        Acc f2 = v2.k ? static_cast<Acc>(v2.first[v2.k] - v2.first[0]) : 0;
        // children: merge the sorted child symbols; a terminator child is a
        // leaf of its own text only
        Acc cc = 0, c1 = 0, c2 = 0;
        size_t i = 0, j = 0;
        while (i < v1.k || j < v2.k) {
            uint32_t a = i < v1.k ? v1.chars[i] : UINT32_MAX;
            uint32_t b = j < v2.k ? v2.chars[j] : UINT32_MAX;
            Acc x = 0, y = 0;
            if (a == 0) {
                x = width(v1, i++);
            } else if (b == 0) {
                y = width(v2, j++);
            } else if (a == b) {
                x = width(v1, i++);
                y = width(v2, j++);
            } else if (a < b) {
                x = width(v1, i++);
            } else {
                y = width(v2, j++);
            }
            cc += x * y;
            c1 += x * x;
            c2 += y * y;
        }
        cross += weight(0, g.depth) * (f1 * f2 - cc);
        s1 += weight(1, g.depth) * (f1 * f1 - c1);
        s2 += weight(2, g.depth) * (f2 * f2 - c2);
    }, GenOptions{GenMode::AllNodes, true, 0});
    return {static_cast<long double>(cross), static_cast<long double>(s1), static_cast<long double>(s2)};
}

// Cumulative per-length weights for the three products.
struct LengthWeights {
    std::vector<long double> H[3];
    long double operator()(int which, size_t d) const { return d < H[which].size() ? H[which][d] : H[which].back(); }
};

inline LengthWeights make_weights(size_t n1, size_t n2, size_t k, KernelWeight w) {
    LengthWeights lw;
    size_t top = std::max(n1, n2);
    for (int which = 0; which < 3; ++which) {
        auto& H = lw.H[which];
        H.assign(top + 1, 0);
        for (size_t L = 1; L <= top; ++L) {
            long double h = 0;
            bool take = k == 0 || L == k;
            if (take) {
                if (w == KernelWeight::Counts) {
                    h = 1;
                } else {
                    long double a = L <= n1 ? static_cast<long double>(n1 - L + 1) : 0;
                    long double b = L <= n2 ? static_cast<long double>(n2 - L + 1) : 0;
                    long double x = which == 2 ? b : a, y = which == 1 ? a : b;
                    h = (x > 0 && y > 0) ? 1 / (x * y) : 0;
                }
            }
            H[L] = H[L - 1] + h;
        }
    }
    return lw;
}

inline KernelSums kernel(const BwtString& b1, const BwtString& b2, size_t k, KernelWeight w) {
    size_t n1 = b1.size() - 1, n2 = b2.size() - 1;
    if (w == KernelWeight::Counts) {
        // exact integer arithmetic: H(d) = d, or [d >= k] for k-mers
        return kernel_sums<__int128>(b1, b2, [k](int, size_t d) -> __int128 {
            return k == 0 ? static_cast<__int128>(d) : (d >= k ? 1 : 0);
        });
    }
    auto lw = make_weights(n1, n2, k, w);
    return kernel_sums<long double>(b1, b2, lw);
}

}  // namespace detail

// Cosine between the k-mer count vectors of T1 and T2.
inline double kmer_kernel(const BwtString& b1, const BwtString& b2, size_t k, KernelWeight w = KernelWeight::Counts) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    return detail::kernel(b1, b2, k, w).cosine();
}

// Cosine between the substring count vectors of T1 and T2.
inline double substring_kernel(const BwtString& b1, const BwtString& b2, KernelWeight w = KernelWeight::Counts) {
    return detail::kernel(b1, b2, 0, w).cosine();
}

}  // namespace ubwt
