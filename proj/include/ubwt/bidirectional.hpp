#pragma once
// Bidirectional BWT index: the BWT of T# and of reverse(T)#, kept in sync by
// countSmaller offsets, plus the left-to-right scans built on it (PLCP,
// distinguishing statistics, matching statistics).

#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "construct.hpp"
#include "enumerate.hpp"
#include "topology.hpp"

namespace ubwt {

// BWT of reverse(T)# from the BWT of T#.  Right-maximal W are enumerated with
// the interval of reverse(W) carried alongside; an a-extension with a single
// right extension b fills that whole reverse interval with b.
inline std::vector<uint32_t> reverse_bwt_symbols(const BwtString& fwd) {
    size_t n = fwd.size();
    if (n == 1) return {fwd[1]};
    std::vector<uint32_t> R(n, UINT32_MAX);
    // reverse interval start of each pending right-maximal string, keyed by
    // its forward interval; holds only what sits on the enumeration stack
    std::unordered_map<u64, size_t> pending;
    auto key = [n](Interval I) { return static_cast<u64>(I.lo) * (static_cast<u64>(n) + 1) + I.hi; };
    pending[key(fwd.full())] = 1;
    std::vector<uint32_t> left;
    enumerate_right_maximal(fwd, [&](const ReprView& w, const ExtensionScratch& ext) {
        auto it = pending.find(key(w.interval()));
        if (it == pending.end()) throw std::logic_error("reverse BWT: unseen string");
        size_t lo = it->second;
        pending.erase(it);
        left = ext.left();
        std::sort(left.begin(), left.end());
        for (uint32_t a : left) {
            Interval J = ext.interval(a);
            if (ext.gamma(a) >= 2) {
                pending[key(J)] = lo;
            } else {
                uint32_t b = ext.chars(a)[0];
                for (size_t r = lo; r < lo + J.width(); ++r) R[r - 1] = b;
            }
            lo += J.width();
        }
    });
    for (uint32_t c : R)
        if (c == UINT32_MAX) throw std::logic_error("reverse BWT: uncovered row");
    return R;
}

inline BwtString reverse_bwt(const BwtString& fwd, bool with_rd = true) {
    BwtString b(reverse_bwt_symbols(fwd), fwd.sigma());
    if (with_rd) b.build_range_distinct();
    return b;
}

struct BiInterval {
    Interval fwd{1, 0}, rev{1, 0};  // I(W, T#) and I(reverse(W), reverse(T)#)
    bool empty() const { return fwd.empty(); }
    size_t width() const { return fwd.width(); }
    bool operator==(const BiInterval&) const = default;
};

struct LeftExtension {
    uint32_t c;
    BiInterval iv;
};

class BidirIndex {
public:
    BidirIndex() = default;

    // fwd must be the BWT of a terminated text, with rangeDistinct.
    void build(BwtString fwd, u64 seed = 0) {
        if (!fwd.has_range_distinct()) fwd.build_range_distinct();
        auto r = reverse_bwt(fwd);
        f_ = std::make_unique<Side>();
        r_ = std::make_unique<Side>();
        f_->build(std::move(fwd), seed);
        r_->build(std::move(r), mix64(seed + 1));
    }
    void build(const std::vector<uint32_t>& text, uint32_t alphabet, u64 seed = 0) {
        BwtString b(bwt_from_suffix_array(text), alphabet);
        b.build_range_distinct();
        build(std::move(b), seed);
    }

    size_t size() const { return f_->bwt.size(); }
    uint32_t sigma() const { return f_->bwt.sigma(); }
    const BwtString& forward() const { return f_->bwt; }
    const BwtString& reverse() const { return r_->bwt; }
    const Topology& forward_topology() const { return f_->topo; }
    const Topology& reverse_topology() const { return r_->topo; }

    BiInterval full() const { return {f_->bwt.full(), r_->bwt.full()}; }

    BiInterval extend_left(uint32_t a, const BiInterval& p) const { return flip(extend(*f_, a, flip(p, false)), false); }
    BiInterval extend_right(uint32_t b, const BiInterval& p) const { return flip(extend(*r_, b, flip(p, true)), true); }

    bool is_left_maximal(const BiInterval& p) const { return f_->branching(p.fwd); }
    bool is_right_maximal(const BiInterval& p) const { return r_->branching(p.rev); }

    // aW -> W; requires aW right-maximal, nullopt otherwise.
    std::optional<BiInterval> contract_left(const BiInterval& p) const {
        if (p.empty() || !is_right_maximal(p)) return std::nullopt;
        auto q = contract(*f_, *r_, flip(p, false));
        return flip(q, false);
    }
    // Wb -> W; requires Wb left-maximal, nullopt otherwise.
    std::optional<BiInterval> contract_right(const BiInterval& p) const {
        if (p.empty() || !is_left_maximal(p)) return std::nullopt;
        auto q = contract(*r_, *f_, flip(p, true));
        return flip(q, true);
    }

    // Distinct a with aW a rotation prefix, in increasing order, with the
    // interval pairs of aW.
    std::vector<LeftExtension> enumerate_left_pairs(const BiInterval& p) const {
        auto v = enumerate(*f_, *r_, flip(p, false));
        for (auto& e : v) e.iv = flip(e.iv, false);
        return v;
    }
    std::vector<LeftExtension> enumerate_right_pairs(const BiInterval& p) const {
        auto v = enumerate(*r_, *f_, flip(p, true));
        for (auto& e : v) e.iv = flip(e.iv, true);
        return v;
    }
    std::vector<uint32_t> enumerate_left(const BiInterval& p) const { return symbols_of(enumerate_left_pairs(p)); }
    std::vector<uint32_t> enumerate_right(const BiInterval& p) const { return symbols_of(enumerate_right_pairs(p)); }

    // Row of the rotation starting at text position 1.
    size_t first_row() const { return f_->bwt.select(0, 1); }

    void save(Writer& w) const {
        f_->save(w);
        r_->save(w);
    }
    void load(Reader& r) {
        f_ = std::make_unique<Side>();
        r_ = std::make_unique<Side>();
        f_->load(r);
        r_->load(r);
        if (f_->bwt.size() != r_->bwt.size() || f_->bwt.sigma() != r_->bwt.sigma()) throw FormatError("bidirectional section");
    }

private:
    struct Side {
        BwtString bwt;
        Topology topo;
        WeinerSupport ws;
        BitVector runs;  // runs[i] = 1 iff BWT[i] != BWT[i-1]
        ChildRankMap kids;

        void build(BwtString b, u64 seed) {
            bwt = std::move(b);
            topo = build_topology(bwt);
            ws.build(topo, bwt, true, seed);
            kids.build(topo, bwt, seed);
            build_runs();
        }
        void build_runs() {
            size_t n = bwt.size();
            runs = BitVector(n);
            uint32_t prev = UINT32_MAX;
            for (size_t i = 1; i <= n; ++i) {
                uint32_t c = bwt[i];
                if (i > 1 && c != prev) runs.set(i);
                prev = c;
            }
            runs.build();
        }
        bool branching(Interval I) const { return !I.empty() && runs.rank1(I.hi) - runs.rank1(I.lo) >= 1; }

        void save(Writer& w) const {
            bwt.save(w);
            topo.save(w);
            ws.save(w);
            kids.save(w);
        }
        void load(Reader& r) {
            bwt.load(r);
            if (!bwt.has_range_distinct()) throw FormatError("bidirectional section");
            topo.load(r);
            if (topo.n() != bwt.size()) throw FormatError("bidirectional section");
            ws.load(r);
            ws.attach(topo, bwt);
            kids.load(r);
            build_runs();
        }
    };

    // Pairs are handled as (this side, other side); flip swaps for the reverse.
    static BiInterval flip(const BiInterval& p, bool swap) { return swap ? BiInterval{p.rev, p.fwd} : p; }

    static BiInterval extend(const Side& a, uint32_t c, const BiInterval& p) {
        if (p.empty()) return {};
        Interval I = a.bwt.backward_step(p.fwd, c);
        if (I.empty()) return {};
        size_t lo = p.rev.lo + a.ws.count_smaller(p.fwd, c);
        return {I, {lo, lo + I.width() - 1}};
    }

    static BiInterval contract(const Side& a, const Side& b, const BiInterval& p) {
        size_t v = a.topo.locus(p.fwd);
        Interval I = a.topo.interval(suffix_link(a.topo, a.bwt, v));
        Interval J = p.rev;
        if (a.branching(I)) J = b.topo.interval(b.topo.parent(b.topo.locus(p.rev)));
        return {I, J};
    }

    static std::vector<LeftExtension> enumerate(const Side& a, const Side& b, const BiInterval& p) {
        std::vector<LeftExtension> out;
        if (p.empty()) return out;
        if (!a.branching(p.fwd)) {
            uint32_t c = a.bwt[p.fwd.lo];
            out.push_back({c, extend(a, c, p)});
            return out;
        }
        RangeDistinctContext ctx;
        const auto& tuples = a.bwt.rd().query(a.bwt.seq(), p.fwd.lo, p.fwd.hi, ctx);
        size_t v = b.topo.locus(p.rev);
        out.assign(tuples.size(), {UINT32_MAX, {}});
        const auto& C = a.bwt.C();
        for (auto& t : tuples) {
            size_t k = b.kids.rank(v, t.c);
            if (k == 0 || k > out.size() || out[k - 1].c != UINT32_MAX) throw std::logic_error("child rank map mismatch");
            out[k - 1] = {t.c, {{C[t.c] + t.first_rank, C[t.c] + t.last_rank}, {}}};
        }
        size_t lo = p.rev.lo;
        for (auto& e : out) {
            e.iv.rev = {lo, lo + e.iv.fwd.width() - 1};
            lo += e.iv.fwd.width();
        }
        return out;
    }

    static std::vector<uint32_t> symbols_of(const std::vector<LeftExtension>& v) {
        std::vector<uint32_t> s;
        for (auto& e : v) s.push_back(e.c);
        return s;
    }

    std::unique_ptr<Side> f_, r_;
};

// ---- left-to-right scans ----------------------------------------------------------

namespace detail {

// Position cursor over T#: row of text position p, advanced by psi.
struct RowCursor {
    const BwtString* b;
    size_t pos, row;
    void advance() {
        row = b->psi(row);
        ++pos;
    }
    uint32_t symbol() const { return b->first_symbol(row); }
};

}  // namespace detail

struct ScanStats {
    size_t extend_right_calls = 0;
};

// PLCP[i] = lcp of the suffix at text position i and the suffix one row above.
inline std::vector<uint32_t> build_plcp(const BidirIndex& b, ScanStats* stats = nullptr) {
    size_t n = b.size();
    const BwtString& F = b.forward();
    std::vector<uint32_t> plcp(n, 0);
    detail::RowCursor ri{&F, 1, b.first_row()};  // row of position i
    detail::RowCursor ahead = ri;                 // row of position i + |W|
    BiInterval W = b.full();
    size_t len = 0, calls = 0;
    for (size_t i = 1; i <= n; ++i) {
        while (W.fwd.lo < ri.row) {
            BiInterval X = b.extend_right(ahead.symbol(), W);
            ++calls;
            if (X.fwd.lo == ri.row) break;
            W = X;
            ++len;
            ahead.advance();
        }
        plcp[i - 1] = static_cast<uint32_t>(len);
        if (i == n) break;
        if (len == 0) {
            W = b.full();
            ahead.advance();
        } else {
            auto c = b.contract_left(W);
            if (!c) throw std::logic_error("PLCP scan: contraction precondition");
            W = *c;
            --len;
        }
        ri.advance();
    }
    if (stats) stats->extend_right_calls = calls;
    return plcp;
}

// DS[i] = length of the shortest prefix of T#[i..] occurring at most tau
// times, for the positions of T (the terminator excluded).
inline std::vector<uint32_t> build_ds(const BidirIndex& b, size_t tau, ScanStats* stats = nullptr) {
    if (tau < 1) throw std::invalid_argument("tau must be >= 1");
    size_t n = b.size();
    const BwtString& F = b.forward();
    std::vector<uint32_t> ds(n - 1);
    detail::RowCursor ahead{&F, 1, b.first_row()};
    BiInterval W = b.full();
    size_t len = 0, calls = 0;
    for (size_t i = 1; i < n; ++i) {
        for (;;) {
            BiInterval X = b.extend_right(ahead.symbol(), W);
            ++calls;
            if (X.width() <= tau) break;
            W = X;
            ++len;
            ahead.advance();
        }
        ds[i - 1] = static_cast<uint32_t>(len + 1);
        if (len == 0) {
            W = b.full();
            ahead.advance();
        } else {
            auto c = b.contract_left(W);
            if (!c) throw std::logic_error("DS scan: contraction precondition");
            W = *c;
            --len;
        }
    }
    if (stats) stats->extend_right_calls = calls;
    return ds;
}

// Index over S #1 T #2 for matching statistics of T against S.  Input symbols
// are codes >= 1 (as produced by encode_shared, terminators dropped); they are
// shifted up by one so that #1 = 1 and #2 = 0.
class MsIndex {
public:
    void build(const std::vector<uint32_t>& s, const std::vector<uint32_t>& t, uint32_t alphabet, u64 seed = 0) {
        if (s.empty() || t.empty()) throw std::invalid_argument("empty input");
        s_len_ = s.size();
        t_len_ = t.size();
        std::vector<uint32_t> u;
        u.reserve(s.size() + t.size() + 2);
        for (uint32_t c : s) u.push_back(shift(c));
        u.push_back(1);
        for (uint32_t c : t) u.push_back(shift(c));
        u.push_back(0);
        uint32_t K = alphabet + 2;
        for (uint32_t c : u)
            if (c >= K) throw std::invalid_argument("symbol out of range");
        idx_.build(u, K, seed);
        which_ = BitVector(u.size());
        idx_.forward().invert_stream([&](size_t pos, size_t r) {
            if (pos <= s_len_) which_.set(r);
        });
        which_.build();
    }

    const BidirIndex& index() const { return idx_; }
    const BitVector& which() const { return which_; }
    size_t s_length() const { return s_len_; }
    size_t t_length() const { return t_len_; }
    // occurrences of W inside S
    size_t freq_s(const BiInterval& p) const {
        if (p.empty()) return 0;
        return which_.rank1(p.fwd.hi) - which_.rank1(p.fwd.lo - 1);
    }

    void save(Writer& w) const {
        w.u64(s_len_);
        w.u64(t_len_);
        idx_.save(w);
    }
    void load(Reader& r) {
        s_len_ = r.u64();
        t_len_ = r.u64();
        idx_.load(r);
        if (idx_.size() != s_len_ + t_len_ + 2) throw FormatError("ms section");
        which_ = BitVector(idx_.size());
        idx_.forward().invert_stream([&](size_t pos, size_t row) {
            if (pos <= s_len_) which_.set(row);
        });
        which_.build();
    }

private:
    static uint32_t shift(uint32_t c) {
        if (c == 0) throw std::invalid_argument("terminator inside input");
        return c + 1;
    }
    BidirIndex idx_;
    BitVector which_;
    size_t s_len_ = 0, t_len_ = 0;
};

// MS[i] = length of the longest prefix of T[i..] occurring at least tau times in S.
inline std::vector<uint32_t> build_ms(const MsIndex& m, size_t tau, ScanStats* stats = nullptr) {
    if (tau < 1) throw std::invalid_argument("tau must be >= 1");
    const BidirIndex& b = m.index();
    const BwtString& F = b.forward();
    size_t tl = m.t_length();
    // row of the first position of T
    detail::RowCursor ahead{&F, 1, b.first_row()};
    while (ahead.pos < m.s_length() + 2) ahead.advance();
    std::vector<uint32_t> ms(tl);
    BiInterval W = b.full();
    size_t len = 0, calls = 0;
    for (size_t i = 1; i <= tl; ++i) {
        while (i + len <= tl) {
            BiInterval X = b.extend_right(ahead.symbol(), W);
            ++calls;
            if (m.freq_s(X) < tau) break;
            W = X;
            ++len;
            ahead.advance();
        }
        ms[i - 1] = static_cast<uint32_t>(len);
        if (len == 0) {
            W = b.full();
            ahead.advance();
        } else {
            auto c = b.contract_left(W);
            if (!c) throw std::logic_error("MS scan: contraction precondition");
            W = *c;
            --len;
        }
    }
    if (stats) stats->extend_right_calls = calls;
    return ms;
}

}  // namespace ubwt
