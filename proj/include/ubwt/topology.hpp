#pragma once
// Suffix-tree topology in balanced parentheses, built from the intervals of
// the internal nodes; node ids are preorder ranks (root = 1) and leaf ranks
// are BWT rows.  Leaf labels are whole rotations, so a leaf at row p links to
// the leaf at row psi(p) and every non-root node is the target of exactly one
// explicit Weiner link.

#include <functional>
#include <stdexcept>
#include <vector>

#include "bp.hpp"
#include "enumerate.hpp"

namespace ubwt {

class Topology {
public:
    Topology() = default;
    explicit Topology(BitVector bp, size_t n) : n_(n), t_(std::move(bp)) {
        if (!t_.balanced() || t_.leaves() != n_) throw std::runtime_error("inconsistent intervals");
    }

    size_t n() const { return n_; }
    size_t nodes() const { return t_.nodes(); }
    const BpTree& tree() const { return t_; }
    const BitVector& bits() const { return t_.bits(); }

    size_t root() const { return 1; }
    bool is_leaf(size_t v) const { return t_.is_leaf(v); }
    size_t parent(size_t v) const { return t_.parent(v); }
    size_t child(size_t v, size_t i) const { return i ? t_.child(v, i) : 0; }
    size_t num_children(size_t v) const { return t_.num_children(v); }
    size_t first_child(size_t v) const { return t_.first_child(v); }
    size_t next_sibling(size_t v) const { return t_.next_sibling(v); }
    size_t lca(size_t u, size_t v) const { return t_.lca(u, v); }
    size_t leftmost_leaf(size_t v) const { return t_.leftmost_leaf(v); }
    size_t rightmost_leaf(size_t v) const { return t_.rightmost_leaf(v); }
    size_t select_leaf(size_t i) const { return t_.select_leaf(i); }
    size_t leaf_rank(size_t v) const { return t_.leaf_rank(v); }
    size_t depth(size_t v) const { return t_.depth(v); }
    size_t height(size_t v) const { return t_.height(v); }
    size_t ancestor(size_t v, size_t d) const { return t_.ancestor(v, d); }
    size_t subtree_size(size_t v) const { return t_.subtree_size(v); }

    Interval interval(size_t v) const {
        check(v);
        auto [lo, hi] = t_.leaf_range(v);
        return {lo, hi};
    }
    // Node whose interval is I, or the lca of its endpoints when I is not a node.
    size_t locus(Interval I) const {
        if (I.empty() || I.hi > n_) throw std::out_of_range("interval out of range");
        return t_.lca(t_.select_leaf(I.lo), t_.select_leaf(I.hi));
    }
    bool is_node_interval(Interval I) const { return !I.empty() && I.hi <= n_ && interval(locus(I)) == I; }

    void save(Writer& w) const {
        w.u64(n_);
        t_.save(w);
    }
    void load(Reader& r) {
        n_ = r.u64();
        t_.load(r);
        if (!t_.balanced() || t_.leaves() != n_) throw FormatError("topology section");
    }

    void check(size_t v) const {
        if (v == 0 || v > t_.nodes()) throw std::out_of_range("invalid node id");
    }

private:
    size_t n_ = 0;
    BpTree t_;
};

// counter sweep: Co[i] nodes open and Cc[i] close at leaf i
inline Topology build_topology(size_t n, const std::function<void(const std::function<void(size_t, size_t)>&)>& each_interval) {
    std::vector<uint32_t> co(n + 1, 0), cc(n + 1, 0);
    each_interval([&](size_t i, size_t j) {
        if (i == 0 || i > j || j > n) throw std::runtime_error("inconsistent intervals");
        ++co[i];
        ++cc[j];
    });
    BitVector bp(0);
    for (size_t i = 1; i <= n; ++i) {
        bp.append(true, co[i]);
        bp.push_back(true);
        bp.push_back(false);
        bp.append(false, cc[i]);
    }
    bp.build();
    return Topology(std::move(bp), n);
}

inline Topology build_topology(const BwtString& bwt) {
    return build_topology(bwt.size(), [&](const std::function<void(size_t, size_t)>& emit) {
        enumerate_right_maximal(bwt, [&](const ReprView& w, const ExtensionScratch&) {
            emit(w.first[0], w.first[w.k] - 1);
        });
    });
}

inline size_t suffix_link(const Topology& t, const BwtString& bwt, size_t v) {
    t.check(v);
    if (v == t.root()) throw std::invalid_argument("suffix link of the root");
    Interval I = t.interval(v);
    if (t.is_leaf(v)) return t.select_leaf(bwt.psi(I.lo));
    return t.lca(t.select_leaf(bwt.psi(I.lo)), t.select_leaf(bwt.psi(I.hi)));
}

// Rank of each child of every internal node by the first symbol of its edge,
// one shared hash function keyed by (node, symbol).  The sorted right
// extensions of each right-maximal string label its node's children in order.
class ChildRankMap {
public:
    void build(const Topology& t, const BwtString& bwt, u64 seed = 0) {
        if (!bwt.has_range_distinct()) throw std::invalid_argument("child support needs rangeDistinct");
        sigma_ = bwt.sigma();
        std::vector<u64> keys, vals;
        enumerate_right_maximal(bwt, [&](const ReprView& w, const ExtensionScratch&) {
            size_t v = t.locus(w.interval());
            for (size_t i = 0; i < w.k; ++i) {
                keys.push_back(key(v, w.chars[i]));
                vals.push_back(i + 1);
            }
        });
        f_.build(keys, vals, mix64(seed ^ 0xc57));
    }
    // 1-based rank; unspecified when v has no such child
    size_t rank(size_t v, uint32_t a) const { return static_cast<size_t>(f_.eval(key(v, a))); }

    void save(Writer& w) const {
        w.u32(sigma_);
        f_.save(w);
    }
    void load(Reader& r) {
        sigma_ = r.u32();
        f_.load(r);
    }

private:
    u64 key(size_t v, uint32_t a) const { return static_cast<u64>(v) * sigma_ + a; }
    uint32_t sigma_ = 1;
    HashedFunction f_;
};

// Symbols smaller than c in BWT[I], by a rangeDistinct scan.
inline size_t count_smaller_scan(const BwtString& bwt, Interval I, uint32_t c) {
    if (I.empty()) return 0;
    RangeDistinctContext ctx;
    size_t s = 0;
    for (auto& d : bwt.rd().query(bwt.seq(), I.lo, I.hi, ctx))
        if (d.c < c) s += d.last_rank - d.first_rank + 1;
    return s;
}

class WeinerSupport {
public:
    WeinerSupport() = default;

    void build(const Topology& t, const BwtString& bwt, bool with_count_smaller = true, u64 seed = 0) {
        if (!bwt.has_range_distinct()) throw std::invalid_argument("weiner support needs rangeDistinct");
        t_ = &t;
        b_ = &bwt;
        sigma_ = bwt.sigma();
        size_t N = t.nodes();
        std::vector<std::vector<u64>> sources(sigma_);
        std::vector<std::vector<uint8_t>> expl(sigma_);
        // link symbols of every node, CSR by preorder id
        std::vector<size_t> off(N + 2, 0);
        std::vector<uint32_t> syms;
        RangeDistinctContext ctx;
        std::vector<DistinctTuple> tup;
        explicit_links_ = implicit_links_ = 0;
        for (size_t v = 1; v <= N; ++v) {
            off[v] = syms.size();
            Interval I = t.interval(v);
            if (t.is_leaf(v)) {
                uint32_t c = bwt[I.lo];
                syms.push_back(c);
                sources[c].push_back(v);
                expl[c].push_back(1);
                ++explicit_links_;
                continue;
            }
            tup = bwt.rd().query(bwt.seq(), I.lo, I.hi, ctx);
            std::sort(tup.begin(), tup.end(), [](auto& a, auto& b) { return a.c < b.c; });
            for (auto& d : tup) {
                Interval J{bwt.C()[d.c] + d.first_rank, bwt.C()[d.c] + d.last_rank};
                bool e = false;
                if (J.width() >= 2) {
                    size_t w = t.locus(J);
                    e = suffix_link(t, bwt, w) == v;
                }
                syms.push_back(d.c);
                sources[d.c].push_back(v);
                expl[d.c].push_back(e);
                (e ? explicit_links_ : implicit_links_)++;
            }
        }
        off[N + 1] = syms.size();

        cprime_.assign(sigma_ + 1, 1);
        explicit_.assign(sigma_, BitVector());
        f_.assign(sigma_, Mmphf());
        for (uint32_t c = 0; c < sigma_; ++c) {
            BitVector e(expl[c].size());
            for (size_t k = 0; k < expl[c].size(); ++k)
                if (expl[c][k]) e.set(k + 1);
            e.build();
            cprime_[c + 1] = cprime_[c] + e.ones();
            explicit_[c] = std::move(e);
            if (!sources[c].empty()) f_[c].build(sources[c], N + 1, mix64(seed + 0x9e37 + c));
        }
        has_cs_ = with_count_smaller;
        if (!has_cs_) return;

        // contracted trees: around node v, one parenthesis pair per link symbol
        std::vector<BitVector> par(sigma_, BitVector(0));
        const BitVector& bp = t.bits();
        std::vector<size_t> stack;
        for (size_t p = 1; p <= bp.size(); ++p) {
            if (bp[p]) {
                size_t v = t.tree().id_of_open(p);
                stack.push_back(v);
                for (size_t q = off[v]; q < off[v + 1]; ++q) par[syms[q]].push_back(true);
            } else {
                size_t v = stack.back();
                stack.pop_back();
                for (size_t q = off[v]; q < off[v + 1]; ++q) par[syms[q]].push_back(false);
            }
        }
        sub_.assign(sigma_, BpTree());
        diff_.assign(sigma_, PrefixSum());
        std::vector<uint32_t> last(N + 1, kNone);
        for (uint32_t c = 1; c < sigma_; ++c) {
            if (sources[c].empty()) continue;
            par[c].build();
            sub_[c].build(std::move(par[c]));
            size_t m = sources[c].size();
            std::vector<u64> val(m);
            for (size_t k = 1; k <= m; ++k) {
                size_t v = sources[c][k - 1];
                if (t.is_leaf(v)) {
                    val[k - 1] = 0;
                } else {
                    Interval I = t.interval(v);
                    uint32_t b = last[v];
                    if (b == kNone) {
                        val[k - 1] = bwt.rank(0, I.hi) - bwt.rank(0, I.lo - 1);
                    } else {
                        val[k - 1] = prefix_count(v, b) + bwt.rank(b, I.hi) - bwt.rank(b, I.lo - 1);
                    }
                }
                last[v] = c;
            }
            std::vector<u64> d(val);
            for (size_t k = 2; k <= m; ++k) d[sub_[c].parent(k) - 1] -= val[k - 1];
            diff_[c].build(d);
        }
    }

    // Locus of c·label(v), or 0 when it is not a rotation prefix.
    size_t weiner_link(size_t v, uint32_t c) const {
        t_->check(v);
        if (c >= sigma_ || f_[c].size() == 0) return 0;
        size_t k = static_cast<size_t>(f_[c].eval(v));
        size_t w = cprime_[c] + explicit_[c].rank1(k - 1) + 1;
        if (w > t_->nodes()) return 0;
        Interval Iw = t_->interval(w);
        const auto& C = b_->C();
        if (Iw.lo <= C[c] || Iw.lo > C[c + 1]) return 0;
        size_t r = b_->select(c, Iw.lo - C[c]);
        Interval Iv = t_->interval(v);
        return (r >= Iv.lo && r <= Iv.hi) ? w : 0;
    }
    bool is_explicit(size_t v, uint32_t c) const {
        if (!weiner_link(v, c)) return false;
        return explicit_[c][static_cast<size_t>(f_[c].eval(v))];
    }

    // Occurrences of symbols < c in BWT[I], I a node interval.
    size_t count_smaller(Interval I, uint32_t c) const {
        if (c == 0 || I.empty()) return 0;
        if (c >= sigma_) return I.width();
        if (!t_->is_node_interval(I)) throw std::invalid_argument("count_smaller needs a node interval");
        size_t v = t_->locus(I);
        if (t_->is_leaf(v)) return (*b_)[I.lo] < c ? 1 : 0;
        if (!has_cs_ || !weiner_link(v, c)) return count_smaller_scan(*b_, I, c);
        return prefix_count(v, c);
    }

    bool has_count_smaller() const { return has_cs_; }
    size_t explicit_links() const { return explicit_links_; }
    size_t implicit_links() const { return implicit_links_; }
    const std::vector<u64>& cprime() const { return cprime_; }

    void attach(const Topology& t, const BwtString& bwt) {
        t_ = &t;
        b_ = &bwt;
    }

    void save(Writer& w) const {
        w.u32(sigma_);
        w.u8(has_cs_);
        w.u64(explicit_links_);
        w.u64(implicit_links_);
        w.vec(cprime_);
        for (uint32_t c = 0; c < sigma_; ++c) {
            explicit_[c].save(w);
            f_[c].save(w);
            if (has_cs_ && c > 0) {
                sub_[c].save(w);
                diff_[c].save(w);
            }
        }
    }
    // attach() must follow
    void load(Reader& r) {
        sigma_ = r.u32();
        has_cs_ = r.u8();
        explicit_links_ = r.u64();
        implicit_links_ = r.u64();
        r.vec(cprime_);
        if (cprime_.size() != size_t(sigma_) + 1) throw FormatError("weiner section");
        explicit_.assign(sigma_, BitVector());
        f_.assign(sigma_, Mmphf());
        sub_.assign(sigma_, BpTree());
        diff_.assign(sigma_, PrefixSum());
        for (uint32_t c = 0; c < sigma_; ++c) {
            explicit_[c].load(r);
            f_[c].load(r);
            if (has_cs_ && c > 0) {
                sub_[c].load(r);
                diff_[c].load(r);
            }
        }
    }

private:
    static constexpr uint32_t kNone = UINT32_MAX;

    // v internal with a c-link
    size_t prefix_count(size_t v, uint32_t c) const {
        size_t k = static_cast<size_t>(f_[c].eval(v));
        size_t hi = k + sub_[c].subtree_size(k) - 1;
        return static_cast<size_t>(diff_[c].query(hi) - diff_[c].query(k - 1));
    }

    const Topology* t_ = nullptr;
    const BwtString* b_ = nullptr;
    uint32_t sigma_ = 0;
    bool has_cs_ = false;
    size_t explicit_links_ = 0, implicit_links_ = 0;
    std::vector<u64> cprime_;
    std::vector<BitVector> explicit_;
    std::vector<Mmphf> f_;
    std::vector<BpTree> sub_;
    std::vector<PrefixSum> diff_;
};

}  // namespace ubwt
