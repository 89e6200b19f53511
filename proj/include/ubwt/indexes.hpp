#pragma once
// Succinct suffix array, layered compressed suffix array and compressed
// suffix tree operations.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "construct.hpp"
#include "topology.hpp"

namespace ubwt {

inline size_t default_sample_rate(size_t n, uint32_t sigma) {
    double lg = std::log2(static_cast<double>(std::max<size_t>(n, 2)));
    double ls = std::log2(static_cast<double>(std::max<uint32_t>(sigma, 2)));
    return std::max<size_t>(1, static_cast<size_t>(std::floor(lg * lg / ls)));
}

// ---- succinct suffix array --------------------------------------------------------

class SuccinctSuffixArray {
public:
    SuccinctSuffixArray() = default;

    // Samples are collected by one inversion of the BWT.
    void build(const BwtString& bwt, size_t r = 0) {
        b_ = &bwt;
        n_ = bwt.size();
        r_ = r ? r : default_sample_rate(n_, bwt.sigma());
        size_t ns = (n_ + r_ - 1) / r_;
        marked_ = BitVector(n_);
        std::vector<std::pair<size_t, size_t>> rowpos;
        rowpos.reserve(ns);
        bwt.invert_stream([&](size_t pos, size_t row) {
            if ((pos - 1) % r_ == 0) {
                marked_.set(row);
                rowpos.emplace_back(row, pos);
            }
        });
        marked_.build();
        unsigned w = IntVector::width_for(n_);
        samples_ = IntVector(ns, w);
        pos2rank_ = IntVector(ns, w);
        for (auto [row, pos] : rowpos) {
            samples_.set(marked_.rank1(row), pos);
            pos2rank_.set((pos - 1) / r_ + 1, row);
        }
    }

    size_t size() const { return n_; }
    size_t sample_rate() const { return r_; }
    const BwtString& bwt() const { return *b_; }

    size_t count(const std::vector<uint32_t>& p) const { return b_->backward_search(p).width(); }

    size_t locate(size_t row, size_t* steps = nullptr) const {
        if (row == 0 || row > n_) throw std::out_of_range("row out of range");
        size_t t = 0;
        while (!marked_[row]) {
            row = b_->lf(row);
            ++t;
        }
        if (steps) *steps = t;
        return static_cast<size_t>(samples_.get(marked_.rank1(row))) + t;
    }

    // Row of the rotation starting at that text position.
    size_t rank_of_position(size_t pos) const {
        if (pos == 0 || pos > n_) throw std::out_of_range("position out of range");
        size_t k = (pos - 1) / r_ + 1;
        size_t p = (k - 1) * r_ + 1;
        size_t row = static_cast<size_t>(pos2rank_.get(k));
        // walk forward with psi from the sample at or before pos
        for (; p < pos; ++p) row = b_->psi(row);
        return row;
    }

    // T[e..f], 1-based inclusive.
    std::vector<uint32_t> substring(size_t e, size_t f) const {
        if (e == 0 || e > f || f > n_) throw std::out_of_range("substring range");
        // jump in at the first sampled position after f (position n+1 wraps to 1)
        size_t k = (f + r_ - 1) / r_;  // smallest k with k*r+1 >= f+1
        size_t p = k * r_ + 1;
        size_t row;
        if (p > n_) {
            p = n_ + 1;
            row = static_cast<size_t>(pos2rank_.get(1));
        } else {
            row = static_cast<size_t>(pos2rank_.get(k + 1));
        }
        std::vector<uint32_t> out(f - e + 1);
        // row holds the rotation starting at p; BWT[row] = T[p-1]
        for (size_t q = p - 1; q >= e; --q) {
            uint32_t c = (*b_)[row];
            if (q <= f) out[q - e] = c;
            row = b_->lf(row);
        }
        return out;
    }

    void save(Writer& w) const {
        w.u64(n_);
        w.u64(r_);
        marked_.save(w);
        samples_.save(w);
        pos2rank_.save(w);
    }
    void load(Reader& r, const BwtString& bwt) {
        b_ = &bwt;
        n_ = r.u64();
        r_ = r.u64();
        marked_.load(r);
        samples_.load(r);
        pos2rank_.load(r);
        if (n_ != bwt.size() || r_ == 0 || marked_.size() != n_) throw FormatError("ssa section");
    }

private:
    const BwtString* b_ = nullptr;
    size_t n_ = 0, r_ = 1;
    BitVector marked_;
    IntVector samples_, pos2rank_;
};

// ---- layered compressed suffix array -------------------------------------------------
//
// Layer i holds the rotation BWT of X_i, the string of blocks of B^i symbols of
// X = T'·0^q, plus marks on the rows whose rotation starts at a block start of
// the next layer; the last layer stores its rotation suffix array explicitly.

namespace detail {
// Dense ranks of consecutive B-tuples of t (length a multiple of B), by LSD counting sort.
inline std::vector<uint32_t> group_ranks(const std::vector<uint32_t>& t, unsigned B) {
    size_t m = t.size() / B;
    uint32_t K = 0;
    for (uint32_t x : t) K = std::max(K, x + 1);
    std::vector<uint32_t> idx(m), tmp(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<size_t> cnt(K + 1);
    for (unsigned c = B; c-- > 0;) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (uint32_t j : idx) ++cnt[t[j * B + c] + 1];
        for (uint32_t x = 0; x < K; ++x) cnt[x + 1] += cnt[x];
        for (uint32_t j : idx) tmp[cnt[t[j * B + c]]++] = j;
        idx.swap(tmp);
    }
    std::vector<uint32_t> out(m);
    uint32_t r = 0;
    for (size_t k = 0; k < m; ++k) {
        if (k > 0 && !std::equal(t.begin() + idx[k] * B, t.begin() + idx[k] * B + B, t.begin() + idx[k - 1] * B)) ++r;
        out[idx[k]] = r;
    }
    return out;
}

// 1-based rotation suffix array of a primitive string.
inline std::vector<uint32_t> rotation_sa(const std::vector<uint32_t>& x) {
    size_t N = x.size();
    uint32_t K = 0;
    for (uint32_t v : x) K = std::max(K, v + 1);
    std::vector<uint32_t> sq(2 * N);
    for (size_t i = 0; i < N; ++i) sq[i] = sq[i + N] = x[i];
    auto sa = suffix_array(sq, K);
    std::vector<uint32_t> out;
    out.reserve(N);
    for (uint32_t p : sa)
        if (p < N) out.push_back(p + 1);
    return out;
}
}  // namespace detail

class LayeredCsa {
public:
    LayeredCsa() = default;

    // layers = 1/eps; B defaults to (log_sigma n)^eps rounded up to a power of two >= 2.
    void build(const std::vector<uint32_t>& text, unsigned layers = 2, unsigned B = 0) {
        if (!is_terminated(text)) throw std::invalid_argument("unterminated text");
        if (layers == 0) throw std::invalid_argument("at least one layer");
        n_ = text.size();
        uint32_t K = *std::max_element(text.begin(), text.end()) + 1;
        if (!B) {
            double ls = std::log2(std::max<double>(K, 2));
            double lg = std::log2(std::max<double>(static_cast<double>(n_), 2));
            double target = std::pow(std::max(1.0, lg / ls), 1.0 / layers);
            B = 2;
            while (B < target) B *= 2;
        }
        if (B < 2) throw std::invalid_argument("block size must be at least 2");
        B_ = B;
        u64 unit = 1;
        for (unsigned i = 0; i < layers; ++i) unit *= B_;
        size_t np = n_ == 1 ? 1 : (n_ + unit - 1) / unit * unit;
        q_ = np - (n_ - 1);
        layers_.clear();
        if (n_ == 1) {
            base_ = IntVector(1, 1);
            base_.set(1, 1);
            return;
        }
        std::vector<uint32_t> cur(text.begin(), text.end() - 1);
        cur.resize(np, 0);
        for (unsigned i = 0; i < layers; ++i) {
            auto sa = detail::rotation_sa(cur);
            size_t N = cur.size();
            std::vector<uint32_t> L(N);
            Layer ly;
            ly.marked = BitVector(N);
            for (size_t j = 0; j < N; ++j) {
                L[j] = cur[(sa[j] + N - 2) % N];
                if ((sa[j] - 1) % B_ == 0) ly.marked.set(j + 1);
            }
            ly.marked.build();
            uint32_t Ki = 0;
            for (uint32_t x : cur) Ki = std::max(Ki, x + 1);
            ly.bwt = BwtString(L, Ki, true);
            layers_.push_back(std::move(ly));
            cur = detail::group_ranks(cur, B_);
        }
        auto sa = detail::rotation_sa(cur);
        base_ = IntVector(sa.size(), IntVector::width_for(sa.size()));
        for (size_t j = 0; j < sa.size(); ++j) base_.set(j + 1, sa[j]);
    }

    size_t size() const { return n_; }
    unsigned block() const { return B_; }
    size_t layers() const { return layers_.size(); }

    // SA of the terminated text at row.
    size_t lookup(size_t row, size_t* steps = nullptr) const {
        if (row == 0 || row > n_) throw std::out_of_range("row out of range");
        if (n_ == 1) return 1;
        // row 1 is the rotation 0^q T'; rows of other padding rotations are skipped
        size_t j = row == 1 ? 1 : row + q_ - 1;
        size_t st = 0;
        size_t v = lookup_layer(0, j, st);
        if (steps) *steps = st;
        return v;
    }

    void save(Writer& w) const {
        w.u64(n_);
        w.u32(B_);
        w.u64(q_);
        w.u32(static_cast<uint32_t>(layers_.size()));
        for (auto& ly : layers_) {
            ly.bwt.save(w);
            ly.marked.save(w);
        }
        base_.save(w);
    }
    void load(Reader& r) {
        n_ = r.u64();
        B_ = r.u32();
        q_ = r.u64();
        layers_.assign(r.u32(), Layer());
        for (auto& ly : layers_) {
            ly.bwt.load(r);
            ly.marked.load(r);
        }
        base_.load(r);
    }

private:
    struct Layer {
        BwtString bwt;
        BitVector marked;
    };
    size_t lookup_layer(size_t i, size_t j, size_t& steps) const {
        if (i == layers_.size()) return static_cast<size_t>(base_.get(j));
        const Layer& ly = layers_[i];
        size_t t = 0;
        while (!ly.marked[j]) {
            j = ly.bwt.lf(j);
            ++t;
        }
        steps += t;
        size_t up = lookup_layer(i + 1, ly.marked.rank1(j), steps);
        return B_ * (up - 1) + 1 + t;
    }

    size_t n_ = 0, q_ = 0;
    unsigned B_ = 2;
    std::vector<Layer> layers_;
    IntVector base_;
};

// ---- compressed suffix tree ------------------------------------------------------------

class CompressedSuffixTree {
public:
    CompressedSuffixTree() = default;

    // plcp is 1-based by text position (plcp[0] unused or absent: size n).
    void build(const SuccinctSuffixArray& ssa, const Topology& topo, std::vector<uint32_t> plcp, u64 seed = 0) {
        ssa_ = &ssa;
        t_ = &topo;
        if (plcp.size() != ssa.size()) throw std::invalid_argument("plcp length");
        n_ = ssa.size();
        unsigned w = IntVector::width_for(n_);
        plcp_ = IntVector(n_, w);
        for (size_t i = 0; i < n_; ++i) plcp_.set(i + 1, plcp[i]);
        ranks_.build(topo, ssa.bwt(), seed);
    }

    size_t size() const { return n_; }
    const Topology& topology() const { return *t_; }

    size_t string_depth(size_t v) const {
        t_->check(v);
        if (v == t_->root()) return 0;
        Interval I = t_->interval(v);
        if (t_->is_leaf(v)) return n_ - ssa_->locate(I.lo) + 1;
        // the second child starts right after the first child's interval
        size_t k = t_->interval(t_->first_child(v)).hi + 1;
        return static_cast<size_t>(plcp_.get(ssa_->locate(k)));
    }

    // Child whose edge starts with a; unspecified when there is none.
    size_t blind_child(size_t v, uint32_t a) const {
        t_->check(v);
        if (t_->is_leaf(v)) return 0;
        return t_->child(v, ranks_.rank(v, a));
    }
    size_t child(size_t v, uint32_t a) const {
        size_t w = blind_child(v, a);
        if (!w) return 0;
        size_t d = string_depth(v);
        size_t pos = ssa_->locate(t_->interval(w).lo) + d;
        if (pos > n_) return 0;
        return ssa_->substring(pos, pos)[0] == a ? w : 0;
    }

    // Locus of the prefix of length d of label(v).
    size_t string_ancestor(size_t v, size_t d) const {
        size_t sd = string_depth(v);
        if (d == 0 || d > sd) throw std::out_of_range("string ancestor depth");
        size_t lo = 0, hi = t_->depth(v);  // smallest tree depth with string depth >= d
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            if (string_depth(t_->ancestor(v, mid)) >= d) hi = mid;
            else lo = mid + 1;
        }
        return t_->ancestor(v, lo);
    }

    void save(Writer& w) const {
        w.u64(n_);
        plcp_.save(w);
        ranks_.save(w);
    }
    void load(Reader& r, const SuccinctSuffixArray& ssa, const Topology& topo) {
        ssa_ = &ssa;
        t_ = &topo;
        n_ = r.u64();
        plcp_.load(r);
        ranks_.load(r);
        if (n_ != ssa.size()) throw FormatError("cst section");
    }

private:
    const SuccinctSuffixArray* ssa_ = nullptr;
    const Topology* t_ = nullptr;
    size_t n_ = 0;
    IntVector plcp_;
    ChildRankMap ranks_;
};

}  // namespace ubwt
