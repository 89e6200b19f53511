#pragma once
// Enumeration of right-maximal substrings by a depth-first traversal of the
// suffix-link tree, driven by left extensions computed with rangeDistinct.
//
// repr(W) = (chars[0..k-1], first[0..k]) where the BWT interval of W.chars[i]
// is [first[i] .. first[i+1]-1].

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "bwt.hpp"

namespace ubwt {

struct ReprView {
    size_t depth = 0;
    const uint32_t* chars = nullptr;
    const size_t* first = nullptr;
    size_t k = 0;
    Interval interval() const { return {first[0], first[k] - 1}; }
    Interval child(size_t i) const { return {first[i], first[i + 1] - 1}; }
};

// Left extensions of one string W: for every a with gamma[a] >= 1, the sorted
// right extensions of aW and their intervals.  Storage is flat and grouped by
// a, so only the O(sigma) vectors gamma/offset are dense.
class ExtensionScratch {
public:
    void ensure(uint32_t sigma) {
        if (gamma_.size() < sigma) {
            gamma_.assign(sigma, 0);
            offset_.assign(sigma, 0);
            fill_.assign(sigma, 0);
        }
    }

    // Number of distinct right extensions of aW (0 when aW does not occur).
    uint32_t gamma(uint32_t a) const { return a < gamma_.size() ? gamma_[a] : 0; }
    const std::vector<uint32_t>& left() const { return left_; }
    const uint32_t* chars(uint32_t a) const { return A_.data() + offset_[a]; }
    const size_t* firsts(uint32_t a) const { return F_.data() + offset_[a]; }
    const size_t* lasts(uint32_t a) const { return L_.data() + offset_[a]; }
    Interval interval(uint32_t a) const {
        if (!gamma(a)) return {1, 0};
        return {F_[offset_[a]], L_[offset_[a] + gamma_[a] - 1]};
    }
    size_t tuples() const { return A_.size(); }

    // Appends repr(aW) to the given buffers.
    void repr_of(uint32_t a, std::vector<uint32_t>& chars, std::vector<size_t>& first) const {
        size_t o = offset_[a], g = gamma_[a];
        chars.insert(chars.end(), A_.begin() + o, A_.begin() + o + g);
        first.insert(first.end(), F_.begin() + o, F_.begin() + o + g);
        first.push_back(L_[o + g - 1] + 1);
    }

    void extend(const BwtString& bwt, const ReprView& w, RangeDistinctContext& ctx) {
        ensure(bwt.sigma());
        tmp_.clear();
        const auto& C = bwt.C();
        for (size_t i = 0; i < w.k; ++i) {
            for (auto& t : bwt.rd().query(bwt.seq(), w.first[i], w.first[i + 1] - 1, ctx)) {
                if (gamma_[t.c]++ == 0) left_.push_back(t.c);
                tmp_.push_back({t.c, w.chars[i], C[t.c] + t.first_rank, C[t.c] + t.last_rank});
            }
        }
        size_t cum = 0;
        for (uint32_t a : left_) {
            offset_[a] = cum;
            fill_[a] = cum;
            cum += gamma_[a];
        }
        A_.resize(cum);
        F_.resize(cum);
        L_.resize(cum);
        for (auto& t : tmp_) {
            size_t p = fill_[t.a]++;
            A_[p] = t.b;
            F_[p] = t.f;
            L_[p] = t.l;
        }
    }

    void clean() {
        for (uint32_t a : left_) gamma_[a] = offset_[a] = fill_[a] = 0;
        left_.clear();
        A_.clear();
        F_.clear();
        L_.clear();
    }
    bool is_clean() const {
        if (!left_.empty()) return false;
        for (auto g : gamma_)
            if (g) return false;
        return true;
    }

private:
    struct Tup {
        uint32_t a, b;
        size_t f, l;
    };
    std::vector<uint32_t> gamma_;
    std::vector<size_t> offset_, fill_;
    std::vector<uint32_t> left_;
    std::vector<uint32_t> A_;
    std::vector<size_t> F_, L_;
    std::vector<Tup> tmp_;
};

struct EnumerationStats {
    size_t nodes = 0;
    size_t tuples = 0;  // rangeDistinct outputs
    size_t max_stack = 0;
};

using NodeCallback = std::function<void(const ReprView&, const ExtensionScratch&)>;

inline void root_repr(const BwtString& bwt, std::vector<uint32_t>& chars, std::vector<size_t>& first) {
    const auto& C = bwt.C();
    chars.clear();
    first.clear();
    for (uint32_t c = 0; c < bwt.sigma(); ++c)
        if (C[c + 1] > C[c]) {
            chars.push_back(c);
            first.push_back(C[c] + 1);
        }
    first.push_back(bwt.size() + 1);
}

namespace detail {

// Stack of reprs in flat pools.
class ReprStack {
public:
    void push(size_t depth, const uint32_t* chars, const size_t* first, size_t k) {
        ents_.push_back({depth, k, cpool_.size(), fpool_.size()});
        cpool_.insert(cpool_.end(), chars, chars + k);
        fpool_.insert(fpool_.end(), first, first + k + 1);
    }
    void push_ext(size_t depth, const ExtensionScratch& ext, uint32_t a) {
        size_t k = ext.gamma(a);
        ents_.push_back({depth, k, cpool_.size(), fpool_.size()});
        ext.repr_of(a, cpool_, fpool_);
    }
    bool empty() const { return ents_.empty(); }
    size_t size() const { return ents_.size(); }
    void pop(size_t& depth, std::vector<uint32_t>& chars, std::vector<size_t>& first) {
        Ent e = ents_.back();
        ents_.pop_back();
        depth = e.depth;
        chars.assign(cpool_.begin() + e.co, cpool_.begin() + e.co + e.k);
        first.assign(fpool_.begin() + e.fo, fpool_.begin() + e.fo + e.k + 1);
        cpool_.resize(e.co);
        fpool_.resize(e.fo);
    }

private:
    struct Ent {
        size_t depth, k, co, fo;
    };
    std::vector<Ent> ents_;
    std::vector<uint32_t> cpool_;
    std::vector<size_t> fpool_;
};

// Children are pushed largest interval first (ties: higher symbol), the rest
// in decreasing symbol order, so the smallest remaining symbol pops next.
inline void push_children(ReprStack& st, size_t depth, const ExtensionScratch& ext, std::vector<uint32_t>& buf) {
    buf.clear();
    for (uint32_t a : ext.left())
        if (ext.gamma(a) >= 2) buf.push_back(a);
    if (buf.empty()) return;
    std::sort(buf.begin(), buf.end());
    size_t best = 0;
    for (size_t i = 1; i < buf.size(); ++i)
        if (ext.interval(buf[i]).width() >= ext.interval(buf[best]).width()) best = i;
    st.push_ext(depth + 1, ext, buf[best]);
    for (size_t i = buf.size(); i-- > 0;)
        if (i != best) st.push_ext(depth + 1, ext, buf[i]);
}

struct Worker {
    ExtensionScratch ext;
    RangeDistinctContext ctx;
    ReprStack st;
    std::vector<uint32_t> chars, buf;
    std::vector<size_t> first;
    EnumerationStats stats;

    void run(const BwtString& bwt, const NodeCallback& cb) {
        while (!st.empty()) {
            stats.max_stack = std::max(stats.max_stack, st.size());
            size_t depth;
            st.pop(depth, chars, first);
            ReprView w{depth, chars.data(), first.data(), chars.size()};
            ext.extend(bwt, w, ctx);
            stats.tuples += ext.tuples();
            ++stats.nodes;
            cb(w, ext);
            push_children(st, depth, ext, buf);
            ext.clean();
        }
    }
};

}  // namespace detail

// Calls cb once per right-maximal substring W (including the empty string),
// with repr(W) and the left extensions of W.  With threads > 1 the subtrees
// below the root are distributed over workers and cb runs concurrently.
inline EnumerationStats enumerate_right_maximal(const BwtString& bwt, const NodeCallback& cb, unsigned threads = 1) {
    if (!bwt.has_range_distinct()) throw std::invalid_argument("enumeration needs rangeDistinct support");
    detail::Worker root;
    root_repr(bwt, root.chars, root.first);
    if (root.chars.size() < 2) return {};
    if (threads <= 1) {
        root.st.push(0, root.chars.data(), root.first.data(), root.chars.size());
        root.run(bwt, cb);
        return root.stats;
    }
    // process the root here, then hand its children to workers
    ReprView w{0, root.chars.data(), root.first.data(), root.chars.size()};
    root.ext.extend(bwt, w, root.ctx);
    root.stats.tuples += root.ext.tuples();
    root.stats.nodes = 1;
    cb(w, root.ext);
    std::vector<uint32_t> kids;
    for (uint32_t a : root.ext.left())
        if (root.ext.gamma(a) >= 2) kids.push_back(a);
    std::sort(kids.begin(), kids.end());
    std::vector<std::vector<uint32_t>> kc(kids.size());
    std::vector<std::vector<size_t>> kf(kids.size());
    for (size_t i = 0; i < kids.size(); ++i) root.ext.repr_of(kids[i], kc[i], kf[i]);
    root.ext.clean();
    std::atomic<size_t> next{0};
    std::vector<detail::Worker> workers(std::min<size_t>(threads, std::max<size_t>(kids.size(), 1)));
    std::vector<std::thread> pool;
    for (auto& wk : workers)
        pool.emplace_back([&, wkp = &wk] {
            for (size_t i; (i = next++) < kids.size();) {
                wkp->st.push(1, kc[i].data(), kf[i].data(), kc[i].size());
                wkp->run(bwt, cb);
            }
        });
    for (auto& t : pool) t.join();
    EnumerationStats s = root.stats;
    for (auto& wk : workers) {
        s.nodes += wk.stats.nodes;
        s.tuples += wk.stats.tuples;
        s.max_stack = std::max(s.max_stack, wk.stats.max_stack + 1);
    }
    return s;
}

// ---- generalized enumeration over m texts --------------------------------------

struct GenView {
    size_t depth = 0;
    size_t m = 0;
    const std::vector<ReprView>* per = nullptr;  // per-text repr; k = 0 when W is absent
    const std::vector<ExtensionScratch>* ext = nullptr;
    const ReprView& text(size_t p) const { return (*per)[p]; }
    size_t width() const {
        size_t w = 0;
        for (auto& r : *per) w += r.k ? r.first[r.k] - r.first[0] : 0;
        return w;
    }
};

using GenCallback = std::function<void(const GenView&)>;

enum class GenMode { AllNodes, ImpureOnly };

struct GenOptions {
    GenMode mode = GenMode::AllNodes;
    // symbol 0 ends each text and counts as a text-specific symbol
    bool distinct_separators = true;
    // abort when a node deeper than this is reached (0 = no limit)
    size_t max_depth = 0;
};

inline EnumerationStats enumerate_generalized(const std::vector<const BwtString*>& bwts, const GenCallback& cb,
                                              GenOptions opt = {}) {
    size_t m = bwts.size();
    if (m < 1) throw std::invalid_argument("generalized enumeration needs at least one text");
    uint32_t sigma = 0;
    for (auto* b : bwts) {
        if (!b->has_range_distinct()) throw std::invalid_argument("enumeration needs rangeDistinct support");
        sigma = std::max(sigma, b->sigma());
    }
    auto C_of = [&](size_t p, uint32_t a) -> size_t {
        const auto& C = bwts[p]->C();
        return a < C.size() ? C[a] : C.back();
    };
    auto rank_of = [&](size_t p, uint32_t a, size_t i) -> size_t {
        return a < bwts[p]->sigma() ? bwts[p]->rank(a, i) : 0;
    };

    // entry layout in one pool: depth, then per text k, then chars, then firsts
    std::vector<size_t> pool;
    std::vector<size_t> ents;  // offsets
    std::vector<std::vector<uint32_t>> chars(m);
    std::vector<std::vector<size_t>> first(m);
    std::vector<ReprView> views(m);
    std::vector<ExtensionScratch> ext(m);
    std::vector<RangeDistinctContext> ctx(m);
    std::vector<uint8_t> mark(sigma + m, 0);
    std::vector<uint32_t> cand, order;
    EnumerationStats stats;

    auto push_entry = [&](size_t depth, auto&& emit_text) {
        ents.push_back(pool.size());
        pool.push_back(depth);
        size_t kpos = pool.size();
        pool.resize(pool.size() + m);
        for (size_t p = 0; p < m; ++p) pool[kpos + p] = emit_text(p, pool);
    };

    // root
    {
        std::vector<uint32_t> c;
        std::vector<size_t> f;
        push_entry(0, [&](size_t p, std::vector<size_t>& pl) {
            root_repr(*bwts[p], c, f);
            for (uint32_t x : c) pl.push_back(x);
            for (size_t x : f) pl.push_back(x);
            return c.size();
        });
    }

    auto label_count = [&](auto&& chars_of, size_t& present) {
        size_t cnt = 0;
        present = 0;
        std::vector<uint32_t>& touched = order;
        touched.clear();
        for (size_t p = 0; p < m; ++p) {
            auto [ptr, k] = chars_of(p);
            if (k) ++present;
            for (size_t i = 0; i < k; ++i) {
                uint32_t x = ptr[i];
                size_t slot = (opt.distinct_separators && x == 0) ? sigma + p : x;
                if (!mark[slot]) {
                    mark[slot] = 1;
                    touched.push_back(static_cast<uint32_t>(slot));
                    ++cnt;
                }
            }
        }
        for (uint32_t s : touched) mark[s] = 0;
        return cnt;
    };

    bool root_seen = false;
    while (!ents.empty()) {
        stats.max_stack = std::max(stats.max_stack, ents.size());
        size_t off = ents.back();
        ents.pop_back();
        size_t depth = pool[off];
        size_t q = off + 1 + m;
        for (size_t p = 0; p < m; ++p) {
            size_t k = pool[off + 1 + p];
            chars[p].assign(k, 0);
            for (size_t i = 0; i < k; ++i) chars[p][i] = static_cast<uint32_t>(pool[q + i]);
            q += k;
            size_t nf = k ? k + 1 : 1;
            first[p].assign(pool.begin() + q, pool.begin() + q + nf);
            q += nf;
        }
        pool.resize(off);
        for (size_t p = 0; p < m; ++p) views[p] = {depth, chars[p].data(), first[p].data(), chars[p].size()};

        if (!root_seen) {
            root_seen = true;
            // the root itself must qualify
            size_t present;
            size_t cnt = label_count([&](size_t p) { return std::make_pair(chars[p].data(), chars[p].size()); }, present);
            bool ok = cnt >= 2 && (opt.mode == GenMode::AllNodes || present >= 2);
            if (!ok) continue;
        }
        if (opt.max_depth && depth > opt.max_depth) throw std::runtime_error("overlapping rotation sets");

        cand.clear();
        for (size_t p = 0; p < m; ++p) {
            if (views[p].k) {
                ext[p].extend(*bwts[p], views[p], ctx[p]);
                stats.tuples += ext[p].tuples();
            } else {
                ext[p].ensure(bwts[p]->sigma());
            }
            for (uint32_t a : ext[p].left())
                if (!mark[a]) {
                    mark[a] = 1;
                    cand.push_back(a);
                }
        }
        for (uint32_t a : cand) mark[a] = 0;
        ++stats.nodes;
        GenView gv{depth, m, &views, &ext};
        cb(gv);

        // children
        std::sort(cand.begin(), cand.end());
        std::vector<uint32_t> kids;
        std::vector<size_t> widths;
        for (uint32_t a : cand) {
            if (opt.distinct_separators && a == 0) continue;
            size_t present;
            size_t cnt = label_count(
                [&](size_t p) {
                    uint32_t g = ext[p].gamma(a);
                    return std::make_pair(g ? ext[p].chars(a) : static_cast<const uint32_t*>(nullptr), size_t(g));
                },
                present);
            if (cnt < 2) continue;
            if (opt.mode == GenMode::ImpureOnly && present < 2) continue;
            size_t w = 0;
            for (size_t p = 0; p < m; ++p) w += ext[p].interval(a).width();
            kids.push_back(a);
            widths.push_back(w);
        }
        if (!kids.empty()) {
            size_t best = 0;
            for (size_t i = 1; i < kids.size(); ++i)
                if (widths[i] >= widths[best]) best = i;
            auto push_kid = [&](uint32_t a) {
                push_entry(depth + 1, [&](size_t p, std::vector<size_t>& pl) -> size_t {
                    uint32_t g = ext[p].gamma(a);
                    if (g) {
                        const uint32_t* c = ext[p].chars(a);
                        for (size_t i = 0; i < g; ++i) pl.push_back(c[i]);
                        const size_t* f = ext[p].firsts(a);
                        for (size_t i = 0; i < g; ++i) pl.push_back(f[i]);
                        pl.push_back(ext[p].lasts(a)[g - 1] + 1);
                    } else {
                        pl.push_back(C_of(p, a) + rank_of(p, a, views[p].first[0] - 1) + 1);
                    }
                    return g;
                });
            };
            push_kid(kids[best]);
            for (size_t i = kids.size(); i-- > 0;)
                if (i != best) push_kid(kids[i]);
        }
        for (size_t p = 0; p < m; ++p) ext[p].clean();
    }
    return stats;
}

}  // namespace ubwt
