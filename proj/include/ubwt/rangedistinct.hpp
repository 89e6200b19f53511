#pragma once
// rangeDistinct(i, j): every distinct symbol of S[i..j] with the partial ranks
// of its first and last occurrence inside the range.  First occurrences are
// the positions whose previous occurrence P[k] is < i, found by recursive RMQ
// on P; last occurrences symmetrically by max-RMQ on the next occurrence N.

#include <cstdint>
#include <vector>

#include "bp.hpp"
#include "mmphf.hpp"
#include "seqindex.hpp"

namespace ubwt {

struct DistinctTuple {
    u32 c;
    size_t first_rank;
    size_t last_rank;
};

// Caller-owned query scratch; reusable across queries.
struct RangeDistinctContext {
    std::vector<u32> slot;  // symbol -> index in out, or kFree
    std::vector<std::pair<size_t, size_t>> stack;
    std::vector<DistinctTuple> out;
    size_t rmq_calls = 0;  // per pass maximum of the last query
    static constexpr u32 kFree = UINT32_MAX;
    void ensure(u32 sigma) {
        if (slot.size() < sigma) slot.assign(sigma, kFree);
    }
    bool clean() const {
        for (u32 v : slot)
            if (v != kFree) return false;
        return true;
    }
};

class RangeDistinct {
public:
    enum class Backend : uint8_t { Select = 0, Hashed = 1 };

    RangeDistinct() = default;
    RangeDistinct(const SequenceIndex& s, Backend backend = Backend::Select, u64 seed = 0) { build(s, backend, seed); }

    void build(const SequenceIndex& s, Backend backend = Backend::Select, u64 seed = 0) {
        n_ = s.size();
        sigma_ = s.sigma();
        backend_ = backend;
        std::vector<u64> P(n_), N(n_);
        std::vector<u64> last(sigma_, 0);
        std::vector<u32> sym(n_);
        for (size_t k = 1; k <= n_; ++k) {
            u32 c = s.access(k);
            sym[k - 1] = c;
            P[k - 1] = last[c];
            last[c] = k;
        }
        std::fill(last.begin(), last.end(), n_ + 1);
        for (size_t k = n_; k >= 1; --k) {
            u32 c = sym[k - 1];
            N[k - 1] = last[c];
            last[c] = k;
        }
        rmq_p_.build(P, false);
        rmq_n_.build(N, true);
        if (backend_ == Backend::Hashed) {
            gap_p_ = GammaStream();
            gap_n_ = GammaStream();
            for (size_t k = 1; k <= n_; ++k) {
                gap_p_.append(k - P[k - 1]);
                gap_n_.append(N[k - 1] - k);
            }
            gap_p_.finish();
            gap_n_.finish();
            std::vector<std::vector<u64>> pos(sigma_);
            for (size_t k = 1; k <= n_; ++k) pos[sym[k - 1]].push_back(k);
            rank_.assign(sigma_, Mmphf());
            for (u32 c = 0; c < sigma_; ++c)
                if (!pos[c].empty()) rank_[c].build(pos[c], n_, mix64(seed + c));
        }
    }

    size_t size() const { return n_; }
    u32 sigma() const { return sigma_; }
    Backend backend() const { return backend_; }

    // Fills ctx.out; order of tuples is unspecified.
    const std::vector<DistinctTuple>& query(const SequenceIndex& s, size_t i, size_t j, RangeDistinctContext& ctx) const {
        if (i > j || i == 0 || j > n_) throw std::out_of_range("rangeDistinct range");
        ctx.ensure(sigma_);
        ctx.out.clear();
        size_t calls1 = 0, calls2 = 0;
        // first occurrences
        ctx.stack.clear();
        ctx.stack.emplace_back(i, j);
        while (!ctx.stack.empty()) {
            auto [a, b] = ctx.stack.back();
            ctx.stack.pop_back();
            ++calls1;
            size_t k = rmq_p_.query(a, b);
            auto [c, r, pk] = prev_of(s, k);
            if (pk >= i) continue;
            ctx.slot[c] = static_cast<u32>(ctx.out.size());
            ctx.out.push_back({c, r, r});
            if (k > a) ctx.stack.emplace_back(a, k - 1);
            if (k < b) ctx.stack.emplace_back(k + 1, b);
        }
        // last occurrences
        ctx.stack.emplace_back(i, j);
        while (!ctx.stack.empty()) {
            auto [a, b] = ctx.stack.back();
            ctx.stack.pop_back();
            ++calls2;
            size_t k = rmq_n_.query(a, b);
            auto [c, r, nk] = next_of(s, k);
            if (nk <= j) continue;
            ctx.out[ctx.slot[c]].last_rank = r;
            if (k > a) ctx.stack.emplace_back(a, k - 1);
            if (k < b) ctx.stack.emplace_back(k + 1, b);
        }
        for (auto& t : ctx.out) ctx.slot[t.c] = RangeDistinctContext::kFree;
        ctx.rmq_calls = std::max(calls1, calls2);
        return ctx.out;
    }

    size_t size_in_bits() const {
        size_t b = rmq_p_.size_in_bits() + rmq_n_.size_in_bits();
        if (backend_ == Backend::Hashed) {
            b += gap_p_.size_in_bits() + gap_n_.size_in_bits();
            for (auto& f : rank_) b += f.size_in_bits();
        }
        return b;
    }

    void save(Writer& w) const {
        w.u64(n_);
        w.u32(sigma_);
        w.u8(static_cast<uint8_t>(backend_));
        rmq_p_.save(w);
        rmq_n_.save(w);
        if (backend_ == Backend::Hashed) {
            gap_p_.save(w);
            gap_n_.save(w);
            for (auto& f : rank_) f.save(w);
        }
    }
    void load(Reader& r) {
        n_ = r.u64();
        sigma_ = r.u32();
        backend_ = static_cast<Backend>(r.u8());
        rmq_p_.load(r);
        rmq_n_.load(r);
        if (backend_ == Backend::Hashed) {
            gap_p_.load(r);
            gap_n_.load(r);
            rank_.assign(sigma_, Mmphf());
            for (auto& f : rank_) f.load(r);
        }
    }

private:
    struct Hit {
        u32 c;
        size_t rank;
        size_t other;
    };
    Hit prev_of(const SequenceIndex& s, size_t k) const {
        if (backend_ == Backend::Hashed) {
            u32 c = s.access(k);
            return {c, static_cast<size_t>(rank_[c].eval(k)), k - static_cast<size_t>(gap_p_.read(k))};
        }
        auto [c, r] = s.access_rank(k);
        return {c, r, r > 1 ? s.select(c, r - 1) : 0};
    }
    Hit next_of(const SequenceIndex& s, size_t k) const {
        if (backend_ == Backend::Hashed) {
            u32 c = s.access(k);
            return {c, static_cast<size_t>(rank_[c].eval(k)), k + static_cast<size_t>(gap_n_.read(k))};
        }
        auto [c, r] = s.access_rank(k);
        return {c, r, r < s.count(c) ? s.select(c, r + 1) : n_ + 1};
    }

    size_t n_ = 0;
    u32 sigma_ = 1;
    Backend backend_ = Backend::Select;
    Rmq rmq_p_, rmq_n_;
    GammaStream gap_p_, gap_n_;
    std::vector<Mmphf> rank_;
};

}  // namespace ubwt
