#pragma once
// Minimal perfect hashing (hash-and-displace) and monotone minimal perfect
// hashing by most-significant-bit bucketing inside quotiented universe blocks.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "succinct.hpp"

namespace ubwt {

inline u64 mix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline u64 reduce64(u64 h, u64 n) { return static_cast<u64>((static_cast<unsigned __int128>(h) * n) >> 64); }

// Minimal perfect hash over a set of distinct 64-bit keys; eval in [0, m).
class Mphf {
public:
    Mphf() = default;
    Mphf(const std::vector<u64>& keys, u64 seed) { build(keys, seed); }

    void build(const std::vector<u64>& keys, u64 seed) {
        m_ = keys.size();
        seed_ = seed;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 64) throw std::runtime_error("mphf construction failed; duplicate keys?");
            if (try_build(keys)) return;
            seed_ = mix64(seed_ + 0x51ed27);
        }
    }

    size_t size() const { return m_; }
    u64 seed() const { return seed_; }

    u64 eval(u64 key) const {
        if (m_ <= 1) return 0;
        u64 h = mix64(key ^ seed_);
        u64 d = disp_.get(reduce64(h, nbk_) + 1);
        u64 p = slot(h, d);
        size_t r = occupied_.rank1(p + 1);
        return r ? r - 1 : 0;
    }

    size_t size_in_bits() const { return disp_.size_in_bits() + occupied_.size_in_bits(); }

    void save(Writer& w) const {
        w.u64(m_);
        w.u64(seed_);
        w.u64(nbk_);
        w.u64(tsize_);
        disp_.save(w);
        occupied_.save(w);
    }
    void load(Reader& r) {
        m_ = r.u64();
        seed_ = r.u64();
        nbk_ = r.u64();
        tsize_ = r.u64();
        disp_.load(r);
        occupied_.load(r);
    }

private:
    u64 slot(u64 h, u64 d) const { return reduce64(mix64(h ^ ((d + 1) * 0xd6e8feb86659fd93ULL)), tsize_); }

    bool try_build(const std::vector<u64>& keys) {
        if (m_ <= 1) {
            nbk_ = 1;
            tsize_ = 1;
            disp_ = IntVector(1, 1);
            occupied_ = BitVector(1, true);
            occupied_.build();
            return true;
        }
        nbk_ = std::max<u64>(1, (m_ + 3) / 4);
        tsize_ = m_ + m_ / 9 + 1;
        std::vector<u64> hs(m_);
        std::vector<u64> start(nbk_ + 1, 0);
        for (size_t i = 0; i < m_; ++i) {
            hs[i] = mix64(keys[i] ^ seed_);
            ++start[reduce64(hs[i], nbk_) + 1];
        }
        for (size_t b = 0; b < nbk_; ++b) start[b + 1] += start[b];
        std::vector<u64> grouped(m_);
        {
            std::vector<u64> fill(start.begin(), start.end() - 1);
            for (size_t i = 0; i < m_; ++i) grouped[fill[reduce64(hs[i], nbk_)]++] = hs[i];
        }
        // buckets in decreasing size
        size_t maxsz = 0;
        for (size_t b = 0; b < nbk_; ++b) maxsz = std::max<size_t>(maxsz, start[b + 1] - start[b]);
        std::vector<std::vector<u32>> bysize(maxsz + 1);
        for (size_t b = 0; b < nbk_; ++b) bysize[start[b + 1] - start[b]].push_back(static_cast<u32>(b));
        std::vector<uint8_t> occ(tsize_, 0);
        std::vector<u64> disp(nbk_, 0);
        std::vector<u64> cand;
        for (size_t sz = maxsz; sz >= 1; --sz) {
            for (u32 b : bysize[sz]) {
                bool ok = false;
                for (u64 d = 0; d < (1u << 20); ++d) {
                    cand.clear();
                    ok = true;
                    for (size_t t = start[b]; t < start[b + 1]; ++t) {
                        u64 p = slot(grouped[t], d);
                        if (occ[p] || std::find(cand.begin(), cand.end(), p) != cand.end()) {
                            ok = false;
                            break;
                        }
                        cand.push_back(p);
                    }
                    if (ok) {
                        for (u64 p : cand) occ[p] = 1;
                        disp[b] = d;
                        break;
                    }
                }
                if (!ok) return false;
            }
        }
        u64 maxd = *std::max_element(disp.begin(), disp.end());
        disp_ = IntVector(nbk_, IntVector::width_for(maxd));
        for (size_t b = 0; b < nbk_; ++b) disp_.set(b + 1, disp[b]);
        occupied_ = BitVector(tsize_);
        for (size_t p = 0; p < tsize_; ++p)
            if (occ[p]) occupied_.set(p + 1);
        occupied_.build();
        return true;
    }

    size_t m_ = 0;
    u64 seed_ = 0, nbk_ = 1, tsize_ = 1;
    IntVector disp_;
    BitVector occupied_;
};

// Static function key -> small value over a fixed key set; values for
// non-members are arbitrary.
class HashedFunction {
public:
    HashedFunction() = default;
    HashedFunction(const std::vector<u64>& keys, const std::vector<u64>& vals, u64 seed) { build(keys, vals, seed); }

    void build(const std::vector<u64>& keys, const std::vector<u64>& vals, u64 seed) {
        f_.build(keys, seed);
        u64 mx = vals.empty() ? 0 : *std::max_element(vals.begin(), vals.end());
        tab_ = IntVector(keys.size(), IntVector::width_for(mx));
        for (size_t i = 0; i < keys.size(); ++i) tab_.set(f_.eval(keys[i]) + 1, vals[i]);
    }
    size_t size() const { return f_.size(); }
    u64 eval(u64 key) const { return f_.size() ? tab_.get(f_.eval(key) + 1) : 0; }
    size_t size_in_bits() const { return f_.size_in_bits() + tab_.size_in_bits(); }
    void save(Writer& w) const {
        f_.save(w);
        tab_.save(w);
    }
    void load(Reader& r) {
        f_.load(r);
        tab_.load(r);
    }

private:
    Mphf f_;
    IntVector tab_;
};

// Monotone minimal perfect hash: eval(x) = rank of x (1-based) for members.
class Mmphf {
public:
    Mmphf() = default;
    Mmphf(const std::vector<u64>& sorted, u64 universe, u64 seed, unsigned bucket = 0) {
        build(sorted, universe, seed, bucket);
    }

    static unsigned default_bucket(size_t n) {
        if (n < 4) return 1;
        unsigned ll = static_cast<unsigned>(std::ceil(std::log2(std::log2(static_cast<double>(n)))));
        return 1u << ll;
    }

    void build(const std::vector<u64>& sorted, u64 universe, u64 seed, unsigned bucket = 0) {
        m_ = sorted.size();
        for (size_t i = 1; i < m_; ++i)
            if (sorted[i] <= sorted[i - 1]) throw std::invalid_argument("mmphf keys not strictly increasing");
        if (m_ && sorted.back() > universe) throw std::invalid_argument("mmphf key exceeds universe");
        b_ = bucket ? bucket : default_bucket(m_);
        u64 ratio = m_ ? std::max<u64>(1, universe / m_) : 1;
        q_ = static_cast<unsigned>(std::bit_width(ratio) - 1);
        if (q_ > 56) q_ = 56;
        if (m_ == 0) return;
        for (u64 x : sorted)
            if ((x >> q_) > (~u64(0) >> (q_ + 8)) / (q_ + 1)) throw std::invalid_argument("mmphf universe too large");

        // cardinalities of quotient blocks
        u64 nblocks = (sorted.back() >> q_) + 1;
        std::vector<u64> card(nblocks, 0);
        for (u64 x : sorted) ++card[x >> q_];
        ps_.build(card);

        std::vector<u64> lcp(m_), pos(m_);
        std::vector<u64> gkeys, gvals;
        size_t i = 0;
        while (i < m_) {
            u64 u = sorted[i] >> q_;
            size_t j = i;
            while (j < m_ && (sorted[j] >> q_) == u) ++j;
            // keys [i,j) share quotient u; bucket them
            u64 local = 0;
            for (size_t s = i; s < j; s += b_, ++local) {
                size_t e = std::min(j, s + b_);
                unsigned l = q_;
                if (e - s > 1) {
                    u64 diff = (sorted[s] ^ sorted[e - 1]) & detail::low_mask(q_);
                    l = q_ - static_cast<unsigned>(std::bit_width(diff));
                }
                u64 prefix = (sorted[s] & detail::low_mask(q_)) >> (q_ - l);
                gkeys.push_back(gkey(u, l, prefix));
                gvals.push_back(local);
                for (size_t t = s; t < e; ++t) {
                    lcp[t] = l;
                    pos[t] = t - s;
                }
            }
            i = j;
        }
        F_.build(sorted, mix64(seed));
        lcp_ = IntVector(m_, IntVector::width_for(q_));
        pos_ = IntVector(m_, IntVector::width_for(b_ - 1));
        for (size_t t = 0; t < m_; ++t) {
            u64 f = F_.eval(sorted[t]) + 1;
            lcp_.set(f, lcp[t]);
            pos_.set(f, pos[t]);
        }
        G_.build(gkeys, gvals, mix64(seed + 1));
    }

    size_t size() const { return m_; }

    u64 eval(u64 x) const {
        if (m_ == 0) return 0;
        u64 u = x >> q_;
        if (u >= ps_.size()) return m_;
        u64 f = F_.eval(x) + 1;
        unsigned l = static_cast<unsigned>(lcp_.get(f));
        if (l > q_) l = q_;
        u64 prefix = (x & detail::low_mask(q_)) >> (q_ - l);
        u64 local = G_.eval(gkey(u, l, prefix));
        u64 r = ps_.query(u) + local * b_ + pos_.get(f) + 1;
        return std::min<u64>(r, m_);
    }

    size_t size_in_bits() const {
        return F_.size_in_bits() + lcp_.size_in_bits() + pos_.size_in_bits() + G_.size_in_bits() + ps_.size_in_bits();
    }

    void save(Writer& w) const {
        w.u64(m_);
        w.u32(b_);
        w.u32(q_);
        if (!m_) return;
        ps_.save(w);
        F_.save(w);
        lcp_.save(w);
        pos_.save(w);
        G_.save(w);
    }
    void load(Reader& r) {
        m_ = r.u64();
        b_ = r.u32();
        q_ = r.u32();
        if (!m_) return;
        ps_.load(r);
        F_.load(r);
        lcp_.load(r);
        pos_.load(r);
        G_.load(r);
    }

private:
    u64 gkey(u64 u, unsigned l, u64 prefix) const { return ((u * (q_ + 1) + l) << q_) | prefix; }

    size_t m_ = 0;
    unsigned b_ = 1, q_ = 0;
    PrefixSum ps_;
    Mphf F_;
    IntVector lcp_, pos_;
    HashedFunction G_;
};

}  // namespace ubwt
