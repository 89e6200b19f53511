#pragma once
// Sequence representation over [0..sigma-1] cut into blocks of sigma symbols.
// Each block is described by its stable-sort permutation pi_b, a unary
// histogram C^b, and per-symbol block counts freq_c.  One of pi / pi^-1 is
// stored explicitly; the other is recovered through cycle shortcuts.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "succinct.hpp"

namespace ubwt {

// Permutation on [1..n] given explicitly, with its inverse answered by at
// most k+1 forward applications using one back pointer per k cycle elements.
class ShortcutPermutation {
public:
    ShortcutPermutation() = default;

    // p[i-1] = pi(i); block-local storage: pi(i) = base(i) + local(i).
    void build(const std::vector<u64>& p, unsigned k) {
        n_ = p.size();
        k_ = std::max(1u, k);
        perm_ = IntVector(n_, IntVector::width_for(n_));
        for (size_t i = 1; i <= n_; ++i) perm_.set(i, p[i - 1]);
        build_shortcuts();
    }

    size_t size() const { return n_; }
    unsigned k() const { return k_; }
    u64 apply(size_t i) const { return perm_.get(i); }

    u64 inverse(size_t x, size_t* applications = nullptr) const {
        size_t steps = 0;
        size_t z = x;
        // walk forward until back at x (short cycle) or a marked element
        for (;;) {
            if (marked_[z]) break;
            size_t nz = perm_.get(z);
            ++steps;
            if (nz == x) {
                if (applications) *applications += steps;
                return z;
            }
            z = nz;
        }
        size_t w = back_.get(marked_.rank1(z));
        for (;;) {
            size_t nw = perm_.get(w);
            ++steps;
            if (nw == x) break;
            w = nw;
        }
        if (applications) *applications += steps;
        return w;
    }

    size_t size_in_bits() const { return perm_.size_in_bits() + marked_.size_in_bits() + back_.size_in_bits(); }

    void save(Writer& w) const {
        w.u32(k_);
        perm_.save(w);
    }
    void load(Reader& r) {
        k_ = r.u32();
        perm_.load(r);
        n_ = perm_.size();
        build_shortcuts();
    }

private:
    void build_shortcuts() {
        marked_ = BitVector(n_);
        std::vector<bool> seen(n_ + 1, false);
        std::vector<std::pair<size_t, size_t>> links;  // (mark, previous mark)
        std::vector<size_t> cyc;
        for (size_t s = 1; s <= n_; ++s) {
            if (seen[s]) continue;
            cyc.clear();
            for (size_t z = s; !seen[z]; z = perm_.get(z)) {
                seen[z] = true;
                cyc.push_back(z);
            }
            if (cyc.size() <= k_) continue;
            size_t last = ((cyc.size() - 1) / k_) * k_;
            for (size_t i = 0; i < cyc.size(); i += k_) {
                marked_.set(cyc[i]);
                links.emplace_back(cyc[i], i == 0 ? cyc[last] : cyc[i - k_]);
            }
        }
        marked_.build();
        back_ = IntVector(links.size(), IntVector::width_for(n_));
        for (auto [m, prev] : links) back_.set(marked_.rank1(m), prev);
    }

    size_t n_ = 0;
    unsigned k_ = 8;
    IntVector perm_;
    BitVector marked_;
    IntVector back_;
};

class SequenceIndex {
public:
    enum class Mode : uint8_t { AccessFast = 0, SelectFast = 1 };

    SequenceIndex() = default;
    SequenceIndex(const std::vector<u32>& s, u32 sigma, Mode mode = Mode::AccessFast, unsigned k = 8) {
        build(s, sigma, mode, k);
    }

    void build(const std::vector<u32>& s, u32 sigma, Mode mode = Mode::AccessFast, unsigned k = 8) {
        n_ = s.size();
        sigma_ = std::max<u32>(sigma, 1);
        mode_ = mode;
        bs_ = sigma_;
        nb_ = (n_ + bs_ - 1) / bs_;
        C_.assign(sigma_ + 1, 0);
        for (u32 c : s) {
            if (c >= sigma_) throw std::invalid_argument("symbol out of range");
            ++C_[c + 1];
        }
        for (u32 c = 0; c < sigma_; ++c) C_[c + 1] += C_[c];

        // per-block counts, histogram bitvector, permutation
        std::vector<u64> pi(n_);
        cunary_ = BitVector(nb_ * 2 * bs_);
        std::vector<u64> cb(sigma_ + 1);
        std::vector<u64> seen(sigma_);
        for (size_t b = 0; b < nb_; ++b) {
            size_t lo = b * bs_, hi = std::min(n_, lo + bs_);
            std::fill(cb.begin(), cb.end(), 0);
            for (size_t i = lo; i < hi; ++i) ++cb[s[i] + 1];
            size_t off = b * 2 * bs_;
            size_t pos = off;
            for (u32 c = 0; c < sigma_; ++c) {
                for (u64 t = 0; t < cb[c + 1]; ++t) cunary_.set(++pos);
                ++pos;  // zero terminator
            }
            for (u32 c = 0; c < sigma_; ++c) cb[c + 1] += cb[c];
            std::fill(seen.begin(), seen.end(), 0);
            for (size_t i = lo; i < hi; ++i) {
                u32 c = s[i];
                u64 local = cb[c] + (++seen[c]);
                u64 g = lo + local;
                pi[i] = g;
            }
        }
        cunary_.build();

        // freq_c: for each c, per block "1 0^{f(c,b)}"
        freq_ = BitVector(static_cast<size_t>(sigma_) * nb_ + n_);
        {
            // counts f(c,b) gathered per symbol, block order
            std::vector<u64> cnt(static_cast<size_t>(sigma_) * std::max<size_t>(nb_, 1), 0);
            for (size_t i = 0; i < n_; ++i) ++cnt[static_cast<size_t>(s[i]) * nb_ + i / bs_];
            size_t pos = 0;
            for (u32 c = 0; c < sigma_; ++c)
                for (size_t b = 0; b < nb_; ++b) {
                    freq_.set(++pos);
                    pos += cnt[static_cast<size_t>(c) * nb_ + b];
                }
        }
        freq_.build();

        if (mode_ == Mode::AccessFast) {
            perm_.build(pi, k);
        } else {
            std::vector<u64> inv(n_);
            for (size_t i = 0; i < n_; ++i) inv[pi[i] - 1] = i + 1;
            perm_.build(inv, k);
        }
    }

    size_t size() const { return n_; }
    u32 sigma() const { return sigma_; }
    Mode mode() const { return mode_; }
    const std::vector<u64>& counts() const { return C_; }
    u64 count(u32 c) const { return c < sigma_ ? C_[c + 1] - C_[c] : 0; }

    u32 access(size_t i) const { return access_rank(i).first; }

    // (S[i], rank_{S[i]}(S, i))
    std::pair<u32, size_t> access_rank(size_t i, size_t* apps = nullptr) const {
        if (i == 0 || i > n_) throw std::out_of_range("access position");
        size_t b = (i - 1) / bs_;
        size_t j = pi(i, apps) - b * bs_;  // sorted position inside the block
        size_t off = b * 2 * bs_;
        size_t ob = cunary_.rank1(off);
        size_t p = cunary_.select1(ob + j);
        u32 c = static_cast<u32>(p - off - j);
        size_t r = before(c, b) + (j - block_c(c, b, off));
        return {c, r};
    }

    // Position of the j-th occurrence of c.
    size_t select(u32 c, size_t j, size_t* apps = nullptr) const {
        if (c >= sigma_ || j == 0 || j > count(c)) throw std::out_of_range("select argument");
        size_t offc = static_cast<size_t>(c) * nb_ + C_[c];
        size_t pos = freq_.select0(C_[c] + j);
        size_t b = (pos - offc - j) - 1;
        size_t r = j - before(c, b);
        size_t jj = block_c(c, b, b * 2 * bs_) + r;
        return pi_inv(b * bs_ + jj, apps);
    }

    // Occurrences of c in S[1..i].
    size_t rank(u32 c, size_t i) const {
        if (i > n_) throw std::out_of_range("rank position");
        if (i == 0 || c >= sigma_) return 0;
        size_t b = (i - 1) / bs_;
        size_t base = before(c, b);
        size_t off = b * 2 * bs_;
        size_t cb = block_c(c, b, off);
        size_t f = block_c(c + 1, b, off) - cb;  // f(c,b)
        // count r in [0,f] with local position of occurrence r <= i
        size_t lo = 0, hi = f;
        size_t blo = b * bs_;
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            if (pi_inv(blo + cb + mid) <= i) lo = mid;
            else hi = mid - 1;
        }
        return base + lo;
    }

    size_t size_in_bits() const {
        return perm_.size_in_bits() + freq_.size_in_bits() + cunary_.size_in_bits() + 64 * C_.size();
    }

    void save(Writer& w) const {
        w.u64(n_);
        w.u32(sigma_);
        w.u8(static_cast<uint8_t>(mode_));
        w.vec(C_);
        freq_.save(w);
        cunary_.save(w);
        perm_.save(w);
    }
    void load(Reader& r) {
        n_ = r.u64();
        sigma_ = r.u32();
        mode_ = static_cast<Mode>(r.u8());
        r.vec(C_);
        freq_.load(r);
        cunary_.load(r);
        perm_.load(r);
        if (sigma_ == 0 || C_.size() != sigma_ + 1 || perm_.size() != n_) throw FormatError("sequence index");
        bs_ = sigma_;
        nb_ = (n_ + bs_ - 1) / bs_;
    }

private:
    size_t pi(size_t g, size_t* apps) const {
        if (mode_ == Mode::AccessFast) return perm_.apply(g);
        return perm_.inverse(g, apps);
    }
    size_t pi_inv(size_t g, size_t* apps = nullptr) const {
        if (mode_ == Mode::SelectFast) return perm_.apply(g);
        return perm_.inverse(g, apps);
    }
    // Occurrences of c in blocks before b.
    size_t before(u32 c, size_t b) const {
        size_t offc = static_cast<size_t>(c) * nb_ + C_[c];
        return freq_.select1(static_cast<size_t>(c) * nb_ + b + 1) - offc - (b + 1);
    }
    // C^b[c]: symbols < c in block b (c may equal sigma).
    size_t block_c(u32 c, size_t /*b*/, size_t off) const {
        if (c == 0) return 0;
        size_t z0 = cunary_.rank0(off);
        return cunary_.select0(z0 + c) - off - c;
    }

    size_t n_ = 0;
    u32 sigma_ = 1;
    Mode mode_ = Mode::AccessFast;
    size_t bs_ = 1, nb_ = 0;
    std::vector<u64> C_;
    BitVector freq_, cunary_;
    ShortcutPermutation perm_;
};

}  // namespace ubwt
