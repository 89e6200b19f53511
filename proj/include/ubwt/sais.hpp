#pragma once
// Suffix array by induced sorting.

#include <cstdint>
#include <vector>

namespace ubwt {

namespace detail {

// s[n-1] must be the unique minimum (value 0); all symbols < K.
inline void sais_core(const std::vector<uint32_t>& s, uint32_t K, std::vector<uint32_t>& sa) {
    constexpr uint32_t kEmpty = UINT32_MAX;
    const size_t n = s.size();
    sa.assign(n, kEmpty);
    if (n == 1) {
        sa[0] = 0;
        return;
    }
    std::vector<bool> stype(n);
    stype[n - 1] = true;
    for (size_t i = n - 1; i-- > 0;) stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    auto is_lms = [&](size_t i) { return i > 0 && stype[i] && !stype[i - 1]; };

    std::vector<uint32_t> cnt(K + 1, 0), bkt(K);
    for (uint32_t c : s) ++cnt[c + 1];
    for (uint32_t c = 0; c < K; ++c) cnt[c + 1] += cnt[c];
    auto ends = [&] {
        for (uint32_t c = 0; c < K; ++c) bkt[c] = cnt[c + 1];
    };
    auto starts = [&] {
        for (uint32_t c = 0; c < K; ++c) bkt[c] = cnt[c];
    };
    auto induce = [&](const std::vector<uint32_t>& lms) {
        std::fill(sa.begin(), sa.end(), kEmpty);
        ends();
        for (size_t k = lms.size(); k-- > 0;) sa[--bkt[s[lms[k]]]] = lms[k];
        starts();
        for (size_t i = 0; i < n; ++i) {
            uint32_t p = sa[i];
            if (p != kEmpty && p > 0 && !stype[p - 1]) sa[bkt[s[p - 1]]++] = p - 1;
        }
        ends();
        for (size_t i = n; i-- > 0;) {
            uint32_t p = sa[i];
            if (p != kEmpty && p > 0 && stype[p - 1]) sa[--bkt[s[p - 1]]] = p - 1;
        }
    };

    std::vector<uint32_t> lms;
    for (size_t i = 1; i < n; ++i)
        if (is_lms(i)) lms.push_back(static_cast<uint32_t>(i));
    induce(lms);

    std::vector<uint32_t> sorted;
    sorted.reserve(lms.size());
    for (size_t i = 0; i < n; ++i)
        if (is_lms(sa[i])) sorted.push_back(sa[i]);

    std::vector<uint32_t> name(n, kEmpty);
    uint32_t names = 0;
    uint32_t prev = kEmpty;
    for (uint32_t p : sorted) {
        bool diff = prev == kEmpty;
        for (size_t d = 0; !diff; ++d) {
            if (s[p + d] != s[prev + d] || stype[p + d] != stype[prev + d]) {
                diff = true;
            } else if (d > 0 && (is_lms(p + d) || is_lms(prev + d))) {
                diff = !(is_lms(p + d) && is_lms(prev + d));
                break;
            }
        }
        if (diff) ++names;
        name[p] = names - 1;
        prev = p;
    }
    std::vector<uint32_t> s1;
    s1.reserve(lms.size());
    for (uint32_t p : lms) s1.push_back(name[p]);
    std::vector<uint32_t> sa1;
    if (names < lms.size()) {
        sais_core(s1, names, sa1);
    } else {
        sa1.assign(lms.size(), 0);
        for (size_t i = 0; i < s1.size(); ++i) sa1[s1[i]] = static_cast<uint32_t>(i);
    }
    for (size_t i = 0; i < sa1.size(); ++i) sorted[i] = lms[sa1[i]];
    induce(sorted);
}

}  // namespace detail

// 0-based suffix array of s under the usual order (a proper prefix sorts first).
inline std::vector<uint32_t> suffix_array(const std::vector<uint32_t>& s, uint32_t K) {
    std::vector<uint32_t> t(s.size() + 1);
    for (size_t i = 0; i < s.size(); ++i) t[i] = s[i] + 1;
    t[s.size()] = 0;
    std::vector<uint32_t> sa;
    detail::sais_core(t, K + 1, sa);
    sa.erase(sa.begin());
    return sa;
}

}  // namespace ubwt
