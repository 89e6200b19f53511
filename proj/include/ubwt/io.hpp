#pragma once
// Little-endian byte archive used by every serializable structure.

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace ubwt {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Writer {
public:
    void u8(uint8_t v) { buf_.push_back(v); }
    void u32(uint32_t v) { le(v, 4); }
    void u64(uint64_t v) { le(v, 8); }
    void f64(double v) {
        uint64_t b;
        std::memcpy(&b, &v, 8);
        u64(b);
    }

    template <class T>
    void vec(const std::vector<T>& v) {
        static_assert(std::is_integral_v<T>);
        u64(v.size());
        for (T x : v) le(static_cast<uint64_t>(x), sizeof(T));
    }
    void str(const std::string& s) {
        u64(s.size());
        buf_.insert(buf_.end(), s.begin(), s.end());
    }

    void align8() {
        while (buf_.size() % 8) buf_.push_back(0);
    }
    size_t size() const { return buf_.size(); }
    std::vector<uint8_t>& bytes() { return buf_; }
    const std::vector<uint8_t>& bytes() const { return buf_; }

private:
    void le(uint64_t v, int k) {
        for (int i = 0; i < k; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    std::vector<uint8_t> buf_;
};

class Reader {
public:
    Reader(const uint8_t* p, size_t n) : p_(p), n_(n) {}
    explicit Reader(const std::vector<uint8_t>& v) : p_(v.data()), n_(v.size()) {}

    uint8_t u8() { return static_cast<uint8_t>(le(1)); }
    uint32_t u32() { return static_cast<uint32_t>(le(4)); }
    uint64_t u64() { return le(8); }
    double f64() {
        uint64_t b = u64();
        double v;
        std::memcpy(&v, &b, 8);
        return v;
    }

    template <class T>
    void vec(std::vector<T>& v) {
        static_assert(std::is_integral_v<T>);
        uint64_t k = u64();
        if (k > (n_ - pos_) / sizeof(T)) throw FormatError("truncated array");
        v.resize(k);
        for (auto& x : v) x = static_cast<T>(le(sizeof(T)));
    }
    std::string str() {
        uint64_t k = u64();
        need(k);
        std::string s(reinterpret_cast<const char*>(p_ + pos_), k);
        pos_ += k;
        return s;
    }

    size_t pos() const { return pos_; }
    bool done() const { return pos_ == n_; }

private:
    void need(uint64_t k) const {
        if (k > n_ - pos_) throw FormatError("truncated section");
    }
    uint64_t le(int k) {
        need(k);
        uint64_t v = 0;
        for (int i = 0; i < k; ++i) v |= static_cast<uint64_t>(p_[pos_ + i]) << (8 * i);
        pos_ += k;
        return v;
    }
    const uint8_t* p_;
    size_t n_;
    size_t pos_ = 0;
};

}  // namespace ubwt
