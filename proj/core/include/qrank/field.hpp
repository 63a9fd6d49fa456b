#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace qrank {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u32 kDefaultPrime = 32003;

// Arithmetic in GF(p). Elements are canonical representatives in [0, p).
class Field {
public:
    explicit Field(u32 p = kDefaultPrime);

    u32 p() const { return p_; }

    u32 add(u32 a, u32 b) const {
        u32 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }
    u32 neg(u32 a) const { return a == 0 ? 0 : p_ - a; }
    u32 mul(u32 a, u32 b) const { return static_cast<u32>(static_cast<u64>(a) * b % p_); }
    u32 inv(u32 a) const;
    u32 pow(u32 a, u64 e) const;
    u32 from_int(i64 v) const {
        i64 r = v % static_cast<i64>(p_);
        return static_cast<u32>(r < 0 ? r + p_ : r);
    }
    // Symmetric lift to (-p/2, p/2], used for printing.
    i64 to_signed(u32 a) const { return a > p_ / 2 ? static_cast<i64>(a) - p_ : a; }

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

private:
    u32 p_;
};

bool is_prime(u32 n);

// Seeded generator whose output is identical on every platform.
// std::uniform_int_distribution is implementation defined, so reductions are done by hand.
class Rng {
public:
    explicit Rng(u64 seed = 0) : eng_(seed) {}
    u64 next() { return eng_(); }
    u32 below(u32 n) { return n == 0 ? 0 : static_cast<u32>(eng_() % n); }
    u32 elem(const Field& f) { return below(f.p()); }
    u32 nonzero(const Field& f) { return 1 + below(f.p() - 1); }
    bool coin() { return (eng_() >> 17) & 1u; }
    Rng split(u64 salt) { return Rng(eng_() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

private:
    std::mt19937_64 eng_;
};

}  // namespace qrank
