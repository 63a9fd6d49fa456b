#include "qrank/field.hpp"

namespace qrank {

bool is_prime(u32 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field::Field(u32 p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (p > (1u << 31)) throw std::invalid_argument("prime too large for single-word arithmetic");
}

u32 Field::pow(u32 a, u64 e) const {
    u64 r = 1 % p_, b = a % p_;
    while (e) {
        if (e & 1) r = r * b % p_;
        b = b * b % p_;
        e >>= 1;
    }
    return static_cast<u32>(r);
}

u32 Field::inv(u32 a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero in GF(p)");
    // extended Euclid
    i64 t = 0, nt = 1, r = p_, nr = a;
    while (nr) {
        i64 q = r / nr;
        i64 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<u32>(t);
}

}  // namespace qrank
