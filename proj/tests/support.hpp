#pragma once

#include <vector>

#include "qrank/matrix.hpp"
#include "qrank/rep.hpp"

namespace qrank::testing {

// Plain Gaussian elimination on a copy of the entries, kept apart from Matrix::rank.
inline std::size_t naive_rank(const Matrix& m) {
    const u64 p = m.field().p();
    std::vector<std::vector<u64>> a(m.rows(), std::vector<u64>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
    auto inv = [p](u64 x) {
        u64 r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && a[piv][c] == 0) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[piv], a[r]);
        u64 iv = inv(a[r][c]);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            u64 t = a[i][c] * iv % p;
            for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = (a[i][j] + p * p - t * a[r][j]) % p;
        }
        ++r;
    }
    return r;
}

// Every vector of GF(p)^n, p small.
inline std::vector<std::vector<u32>> all_vectors(u32 p, std::size_t n) {
    std::vector<std::vector<u32>> out{{}};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::vector<u32>> next;
        for (const auto& v : out)
            for (u32 c = 0; c < p; ++c) {
                auto w = v;
                w.push_back(c);
                next.push_back(std::move(w));
            }
        out = std::move(next);
    }
    return out;
}

inline std::vector<u32> mat_vec(const Matrix& m, const std::vector<u32>& v) {
    std::vector<u32> out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] = m.field().add(out[i], m.field().mul(m(i, j), v[j]));
    return out;
}

inline std::vector<std::size_t> random_dims(std::size_t n, std::size_t max, Rng& rng) {
    std::vector<std::size_t> d(n);
    for (auto& x : d) x = rng.below(static_cast<u32>(max + 1));
    return d;
}

}  // namespace qrank::testing
