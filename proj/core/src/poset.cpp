#include "qrank/poset.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qrank {

// ---------------------------------------------------------------- Bits

std::size_t Bits::count() const {
    std::size_t c = 0;
    for (u64 w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool Bits::none() const {
    for (u64 w : w_)
        if (w) return false;
    return true;
}

bool Bits::subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
        if (w_[k] & ~o.w_[k]) return false;
    return true;
}

std::vector<std::size_t> Bits::elements() const {
    std::vector<std::size_t> r;
    for (std::size_t k = 0; k < w_.size(); ++k) {
        u64 w = w_[k];
        while (w) {
            int b = std::countr_zero(w);
            r.push_back(k * 64 + static_cast<std::size_t>(b));
            w &= w - 1;
        }
    }
    return r;
}

Bits Bits::operator|(const Bits& o) const {
    Bits r(*this);
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] |= o.w_[k];
    return r;
}

Bits Bits::operator&(const Bits& o) const {
    Bits r(*this);
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
    return r;
}

std::size_t Bits::hash() const {
    u64 h = 0xcbf29ce484222325ULL ^ n_;
    for (u64 w : w_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------- Poset

Poset::Poset(std::vector<Bits> down) : down_(std::move(down)) {
    const std::size_t n = down_.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (down_[j].size() != n) throw std::invalid_argument("poset: relation has wrong size");
        if (!down_[j].test(j)) throw std::invalid_argument("poset: relation is not reflexive at " + std::to_string(j));
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i : down_[j].elements()) {
            if (i != j && down_[i].test(j))
                throw std::invalid_argument("poset: relation is not antisymmetric at " + std::to_string(i) + "," +
                                            std::to_string(j));
            if (!down_[i].subset_of(down_[j]))
                throw std::invalid_argument("poset: relation is not transitive below " + std::to_string(j));
        }
    up_.assign(n, Bits(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i : down_[j].elements()) up_[i].set(j);
    linext_.resize(n);
    for (std::size_t i = 0; i < n; ++i) linext_[i] = i;
    std::vector<std::size_t> cnt(n);
    for (std::size_t i = 0; i < n; ++i) cnt[i] = down_[i].count();
    std::stable_sort(linext_.begin(), linext_.end(), [&](std::size_t a, std::size_t b) { return cnt[a] < cnt[b]; });
    lower_.assign(n, {});
    upper_.assign(n, {});
    for (std::size_t j = 0; j < n; ++j) {
        Bits strict = down_[j];
        strict.reset(j);
        lower_[j] = maximal(strict);
        for (std::size_t i : lower_[j]) upper_[i].push_back(j);
    }
    for (auto& u : upper_) std::sort(u.begin(), u.end());
}

Poset Poset::from_leq(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq) {
    std::vector<Bits> down(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (leq(i, j)) down[j].set(i);
    return Poset(std::move(down));
}

Poset Poset::chain(std::size_t n) {
    return from_leq(n, [](std::size_t a, std::size_t b) { return a <= b; });
}

Poset Poset::antichain(std::size_t n) {
    return from_leq(n, [](std::size_t a, std::size_t b) { return a == b; });
}

Poset Poset::boolean(std::size_t k) {
    return from_leq(std::size_t(1) << k, [](std::size_t a, std::size_t b) { return (a & ~b) == 0; });
}

Poset Poset::dual() const {
    return Poset(up_);
}

Bits Poset::ideal_generated(const std::vector<std::size_t>& s) const {
    Bits r(size());
    for (auto x : s) r = r | down_.at(x);
    return r;
}

Bits Poset::ideal_generated(const Bits& s) const { return ideal_generated(s.elements()); }

bool Poset::is_ideal(const Bits& s) const {
    for (auto x : s.elements())
        if (!down_[x].subset_of(s)) return false;
    return true;
}

std::vector<std::size_t> Poset::maximal(const Bits& s) const {
    std::vector<std::size_t> r;
    for (auto x : s.elements())
        if ((up_[x] & s).count() == 1) r.push_back(x);
    return r;
}

bool Poset::is_antichain(const std::vector<std::size_t>& s) const {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (i != j && leq(s[i], s[j])) return false;
    return true;
}

// ---------------------------------------------------------------- Lattice

namespace {

std::size_t find_bottom(const Poset& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.up(i).count() == p.size()) return i;
    throw std::invalid_argument("lattice: no least element");
}

std::size_t find_top(const Poset& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.down(i).count() == p.size()) return i;
    throw std::invalid_argument("lattice: no greatest element");
}

}  // namespace

Lattice Lattice::from_poset(Poset p) {
    const std::size_t n = p.size();
    if (n == 0) throw std::invalid_argument("lattice: empty poset");
    if (n > kTableGuard) throw std::length_error("lattice: " + std::to_string(n) + " elements exceed the table guard");
    std::vector<u32> meet(n * n), join(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            auto lo = p.maximal(p.down(a) & p.down(b));
            if (lo.size() != 1) throw std::invalid_argument("lattice: no meet for " + std::to_string(a) + "," + std::to_string(b));
            meet[a * n + b] = meet[b * n + a] = static_cast<u32>(lo[0]);
        }
    Poset d = p.dual();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            auto hi = d.maximal(d.down(a) & d.down(b));
            if (hi.size() != 1) throw std::invalid_argument("lattice: no join for " + std::to_string(a) + "," + std::to_string(b));
            join[a * n + b] = join[b * n + a] = static_cast<u32>(hi[0]);
        }
    return from_tables(std::move(p), std::move(meet), std::move(join), false);
}

Lattice Lattice::from_tables(Poset p, std::vector<u32> meet, std::vector<u32> join, bool verify) {
    const std::size_t n = p.size();
    if (meet.size() != n * n || join.size() != n * n) throw std::invalid_argument("lattice: table size mismatch");
    if (verify) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                std::size_t m = meet[a * n + b], j = join[a * n + b];
                if (!p.leq(m, a) || !p.leq(m, b) || !(p.down(a) & p.down(b)).subset_of(p.down(m)))
                    throw std::invalid_argument("lattice: meet table is not the greatest lower bound");
                if (!p.leq(a, j) || !p.leq(b, j) || !(p.up(a) & p.up(b)).subset_of(p.up(j)))
                    throw std::invalid_argument("lattice: join table is not the least upper bound");
            }
    }
    Lattice l;
    l.bot_ = find_bottom(p);
    l.top_ = find_top(p);
    l.p_ = std::move(p);
    l.meet_ = std::move(meet);
    l.join_ = std::move(join);
    return l;
}

bool Lattice::check_distributive() {
    const std::size_t n = size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = y; z < n; ++z)
                if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) return distributive_ = false;
    return distributive_ = true;
}

IdealLattice ideals(const Poset& p, std::size_t guard) {
    const std::size_t n = p.size();
    IdealLattice out;
    std::deque<std::size_t> queue;
    Bits empty(n);
    out.ideals.push_back(empty);
    out.index.emplace(empty, 0);
    queue.push_back(0);
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        for (std::size_t e = 0; e < n; ++e) {
            const Bits& I = out.ideals[cur];
            if (I.test(e)) continue;
            Bits below = p.down(e);
            below.reset(e);
            if (!below.subset_of(I)) continue;
            Bits J = I;
            J.set(e);
            if (out.index.count(J)) continue;
            if (out.ideals.size() >= guard)
                throw std::length_error("ideal lattice exceeds guard of " + std::to_string(guard) + " elements");
            out.index.emplace(J, out.ideals.size());
            out.ideals.push_back(J);
            queue.push_back(out.ideals.size() - 1);
        }
    }
    const std::size_t m = out.ideals.size();
    if (m > kTableGuard)
        throw std::length_error("ideal lattice has " + std::to_string(m) + " elements, above the table guard");
    std::vector<Bits> down(m, Bits(m));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (out.ideals[i].subset_of(out.ideals[j])) down[j].set(i);
    std::vector<u32> meet(m * m), join(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            meet[a * m + b] = meet[b * m + a] = static_cast<u32>(out.index.at(out.ideals[a] & out.ideals[b]));
            join[a * m + b] = join[b * m + a] = static_cast<u32>(out.index.at(out.ideals[a] | out.ideals[b]));
        }
    out.lattice = Lattice::from_tables(Poset(std::move(down)), std::move(meet), std::move(join), m <= 512);
    if (m <= 512) {
        if (!out.lattice.check_distributive()) throw std::logic_error("ideal lattice failed the distributive law");
    }
    return out;
}

Lattice product(const Lattice& a, const Lattice& b) {
    const std::size_t na = a.size(), nb = b.size(), n = na * nb;
    if (n > kTableGuard) throw std::length_error("product lattice exceeds the table guard");
    std::vector<Bits> down(n, Bits(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (a.leq(x / nb, y / nb) && b.leq(x % nb, y % nb)) down[y].set(x);
    std::vector<u32> meet(n * n), join(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            meet[x * n + y] = static_cast<u32>(a.meet(x / nb, y / nb) * nb + b.meet(x % nb, y % nb));
            join[x * n + y] = static_cast<u32>(a.join(x / nb, y / nb) * nb + b.join(x % nb, y % nb));
        }
    Lattice l = Lattice::from_tables(Poset(std::move(down)), std::move(meet), std::move(join), n <= 512);
    if (n <= 512) l.check_distributive();
    return l;
}

Lattice one_point_lattice() {
    std::vector<Bits> down(1, Bits(1));
    down[0].set(0);
    Lattice l = Lattice::from_tables(Poset(std::move(down)), {0}, {0});
    l.check_distributive();
    return l;
}

std::vector<i64> mobius(const Poset& p) {
    const std::size_t n = p.size();
    std::vector<i64> mu(n * n, 0);
    const auto& ext = p.linear_extension();
    for (std::size_t x = 0; x < n; ++x) {
        mu[x * n + x] = 1;
        for (std::size_t y : ext) {
            if (y == x || !p.leq(x, y)) continue;
            i64 s = 0;
            for (std::size_t z : (p.up(x) & p.down(y)).elements())
                if (z != y) s += mu[x * n + z];
            mu[x * n + y] = -s;
        }
    }
    return mu;
}

std::vector<i64> zeta(const Poset& p) {
    const std::size_t n = p.size();
    std::vector<i64> z(n * n, 0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) z[x * n + y] = p.leq(x, y) ? 1 : 0;
    return z;
}

std::vector<i64> mobius_to(const Poset& p, std::size_t y) {
    const std::size_t n = p.size();
    std::vector<i64> mu(n, 0);
    mu[y] = 1;
    const auto& ext = p.linear_extension();
    for (std::size_t k = ext.size(); k-- > 0;) {
        std::size_t x = ext[k];
        if (x == y || !p.leq(x, y)) continue;
        i64 s = 0;
        for (std::size_t z : (p.up(x) & p.down(y)).elements())
            if (z != x) s += mu[z];
        mu[x] = -s;
    }
    return mu;
}

std::vector<std::size_t> upper_adjoint(const Lattice& a, const Lattice& b, const std::vector<std::size_t>& lambda) {
    const std::size_t na = a.size(), nb = b.size();
    if (lambda.size() != na) throw std::invalid_argument("adjoint: map has wrong domain size");
    for (auto v : lambda)
        if (v >= nb) throw std::invalid_argument("adjoint: map value out of range");
    if (lambda[a.bottom()] != b.bottom()) throw std::invalid_argument("adjoint: map does not preserve the least element");
    for (std::size_t x = 0; x < na; ++x)
        for (std::size_t y = 0; y < na; ++y) {
            if (a.leq(x, y) && !b.leq(lambda[x], lambda[y])) throw std::invalid_argument("adjoint: map is not monotone");
            if (lambda[a.join(x, y)] != b.join(lambda[x], lambda[y]))
                throw std::invalid_argument("adjoint: map does not preserve joins");
        }
    std::vector<std::size_t> rho(nb);
    for (std::size_t y = 0; y < nb; ++y) {
        std::size_t r = a.bottom();
        for (std::size_t x = 0; x < na; ++x)
            if (b.leq(lambda[x], y)) r = a.join(r, x);
        rho[y] = r;
    }
    return rho;
}

namespace {

struct Invariant {
    std::size_t height, depth, nlow, nup, ndown, nup_all;
    bool operator==(const Invariant&) const = default;
};

std::vector<Invariant> invariants(const Poset& p) {
    const std::size_t n = p.size();
    std::vector<std::size_t> height(n, 0), depth(n, 0);
    const auto& ext = p.linear_extension();
    for (std::size_t x : ext)
        for (std::size_t y : p.lower_covers(x)) height[x] = std::max(height[x], height[y] + 1);
    for (std::size_t k = ext.size(); k-- > 0;) {
        std::size_t x = ext[k];
        for (std::size_t y : p.upper_covers(x)) depth[x] = std::max(depth[x], depth[y] + 1);
    }
    std::vector<Invariant> inv(n);
    for (std::size_t x = 0; x < n; ++x)
        inv[x] = {height[x], depth[x], p.lower_covers(x).size(), p.upper_covers(x).size(), p.down(x).count(),
                  p.up(x).count()};
    return inv;
}

bool extend(const Poset& a, const Poset& b, const std::vector<Invariant>& ia, const std::vector<Invariant>& ib,
            const std::vector<std::size_t>& order, std::size_t k, std::vector<std::size_t>& phi,
            std::vector<char>& used, std::size_t& budget) {
    if (k == order.size()) return true;
    if (budget == 0) return false;
    --budget;
    std::size_t x = order[k];
    for (std::size_t y = 0; y < b.size(); ++y) {
        if (used[y] || !(ia[x] == ib[y])) continue;
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j) {
            std::size_t u = order[j];
            if (a.leq(u, x) != b.leq(phi[u], y) || a.leq(x, u) != b.leq(y, phi[u])) ok = false;
        }
        if (!ok) continue;
        phi[x] = y;
        used[y] = 1;
        if (extend(a, b, ia, ib, order, k + 1, phi, used, budget)) return true;
        used[y] = 0;
    }
    return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> find_isomorphism(const Poset& a, const Poset& b) {
    if (a.size() != b.size()) return std::nullopt;
    auto ia = invariants(a), ib = invariants(b);
    {
        auto key = [](const Invariant& v) {
            return std::tuple(v.height, v.depth, v.nlow, v.nup, v.ndown, v.nup_all);
        };
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>> ka, kb;
        for (auto& v : ia) ka.push_back(key(v));
        for (auto& v : ib) kb.push_back(key(v));
        std::sort(ka.begin(), ka.end());
        std::sort(kb.begin(), kb.end());
        if (ka != kb) return std::nullopt;
    }
    std::vector<std::size_t> order = a.linear_extension();
    std::vector<std::size_t> phi(a.size(), 0);
    std::vector<char> used(b.size(), 0);
    std::size_t budget = 50'000'000;
    if (extend(a, b, ia, ib, order, 0, phi, used, budget)) return phi;
    return std::nullopt;
}

std::optional<std::vector<std::size_t>> find_self_duality(const Poset& p) { return find_isomorphism(p, p.dual()); }

std::string hasse_dot(const Poset& p, const std::function<std::string(std::size_t)>& label, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    os << "  rankdir=TB;\n  node [shape=plaintext];\n  edge [arrowhead=none];\n";
    for (std::size_t x = 0; x < p.size(); ++x) {
        std::string l = label(x);
        std::string esc;
        for (char c : l) {
            if (c == '"' || c == '\\') esc += '\\';
            esc += c;
        }
        os << "  n" << x << " [label=\"" << esc << "\"];\n";
    }
    for (std::size_t x = 0; x < p.size(); ++x)
        for (std::size_t y : p.upper_covers(x)) os << "  n" << x << " -> n" << y << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace qrank
