#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qrank/field.hpp"

namespace qrank {

// Fixed-size bitset over poset elements.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= u64(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(u64(1) << (i & 63)); }
    std::size_t count() const;
    bool none() const;
    bool subset_of(const Bits& o) const;
    std::vector<std::size_t> elements() const;

    Bits operator|(const Bits& o) const;
    Bits operator&(const Bits& o) const;
    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bits& o) const { return !(*this == o); }
    bool operator<(const Bits& o) const { return w_ < o.w_; }
    std::size_t hash() const;

private:
    std::size_t n_ = 0;
    std::vector<u64> w_;
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return b.hash(); }
};

// Finite poset on 0..n-1. The relation is checked for reflexivity, antisymmetry and
// transitivity on construction.
class Poset {
public:
    Poset() = default;
    // down[j] is the set { i : i <= j }.
    explicit Poset(std::vector<Bits> down);
    static Poset from_leq(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq);
    static Poset chain(std::size_t n);
    static Poset antichain(std::size_t n);
    static Poset boolean(std::size_t k);  // subsets of {0..k-1}, element index = bitmask

    std::size_t size() const { return down_.size(); }
    bool leq(std::size_t a, std::size_t b) const { return down_[b].test(a); }
    bool lt(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
    const Bits& down(std::size_t x) const { return down_[x]; }
    const Bits& up(std::size_t x) const { return up_[x]; }
    const std::vector<std::size_t>& lower_covers(std::size_t x) const { return lower_[x]; }
    const std::vector<std::size_t>& upper_covers(std::size_t x) const { return upper_[x]; }
    // Elements sorted so that every element appears after everything below it.
    const std::vector<std::size_t>& linear_extension() const { return linext_; }

    Poset dual() const;

    // Order ideal generated by a subset.
    Bits ideal_generated(const std::vector<std::size_t>& s) const;
    Bits ideal_generated(const Bits& s) const;
    bool is_ideal(const Bits& s) const;
    // Maximal elements of a subset, ascending.
    std::vector<std::size_t> maximal(const Bits& s) const;
    bool is_antichain(const std::vector<std::size_t>& s) const;

private:
    std::vector<Bits> down_, up_;
    std::vector<std::vector<std::size_t>> lower_, upper_;
    std::vector<std::size_t> linext_;
};

// Finite lattice with materialized meet and join tables.
class Lattice {
public:
    Lattice() = default;
    // Computes meet/join from the order; throws if the poset is not a lattice.
    static Lattice from_poset(Poset p);
    // Uses the supplied tables and checks them against the order.
    static Lattice from_tables(Poset p, std::vector<u32> meet, std::vector<u32> join, bool verify = true);

    const Poset& poset() const { return p_; }
    std::size_t size() const { return p_.size(); }
    bool leq(std::size_t a, std::size_t b) const { return p_.leq(a, b); }
    std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
    std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
    std::size_t bottom() const { return bot_; }
    std::size_t top() const { return top_; }
    bool distributive() const { return distributive_; }
    std::vector<std::size_t> coatoms() const { return p_.lower_covers(top_); }
    std::vector<std::size_t> atoms() const { return p_.upper_covers(bot_); }
    // Checks the distributive law over all triples; result cached in the flag.
    bool check_distributive();

private:
    Poset p_;
    std::vector<u32> meet_, join_;
    std::size_t bot_ = 0, top_ = 0;
    bool distributive_ = false;
};

inline constexpr std::size_t kIdealGuard = 1000000;
inline constexpr std::size_t kTableGuard = 4096;

// Lattice J(P) of order ideals with the ideals themselves; element 0 is the empty ideal,
// enumeration is breadth first by adding one admissible element at a time.
struct IdealLattice {
    Lattice lattice;
    std::vector<Bits> ideals;
    std::unordered_map<Bits, std::size_t, BitsHash> index;
    // Index of an ideal; throws std::out_of_range for non-ideals.
    std::size_t index_of(const Bits& b) const { return index.at(b); }
};

IdealLattice ideals(const Poset& p, std::size_t guard = kIdealGuard);

// Cartesian product; element (i, j) has index i * |b| + j.
Lattice product(const Lattice& a, const Lattice& b);
Lattice one_point_lattice();

// Mobius function as a dense matrix, mu[x * n + y].
std::vector<i64> mobius(const Poset& p);
std::vector<i64> zeta(const Poset& p);
// mu(x, y) for fixed y, all x.
std::vector<i64> mobius_to(const Poset& p, std::size_t y);

// Upper adjoint rho(y) = max { x : lambda(x) <= y } of a join preserving lambda: a -> b.
// Throws std::invalid_argument if lambda is not monotone or does not preserve joins.
std::vector<std::size_t> upper_adjoint(const Lattice& a, const Lattice& b, const std::vector<std::size_t>& lambda);

// Order reversing bijection of a lattice onto itself, if one exists.
std::optional<std::vector<std::size_t>> find_self_duality(const Poset& p);
// Order isomorphism between two posets, if one exists.
std::optional<std::vector<std::size_t>> find_isomorphism(const Poset& a, const Poset& b);

// Graphviz Hasse diagram with smaller elements drawn at the top.
std::string hasse_dot(const Poset& p, const std::function<std::string(std::size_t)>& label,
                      const std::string& name = "hasse");

}  // namespace qrank
