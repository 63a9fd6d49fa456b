#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qrank/poset.hpp"
#include "qrank/quiver.hpp"
#include "qrank/rep.hpp"

namespace qrank {

struct LatticeElement {
    std::size_t vertex = 0;
    std::size_t index = 0;
    bool operator==(const LatticeElement&) const = default;
    auto operator<=>(const LatticeElement&) const = default;
};

struct FactorData {
    Poset poset;  // L(Q, child)
    IdealLattice J;
};

// Factor data keyed by the ordered shape of the child subtree; shared between lattices.
class FactorCache {
public:
    std::shared_ptr<const FactorData> get(const std::string& key,
                                          const std::function<std::shared_ptr<const FactorData>()>& build);
    std::size_t size() const;

private:
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<const FactorData>> m_;
};

// J(L(Q, tau)) for one arrow alpha: tau -> x.
struct JFactor {
    std::size_t arrow = 0;
    std::size_t child = 0;
    std::shared_ptr<const FactorData> data;
    const Poset& poset() const { return data->poset; }
    const IdealLattice& J() const { return data->J; }
};

// L(Q, x) as the product of the J(L(Q, tau_i)) over the arrows into x. Elements are mixed
// radix indices with the first factor most significant; 0 is the bottom. Order, meet and join
// are computed componentwise, so no table over the whole product is stored.
class VertexLattice {
public:
    VertexLattice() = default;
    VertexLattice(std::size_t vertex, std::vector<JFactor> factors);

    std::size_t vertex() const { return vertex_; }
    std::size_t size() const { return size_; }
    std::size_t factor_count() const { return factors_.size(); }
    const JFactor& factor(std::size_t i) const { return factors_[i]; }

    std::size_t component(std::size_t e, std::size_t i) const { return e / stride_[i] % factors_[i].J().ideals.size(); }
    std::vector<std::size_t> components(std::size_t e) const;
    std::size_t from_components(const std::vector<std::size_t>& c) const;
    // Ideal of component i as a set of elements of L(Q, child_i).
    const Bits& ideal(std::size_t e, std::size_t i) const { return factors_[i].J().ideals[component(e, i)]; }
    // Maximal elements of component i, ascending.
    std::vector<std::size_t> maximal(std::size_t e, std::size_t i) const;

    std::size_t bottom() const { return 0; }
    std::size_t top() const { return size_ - 1; }
    bool leq(std::size_t a, std::size_t b) const;
    std::size_t meet(std::size_t a, std::size_t b) const;
    std::size_t join(std::size_t a, std::size_t b) const;
    std::vector<std::size_t> lower_covers(std::size_t e) const;
    std::vector<std::size_t> upper_covers(std::size_t e) const;
    std::vector<std::size_t> coatoms() const { return lower_covers(top()); }

    // mu(a, b), from the antichain formula for ideal lattices applied in each factor.
    i64 mobius(std::size_t a, std::size_t b) const;
    // Every a <= e with mu(a, e) != 0, together with mu(a, e).
    std::vector<std::pair<std::size_t, i64>> mobius_below(std::size_t e) const;

    // Whole order as a Poset; throws above the guard.
    Poset poset(std::size_t guard = 8192) const;
    // Materialized lattice with tables; throws above kTableGuard.
    Lattice materialize() const;

private:
    std::size_t vertex_ = 0;
    std::size_t size_ = 1;
    std::vector<JFactor> factors_;
    std::vector<std::size_t> stride_;
};

struct ReducedQuiver;

// All lattices L(Q, x) of a rooted tree, with lazily built reduced quivers and fingerprints.
class Lattices {
public:
    // Without with_root the root lattice is left empty; only the lattices below it are built.
    explicit Lattices(RootedTree t, std::size_t guard = kIdealGuard, std::shared_ptr<FactorCache> cache = nullptr,
                      bool with_root = true);
    Lattices(const Lattices&) = delete;
    Lattices& operator=(const Lattices&) = delete;

    const RootedTree& tree() const { return t_; }
    const std::shared_ptr<FactorCache>& factor_cache() const { return cache_; }
    const VertexLattice& at(std::size_t x) const { return v_[x]; }
    const VertexLattice& root_lattice() const { return v_[t_.root()]; }
    bool has_root() const { return with_root_; }
    // Sum of |L(Q, x)| over all vertices.
    std::size_t ring_rank() const;
    std::vector<LatticeElement> all_elements() const;

    // Nested antichain encoding; equal elements of equal lattices give equal strings.
    std::string fingerprint(std::size_t x, std::size_t e) const;
    std::string fingerprint(const LatticeElement& m) const { return fingerprint(m.vertex, m.index); }

    std::shared_ptr<const ReducedQuiver> reduced(std::size_t x, std::size_t e) const;
    std::shared_ptr<const ReducedQuiver> reduced(const LatticeElement& m) const { return reduced(m.vertex, m.index); }
    // Reduced quiver of the element of L(Q, x) whose ideal in the factor of the i-th arrow into x
    // is generated by maxima[i]; not memoized, and m.index is npos.
    std::shared_ptr<const ReducedQuiver> reduced_from(std::size_t x,
                                                      const std::vector<std::vector<std::size_t>>& maxima) const;

    // Element of L(Q, x) given one ideal per factor, generated from the listed elements.
    std::size_t generate(std::size_t x, const std::vector<std::vector<std::size_t>>& gens) const;

private:
    std::shared_ptr<ReducedQuiver> build_reduced(std::size_t x, const std::string& tag,
                                                 const std::vector<std::vector<std::size_t>>& maxima) const;

    RootedTree t_;
    bool with_root_ = true;
    std::shared_ptr<FactorCache> cache_;
    std::vector<VertexLattice> v_;
    mutable std::mutex mu_;
    mutable std::map<LatticeElement, std::string> fp_;
    mutable std::map<LatticeElement, std::shared_ptr<const ReducedQuiver>> red_;
};

// Reduced quiver Q_M over Q with structure map c_M.
struct ReducedQuiver {
    struct Branch {
        std::size_t factor;   // factor of the home lattice, i.e. the arrow alpha_i into x
        std::size_t element;  // maximal element S of the factor's ideal
        std::size_t offset;   // index of the branch root in Q_M
        std::size_t arrow;    // arrow of Q_M from the branch root to the root
        std::size_t arrow_offset;  // index in Q_M of the first arrow copied from the branch
        std::shared_ptr<const ReducedQuiver> sub;
    };
    LatticeElement m;
    OverQuiver over;
    std::vector<Branch> branches;
    // For each vertex v of Q_M, the element of L(Q, c_M(v)) whose reduced quiver is Q_M restricted to v.
    std::vector<std::size_t> elem_of;
};

// X_M: pushforward of the identity representation of Q_M along c_M.
Rep reduced_rep(const Lattices& l, const LatticeElement& m, Field f = Field());

// Rank space rank_M V inside V_x by pulling back along c_M and taking the global rank.
Subspace rank_space_pullback(const Lattices& l, const Rep& v, const LatticeElement& m);
// Rank space by the intersection recursion over the maximal elements of M.
Subspace rank_space_recursive(const Lattices& l, const Rep& v, const LatticeElement& m);
// Both, compared; throws std::logic_error on mismatch.
Subspace rank_space(const Lattices& l, const Rep& v, const LatticeElement& m);

// r_M(V) for every M in L_Q, indexed [vertex][element].
struct RankVector {
    std::vector<std::vector<std::size_t>> r;
    std::size_t at(const LatticeElement& m) const { return r[m.vertex][m.index]; }
    bool operator==(const RankVector&) const = default;
};
// Uses the recursion for all elements; with cross_check each element is recomputed by pullback.
RankVector rank_vector(const Lattices& l, const Rep& v, bool cross_check = false);
RankVector rank_vector_rational(const Lattices& l, const QRep& v);

struct StableHom {
    std::size_t hom_dim = 0;
    std::size_t vanishing_dim = 0;  // morphisms that are zero at the home vertex
    std::size_t stable_dim = 0;
    std::size_t quiver_maps = 0;    // morphisms Q_M -> Q_N over Q
};
StableHom stable_hom(const Lattices& l, std::size_t x, std::size_t m, std::size_t n, Field f = Field());

// Element M with Q' rank equivalent to Q_M; home vertex is the image of the root of Q'.
LatticeElement reduce_element(const Lattices& l, const OverQuiver& q);

struct Reduction {
    LatticeElement m;
    QuiverMap g;  // Q_M -> Q'
    QuiverMap h;  // Q' -> Q_M
};
// Reduction with the maps; throws std::logic_error if h g != id or a map is not over Q.
Reduction reduce_over_quiver(const Lattices& l, const OverQuiver& q);

// Element of L(Q_M, root) as one ideal of L(Q_M, u) per branch root u, in branch order.
using IdealTuple = std::vector<Bits>;

// pi_* : L(Q_M, root) -> L(Q, root) and its upper adjoint, for M in L(Q, root). The root lattice
// of Q_M can be far too large to enumerate, so its elements are handled as ideal tuples.
class ReducedAdjunction {
public:
    ReducedAdjunction(const Lattices& l, std::size_t m);

    const Lattices& base() const { return l_; }
    const Lattices& reduced_lattices() const { return *lm_; }
    const ReducedQuiver& reduced_quiver() const { return *rq_; }
    std::size_t m() const { return m_; }

    std::size_t branch_count() const { return branch_.size(); }
    // L(Q_M, u) for the root u of branch j.
    const Poset& branch_poset(std::size_t j) const { return *branch_[j]; }

    IdealTuple bottom() const;
    IdealTuple top() const;
    bool leq(const IdealTuple& a, const IdealTuple& b) const;
    // Principal ideal of t in branch j, empty elsewhere.
    IdealTuple principal(std::size_t j, std::size_t t) const;
    // Coatom j: everything except the top of branch j.
    IdealTuple coatom(std::size_t j) const;

    std::size_t lower(const IdealTuple& a) const;
    IdealTuple upper(std::size_t n) const;
    // pi_* through the reduced quiver of A composed with c_M.
    std::size_t lower_explicit(const IdealTuple& a) const;

private:
    const Lattices& l_;
    std::size_t m_;
    std::shared_ptr<const ReducedQuiver> rq_;
    std::unique_ptr<Lattices> lm_;
    std::vector<std::shared_ptr<const Poset>> branch_;
    std::vector<std::size_t> slot_;  // position of the branch arrow among the arrows into the root of Q_M
    // image in L(Q, c_M(v)) of each element of L(Q_M, v), for every non-root v
    std::vector<std::vector<std::size_t>> pi_;
};

struct AdjunctionLimits {
    std::size_t pair_limit = 20000000;  // all pairs (A, N) when |L(Q_M)| |L(Q)| is at most this
    std::size_t explicit_limit = 256;   // explicit pi_* on every A up to this size
    std::size_t samples = 64;
};

struct AdjunctionCheck {
    bool ok = true;
    bool exhaustive = false;       // all pairs enumerated; otherwise join-irreducible elements
    std::size_t reduced_size = 0;  // |L(Q_M, root)| when enumerated
    std::size_t branch_elements = 0;
    std::size_t pairs = 0;
    std::size_t join_checked = 0;
    std::size_t explicit_checked = 0;
    std::string failure;
};
// Galois condition, pi_*(1) = M, pi^*(M) = 1, pi_* pi^* N = M meet N and the coatom bijection.
// The Galois condition runs over all pairs when the limit allows. Otherwise it runs over every
// join-irreducible A (a principal ideal in one branch), and pi_* is checked on a sample to send
// the decomposition of A into join-irreducibles to a join, which together give the same statement.
// pi_* is also compared with the explicit reduction.
AdjunctionCheck check_adjunction(const ReducedAdjunction& adj, const AdjunctionLimits& lim, Rng& rng);

}  // namespace qrank
