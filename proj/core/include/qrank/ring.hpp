#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qrank/poly.hpp"
#include "qrank/rank.hpp"
#include "qrank/rep.hpp"

namespace qrank {

struct DecomposeOptions {
    std::size_t guard = 512;    // total dimension
    std::size_t rounds = 8;     // random endomorphisms per piece before giving up on a split
    std::size_t max_depth = 64;
};

// Indecomposable summand U of V with V_x -> U_x and U_x -> V_x per vertex.
struct Summand {
    Rep rep;
    std::vector<Matrix> incl;
    std::vector<Matrix> proj;
    // End(U)/rad End(U) = GF(p^k). certified is false when p <= dim U and the trace form
    // could not be used; then locality rests on the random rounds alone.
    std::size_t residue_degree = 1;
    bool certified = true;
};

struct KrullSchmidt {
    std::vector<Summand> summands;
    // incl o proj for each summand.
    std::vector<RepMorphism> idempotents() const;
};

// Throws std::length_error above the guard and std::runtime_error when no decision is reached.
KrullSchmidt krull_schmidt(const Rep& v, u64 seed, const DecomposeOptions& opt = {});
// e^2 = e, sum of e = id, e_i e_j = 0, every e a morphism, dims add up, and each summand
// rep equals proj V incl.
bool verify_certificate(const Rep& v, const KrullSchmidt& ks, std::string* why = nullptr);

// For indecomposable u and w: an isomorphism, or nothing. Random elements of Hom(u, w) are
// tried first; otherwise u ~ w iff some g_j f_i on basis elements is not nilpotent.
std::optional<RepMorphism> indecomposable_isomorphism(const Rep& u, const Rep& w, Rng& rng,
                                                      std::size_t trials = 8);
bool is_isomorphism(const Rep& u, const Rep& w, const RepMorphism& f);

// FNV digest of the field, dims and matrices.
u64 digest(const Rep& v);

struct IndecLabel {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> ranks;  // rank vector in Lattices::all_elements order
    std::size_t tie = 0;
    std::string key() const;
};

// Table of isomorphism classes of indecomposables; lookup-or-insert is serialized.
class Interner {
public:
    explicit Interner(const Lattices& l) : l_(l) {}
    std::size_t intern(const Rep& u, Rng& rng);
    const IndecLabel& label(std::size_t id) const;
    const Rep& witness(std::size_t id) const;
    std::size_t size() const;

private:
    struct Entry {
        IndecLabel label;
        Rep witness;
    };
    const Lattices& l_;
    mutable std::mutex mu_;
    std::deque<Entry> entries_;
    std::map<std::string, std::vector<std::size_t>> buckets_;
};

// Element of R(Q): label id -> coefficient, zero coefficients never stored.
struct RingElement {
    std::map<std::size_t, i64> terms;
    bool is_zero() const { return terms.empty(); }
    bool operator==(const RingElement&) const = default;
    RingElement& add(std::size_t id, i64 c);
};
RingElement operator+(const RingElement& a, const RingElement& b);
RingElement operator-(const RingElement& a, const RingElement& b);
RingElement operator*(i64 c, const RingElement& a);

struct Decomposition {
    std::vector<std::pair<std::size_t, std::size_t>> terms;  // (label, multiplicity), sorted by label key
    KrullSchmidt cert;
};

class Ring {
public:
    Ring(const Lattices& l, u64 seed = 0, Field f = Field(), DecomposeOptions opt = {});
    Ring(const Ring&) = delete;
    Ring& operator=(const Ring&) = delete;

    const Lattices& lattices() const { return l_; }
    const Field& field() const { return f_; }
    u64 seed() const { return seed_; }
    Interner& interner() const { return interner_; }
    const IndecLabel& label(std::size_t id) const { return interner_.label(id); }
    const Rep& witness(std::size_t id) const { return interner_.witness(id); }

    // Seeded by the ring seed and the digest of v, so results do not depend on call order.
    Decomposition decompose(const Rep& v) const;
    RingElement element(const Rep& v) const;
    RingElement basis(std::size_t id) const;
    std::size_t label_of_indecomposable(const Rep& u) const;

    RingElement mul(const RingElement& a, const RingElement& b) const;
    RingElement pow(const RingElement& a, std::size_t k) const;
    // Drops labels whose support misses the root.
    RingElement project_root(const RingElement& a) const;
    bool root_supported(std::size_t id) const;
    // Rank vector extended linearly.
    std::vector<i64> ranks(const RingElement& a) const;
    std::string format(const RingElement& a) const;

    // [X_M], interned once.
    std::size_t reduced_label(const LatticeElement& m) const;

private:
    const Lattices& l_;
    u64 seed_;
    Field f_;
    DecomposeOptions opt_;
    mutable Interner interner_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<std::size_t, std::size_t>, RingElement> products_;
    mutable std::map<LatticeElement, std::size_t> reduced_;
};

// Identity representation of a connected vertex set, zero elsewhere.
Rep subquiver_identity(const RootedTree& t, const Bits& vertices, Field f = Field());

// Connected subquivers with their inclusion order and the idempotents e_P.
class SupportAlgebra {
public:
    explicit SupportAlgebra(const Ring& r);
    std::size_t size() const { return subs_.size(); }
    const Bits& subquiver(std::size_t i) const { return subs_[i]; }
    const Poset& order() const { return order_; }
    RingElement identity(std::size_t i) const;  // [id_P]
    RingElement idempotent(std::size_t i) const;  // e_P

private:
    const Ring& r_;
    std::vector<Bits> subs_;
    Poset order_;
    std::vector<i64> mu_;
};

// f_M = sum over M' <= M of mu(M', M) [X_M'], projected to R_sigma.
RingElement fine_idempotent(const Ring& r, std::size_t m);
// Least M in L(Q, sigma) with X_M V = V in R_sigma, by descent through coatoms from the top.
// Throws std::invalid_argument when V has no summand supported at the root.
std::size_t fine_support(const Ring& r, const Rep& v);
// Maps a ring element along f: Q' -> Q by pulling back witnesses and decomposing over Q'.
RingElement pullback_element(const Ring& src, const Ring& tgt, const QuiverMap& f, const RingElement& a);

struct TensorCheck {
    bool ok = true;
    std::size_t summands = 0;
    std::string failure;
};
// decompose(X_M (x) X_N) = X_{M meet N} plus reduced reps vanishing at the home vertex.
TensorCheck check_tensor_formula(const Ring& r, const LatticeElement& m, const LatticeElement& n);

struct SplitAttempt {
    std::size_t l = 0;
    std::size_t expected = 0;      // r_N(V)^l
    std::size_t multiplicity = 0;  // copies of X_N split off
    std::size_t complement_rank = 0;
    bool ok = false;
};
struct SplittingReport {
    std::size_t n = 0;     // element of L(Q, sigma)
    std::size_t rank = 0;  // r_N(V)
    std::size_t l = 0;     // least working l, 0 if none up to l_max
    std::vector<SplitAttempt> attempts;
};
// Maximal N in L(Q, sigma) with r_N(V) != 0.
std::vector<std::size_t> maximal_nonvanishing(const Lattices& l, const Rep& v);
// Multiplicity of X_N in V^l from the pairing Hom(X_N, V^l) x Hom(V^l, X_N) -> End(X_N) = K.
// The idempotent onto the copies of X_N is built and checked, and the complement's N-rank computed.
SplittingReport verify_splitting_at(const Lattices& l, const Rep& v, std::size_t n, std::size_t l_max,
                                    std::size_t guard = 512);
std::vector<SplittingReport> verify_splitting(const Lattices& l, const Rep& v, std::size_t l_max,
                                              std::size_t guard = 512);

struct NilpotencyReport {
    std::size_t m = 0;  // fsupp V
    bool indecomposable = false;
    bool reduced = false;  // V ~ X_M
    std::size_t rank_m = 0;
    std::size_t k = 0;  // least k with (f_M V)^k = 0, 0 if none up to k_max
};
NilpotencyReport verify_nilpotency(const Ring& r, const Rep& v, std::size_t k_max);

}  // namespace qrank
