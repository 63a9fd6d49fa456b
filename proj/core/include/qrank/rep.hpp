#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qrank/matrix.hpp"
#include "qrank/quiver.hpp"
#include "qrank/rational.hpp"

namespace qrank {

// Representation: a vector space K^{dim x} per vertex and a dim(ha) x dim(ta) matrix per arrow.
class Rep {
public:
    Rep() = default;
    // Throws std::invalid_argument on any shape mismatch.
    Rep(std::shared_ptr<const Quiver> q, Field f, std::vector<std::size_t> dims, std::vector<Matrix> mats);

    const Quiver& quiver() const { return *q_; }
    const std::shared_ptr<const Quiver>& quiver_ptr() const { return q_; }
    const Field& field() const { return f_; }
    std::size_t dim(std::size_t v) const { return dims_[v]; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    const Matrix& mat(std::size_t a) const { return mats_[a]; }
    const std::vector<Matrix>& mats() const { return mats_; }
    std::size_t total_dim() const;
    bool is_zero() const { return total_dim() == 0; }

    // Same quiver shape, dims and matrices.
    bool operator==(const Rep& o) const;

private:
    std::shared_ptr<const Quiver> q_;
    Field f_{};
    std::vector<std::size_t> dims_;
    std::vector<Matrix> mats_;
};

// Family of per-vertex maps phi_x : V_x -> W_x.
struct RepMorphism {
    std::vector<Matrix> maps;
};

bool is_morphism(const Rep& v, const Rep& w, const RepMorphism& f);
RepMorphism identity_morphism(const Rep& v);
RepMorphism compose(const RepMorphism& g, const RepMorphism& f);
RepMorphism operator+(const RepMorphism& a, const RepMorphism& b);
RepMorphism scaled(const RepMorphism& a, u32 c);
bool is_zero(const RepMorphism& f);

// Basis of Hom_Q(V, W) as the kernel of (phi_x) -> (W_a phi_ta - phi_ha V_a).
std::vector<RepMorphism> hom_space(const Rep& v, const Rep& w);
std::size_t hom_dim(const Rep& v, const Rep& w);
// Sum of c_i * basis_i.
RepMorphism combine(const std::vector<RepMorphism>& basis, const std::vector<u32>& coeffs, const Rep& v,
                    const Rep& w);

Rep zero_rep(std::shared_ptr<const Quiver> q, Field f);
Rep identity_rep(std::shared_ptr<const Quiver> q, Field f);
Rep simple_rep(std::shared_ptr<const Quiver> q, Field f, std::size_t v);
Rep random_rep(std::shared_ptr<const Quiver> q, Field f, const std::vector<std::size_t>& dims, Rng& rng);

Rep dsum(const Rep& v, const Rep& w);
Rep dsum(const std::vector<Rep>& parts);
// Kronecker product, left factor major.
Rep tensor(const Rep& v, const Rep& w);

// f : src -> tgt. Pullback of W on tgt, pushforward of V on src (fibers ordered by vertex index).
Rep pullback(std::shared_ptr<const Quiver> src, const QuiverMap& f, const Rep& w);
Rep pushforward(std::shared_ptr<const Quiver> tgt, const QuiverMap& f, const Rep& v);
// Restriction to an embedded subquiver.
Rep restrict(const Rep& v, const Embedded& p);

struct Support {
    Bits vertices;
    Bits arrows;
};
Support support(const Rep& v);

// One subspace of V_x per vertex.
struct SubRep {
    std::vector<Subspace> spaces;
    std::vector<std::size_t> dims() const;
    bool operator==(const SubRep& o) const { return spaces == o.spaces; }
};

bool is_subrep(const Rep& v, const SubRep& s);
// Subrepresentation whose arrows all map onto the head subspace.
bool is_epimorphic(const Rep& v, const SubRep& s);
// Subrepresentation as a representation in the canonical bases of its subspaces.
Rep as_rep(const Rep& v, const SubRep& s);

// Composite V_{x -> y} along the unique path; requires t.reaches(x, y).
Matrix path_map(const RootedTree& t, const Rep& v, std::size_t x, std::size_t y);

// Maximal epimorphic subrepresentation, by the extension/gluing recursion.
SubRep theta(const RootedTree& t, const Rep& v);
// Same object as the greatest fixed point of T_h &= V_a(T_t), T_t &= V_a^{-1}(T_h).
SubRep theta_fixpoint(const Rep& v);

// Maximal monomorphic quotient, Delta(V)_x = im V_{x -> root}, with the projection V -> Delta(V).
struct Quotient {
    Rep rep;
    RepMorphism proj;
};
Quotient delta(const RootedTree& t, const Rep& v);

// rank_Q V inside V_root. Both the intersection recursion and theta at the root are computed
// and compared; a mismatch throws std::logic_error.
Subspace global_rank(const RootedTree& t, const Rep& v);
Subspace global_rank_recursive(const RootedTree& t, const Rep& v);

// Integer representation over Q, used to cross-check ranks independently of p.
struct QRep {
    std::shared_ptr<const Quiver> quiver;
    std::vector<std::size_t> dims;
    std::vector<QMatrix> mats;
};
std::size_t q_global_rank_dim(const RootedTree& t, const QRep& v);

// Text format.
struct ParsedRep {
    std::string name;
    std::string quiver_name;
    bool rational = false;
    u32 prime = kDefaultPrime;
    std::vector<std::size_t> dims;
    std::vector<std::vector<i64>> entries;  // per arrow, row major, as written
    Rep rep;                                // reduced mod prime (mod kDefaultPrime for rational input)
    QRep qrep;
};

using QuiverLookup = std::function<std::shared_ptr<const Quiver>(const std::string&)>;

std::vector<ParsedRep> parse_reps(std::string_view text, const QuiverLookup& lookup,
                                  const std::string& source = "<input>");
std::string format_rep(const Rep& v, const std::string& name);

}  // namespace qrank
