#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qrank/poset.hpp"

namespace qrank {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Arrow {
    std::string name;
    std::size_t tail = 0;
    std::size_t head = 0;
};

// Finite directed graph with named vertices and arrows. Names are unique per kind.
class Quiver {
public:
    Quiver() = default;
    explicit Quiver(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    std::size_t add_vertex(std::string name);
    std::size_t add_arrow(std::string name, std::size_t tail, std::size_t head);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }
    const std::string& vertex_name(std::size_t v) const { return vertices_.at(v); }
    const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
    std::optional<std::size_t> find_vertex(std::string_view name) const;
    std::optional<std::size_t> find_arrow(std::string_view name) const;
    const std::vector<std::size_t>& in_arrows(std::size_t v) const { return in_.at(v); }
    const std::vector<std::size_t>& out_arrows(std::size_t v) const { return out_.at(v); }

    // Same vertex count, arrow count and arrow endpoints; names are ignored.
    bool same_shape(const Quiver& o) const;

private:
    std::string name_;
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<std::size_t>> in_, out_;
    std::unordered_map<std::string, std::size_t> vindex_, aindex_;
};

// Outcome of the rooted tree check: the root, or a description of the first violation found.
struct RootCheck {
    bool ok = false;
    std::size_t root = npos;
    std::string problem;
};

RootCheck check_rooted_tree(const Quiver& q);

class TreeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Quiver whose underlying graph is a tree with a unique sink. Every query is by index.
class RootedTree {
public:
    RootedTree() = default;
    explicit RootedTree(std::shared_ptr<const Quiver> q);
    static RootedTree make(Quiver q) { return RootedTree(std::make_shared<const Quiver>(std::move(q))); }

    const Quiver& quiver() const { return *q_; }
    const std::shared_ptr<const Quiver>& quiver_ptr() const { return q_; }
    std::size_t size() const { return q_->vertex_count(); }
    std::size_t root() const { return root_; }
    std::size_t out_arrow(std::size_t v) const { return out_[v]; }
    std::size_t parent(std::size_t v) const { return out_[v] == npos ? npos : q_->arrow(out_[v]).head; }
    const std::vector<std::size_t>& in_arrows(std::size_t v) const { return q_->in_arrows(v); }
    // Length of the longest path ending at v.
    std::size_t height(std::size_t v) const { return height_[v]; }
    std::size_t depth(std::size_t v) const { return depth_[v]; }
    // Every vertex appears after all vertices with a path to it.
    const std::vector<std::size_t>& postorder() const { return post_; }
    // True when there is a path from y to x (including y == x).
    bool reaches(std::size_t y, std::size_t x) const;
    // Vertices of the maximal subquiver with sink x, ascending.
    std::vector<std::size_t> subtree_vertices(std::size_t x) const;

private:
    std::shared_ptr<const Quiver> q_;
    std::size_t root_ = 0;
    std::vector<std::size_t> out_, height_, depth_, post_;
};

struct QuiverMap {
    std::vector<std::size_t> vertex;
    std::vector<std::size_t> arrow;
    bool operator==(const QuiverMap&) const = default;
};

bool is_quiver_map(const Quiver& src, const Quiver& tgt, const QuiverMap& f);
QuiverMap identity_map(const Quiver& q);
// g after f.
QuiverMap compose(const QuiverMap& g, const QuiverMap& f);

// Rooted tree together with a structure map into some base quiver.
struct OverQuiver {
    RootedTree tree;
    QuiverMap map;
};

// A rooted tree embedded as a subquiver of a larger one; map sends tree indices to ambient ones.
using Embedded = OverQuiver;

Embedded subquiver_to(const RootedTree& q, std::size_t x);
// Induced subquiver on a connected vertex set; throws TreeError if the set is not connected.
Embedded induced_subquiver(const RootedTree& q, const Bits& vertices);

struct Extension {
    Embedded base;
    std::size_t tau = 0;
    std::size_t alpha = 0;
};
struct Gluing {
    std::vector<Embedded> pieces;  // one per arrow into the root, in arrow order
};
// Extension when exactly one arrow enters the root, gluing otherwise.
std::variant<Extension, Gluing> decompose_root(const RootedTree& q);

// One point extension of p from its root. The new root and arrow get the given names.
RootedTree extend(const RootedTree& p, const std::string& root_name, const std::string& arrow_name);
// Identifies the roots of the pieces. Clashing names get a numeric suffix.
RootedTree glue(const std::vector<RootedTree>& pieces);

inline constexpr std::size_t kSubquiverGuard = 100000;

// Connected subquivers as vertex sets (arrows are induced). Ordered by sink, then by
// generation order.
std::vector<Bits> connected_subquivers(const RootedTree& q, std::size_t guard = kSubquiverGuard);
Poset inclusion_poset(const std::vector<Bits>& sets);

// Total order on rooted trees: by longest path, then lexicographic on the weakly decreasing
// sequence of root subtrees, shorter sequences padded with a bottom symbol.
int complexity_compare(const RootedTree& a, const RootedTree& b);
// Parenthesized encoding with children in decreasing complexity; equal iff isomorphic.
std::string canonical_form(const RootedTree& q);

// All maps f with gam.map o f = lam.map, by backtracking from the root of lam.
std::vector<QuiverMap> over_morphisms(const OverQuiver& lam, const OverQuiver& gam,
                                      std::size_t limit = std::numeric_limits<std::size_t>::max());

// Built-in families.
RootedTree subspace_quiver(std::size_t n);
RootedTree chain_quiver(std::size_t n);
RootedTree example_quiver();
// Random rooted tree on n vertices: vertex 0 is the root, vertex i > 0 points to a random j < i.
RootedTree random_tree(std::size_t n, Rng& rng);
// Random tree over base with the root over the root: every vertex over x gets up to
// max_children children over the tail of each arrow into x, breadth first, until max_vertices.
OverQuiver random_over_quiver(const RootedTree& base, Rng& rng, std::size_t max_children = 2,
                              std::size_t max_vertices = 8);
// Every rooted tree with at most n vertices, one per isomorphism class.
std::vector<RootedTree> all_trees(std::size_t n);

// Text format.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, std::size_t col, const std::string& msg);
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_, col_;
};

std::vector<Quiver> parse_quivers(std::string_view text, const std::string& source = "<input>");
Quiver parse_quiver(std::string_view text, const std::string& source = "<input>");
std::string format_quiver(const Quiver& q);
std::string quiver_dot(const Quiver& q);

}  // namespace qrank
