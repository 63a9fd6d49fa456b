#include "qrank/quiver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "lexer.hpp"

namespace qrank {

// ---------------------------------------------------------------- Quiver

std::size_t Quiver::add_vertex(std::string name) {
    if (name.empty()) throw std::invalid_argument("vertex name is empty");
    if (vindex_.count(name)) throw std::invalid_argument("duplicate vertex '" + name + "'");
    vindex_.emplace(name, vertices_.size());
    vertices_.push_back(std::move(name));
    in_.emplace_back();
    out_.emplace_back();
    return vertices_.size() - 1;
}

std::size_t Quiver::add_arrow(std::string name, std::size_t tail, std::size_t head) {
    if (tail >= vertices_.size() || head >= vertices_.size()) throw std::out_of_range("arrow endpoint out of range");
    if (name.empty()) throw std::invalid_argument("arrow name is empty");
    if (aindex_.count(name)) throw std::invalid_argument("duplicate arrow '" + name + "'");
    aindex_.emplace(name, arrows_.size());
    in_[head].push_back(arrows_.size());
    out_[tail].push_back(arrows_.size());
    arrows_.push_back({std::move(name), tail, head});
    return arrows_.size() - 1;
}

std::optional<std::size_t> Quiver::find_vertex(std::string_view name) const {
    auto it = vindex_.find(std::string(name));
    if (it == vindex_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Quiver::find_arrow(std::string_view name) const {
    auto it = aindex_.find(std::string(name));
    if (it == aindex_.end()) return std::nullopt;
    return it->second;
}

bool Quiver::same_shape(const Quiver& o) const {
    if (vertex_count() != o.vertex_count() || arrow_count() != o.arrow_count()) return false;
    for (std::size_t a = 0; a < arrows_.size(); ++a)
        if (arrows_[a].tail != o.arrows_[a].tail || arrows_[a].head != o.arrows_[a].head) return false;
    return true;
}

// ---------------------------------------------------------------- rooted trees

RootCheck check_rooted_tree(const Quiver& q) {
    RootCheck r;
    const std::size_t n = q.vertex_count();
    if (n == 0) {
        r.problem = "quiver has no vertices";
        return r;
    }
    std::vector<std::size_t> sinks;
    for (std::size_t v = 0; v < n; ++v) {
        if (q.out_arrows(v).empty()) sinks.push_back(v);
        if (q.out_arrows(v).size() > 1) {
            r.problem = "vertex '" + q.vertex_name(v) + "' has " + std::to_string(q.out_arrows(v).size()) +
                        " outgoing arrows";
            return r;
        }
    }
    if (sinks.size() > 1) {
        r.problem = "two sinks: '" + q.vertex_name(sinks[0]) + "' and '" + q.vertex_name(sinks[1]) + "'";
        return r;
    }
    if (sinks.empty()) {
        r.problem = "no sink; the arrows out of '" + q.vertex_name(0) + "' lead into a cycle";
        return r;
    }
    // Each vertex has at most one outgoing arrow, so the walk along them is determined.
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on the current walk, 2 reaches the sink
    state[sinks[0]] = 2;
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> walk;
        std::size_t u = v;
        while (state[u] == 0) {
            state[u] = 1;
            walk.push_back(u);
            u = q.arrow(q.out_arrows(u)[0]).head;
        }
        if (state[u] == 1) {
            r.problem = "cycle through '" + q.vertex_name(u) + "'";
            return r;
        }
        for (auto w : walk) state[w] = 2;
    }
    r.ok = true;
    r.root = sinks[0];
    return r;
}

RootedTree::RootedTree(std::shared_ptr<const Quiver> q) : q_(std::move(q)) {
    RootCheck c = check_rooted_tree(*q_);
    if (!c.ok) throw TreeError("quiver '" + q_->name() + "' is not a rooted tree: " + c.problem);
    const std::size_t n = q_->vertex_count();
    root_ = c.root;
    out_.assign(n, npos);
    for (std::size_t v = 0; v < n; ++v)
        if (!q_->out_arrows(v).empty()) out_[v] = q_->out_arrows(v)[0];
    depth_.assign(n, 0);
    height_.assign(n, 0);
    // Preorder from the root, then reverse for a children-first order.
    std::vector<std::size_t> pre{root_};
    for (std::size_t k = 0; k < pre.size(); ++k)
        for (auto a : q_->in_arrows(pre[k])) {
            std::size_t t = q_->arrow(a).tail;
            depth_[t] = depth_[pre[k]] + 1;
            pre.push_back(t);
        }
    post_.assign(pre.rbegin(), pre.rend());
    for (auto v : post_)
        if (out_[v] != npos) {
            std::size_t h = q_->arrow(out_[v]).head;
            height_[h] = std::max(height_[h], height_[v] + 1);
        }
}

bool RootedTree::reaches(std::size_t y, std::size_t x) const {
    while (true) {
        if (y == x) return true;
        if (out_[y] == npos) return false;
        y = q_->arrow(out_[y]).head;
    }
}

std::vector<std::size_t> RootedTree::subtree_vertices(std::size_t x) const {
    std::vector<std::size_t> r{x};
    for (std::size_t k = 0; k < r.size(); ++k)
        for (auto a : q_->in_arrows(r[k])) r.push_back(q_->arrow(a).tail);
    std::sort(r.begin(), r.end());
    return r;
}

// ---------------------------------------------------------------- maps

bool is_quiver_map(const Quiver& src, const Quiver& tgt, const QuiverMap& f) {
    if (f.vertex.size() != src.vertex_count() || f.arrow.size() != src.arrow_count()) return false;
    for (auto v : f.vertex)
        if (v >= tgt.vertex_count()) return false;
    for (std::size_t a = 0; a < src.arrow_count(); ++a) {
        if (f.arrow[a] >= tgt.arrow_count()) return false;
        const Arrow& b = tgt.arrow(f.arrow[a]);
        if (b.tail != f.vertex[src.arrow(a).tail] || b.head != f.vertex[src.arrow(a).head]) return false;
    }
    return true;
}

QuiverMap identity_map(const Quiver& q) {
    QuiverMap f;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) f.vertex.push_back(v);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) f.arrow.push_back(a);
    return f;
}

QuiverMap compose(const QuiverMap& g, const QuiverMap& f) {
    QuiverMap h;
    h.vertex.reserve(f.vertex.size());
    h.arrow.reserve(f.arrow.size());
    for (auto v : f.vertex) h.vertex.push_back(g.vertex.at(v));
    for (auto a : f.arrow) h.arrow.push_back(g.arrow.at(a));
    return h;
}

// ---------------------------------------------------------------- subquivers

Embedded induced_subquiver(const RootedTree& q, const Bits& vertices) {
    const Quiver& Q = q.quiver();
    Quiver sub(Q.name());
    Embedded e;
    std::vector<std::size_t> local(Q.vertex_count(), npos);
    for (auto v : vertices.elements()) {
        local[v] = sub.add_vertex(Q.vertex_name(v));
        e.map.vertex.push_back(v);
    }
    for (std::size_t a = 0; a < Q.arrow_count(); ++a) {
        const Arrow& ar = Q.arrow(a);
        if (local[ar.tail] != npos && local[ar.head] != npos) {
            sub.add_arrow(ar.name, local[ar.tail], local[ar.head]);
            e.map.arrow.push_back(a);
        }
    }
    if (sub.vertex_count() == 0 || sub.arrow_count() + 1 != sub.vertex_count())
        throw TreeError("vertex set does not span a connected subquiver");
    e.tree = RootedTree::make(std::move(sub));
    return e;
}

Embedded subquiver_to(const RootedTree& q, std::size_t x) {
    Bits b(q.size());
    for (auto v : q.subtree_vertices(x)) b.set(v);
    return induced_subquiver(q, b);
}

std::variant<Extension, Gluing> decompose_root(const RootedTree& q) {
    if (q.size() < 2) throw TreeError("a single vertex is neither an extension nor a gluing");
    const Quiver& Q = q.quiver();
    const auto& in = Q.in_arrows(q.root());
    if (in.size() == 1) {
        Extension ext;
        ext.alpha = in[0];
        ext.tau = Q.arrow(in[0]).tail;
        ext.base = subquiver_to(q, ext.tau);
        return ext;
    }
    Gluing g;
    for (auto a : in) {
        Bits b(q.size());
        for (auto v : q.subtree_vertices(Q.arrow(a).tail)) b.set(v);
        b.set(q.root());
        g.pieces.push_back(induced_subquiver(q, b));
    }
    return g;
}

RootedTree extend(const RootedTree& p, const std::string& root_name, const std::string& arrow_name) {
    Quiver q(p.quiver());
    std::size_t s = q.add_vertex(root_name);
    q.add_arrow(arrow_name, p.root(), s);
    return RootedTree::make(std::move(q));
}

RootedTree glue(const std::vector<RootedTree>& pieces) {
    if (pieces.empty()) throw std::invalid_argument("glue: no pieces");
    Quiver q(pieces[0].quiver().name());
    auto fresh = [](const std::function<bool(const std::string&)>& taken, const std::string& base) {
        if (!taken(base)) return base;
        for (std::size_t k = 1;; ++k) {
            std::string c = base + "_" + std::to_string(k);
            if (!taken(c)) return c;
        }
    };
    auto vtaken = [&](const std::string& s) { return q.find_vertex(s).has_value(); };
    auto ataken = [&](const std::string& s) { return q.find_arrow(s).has_value(); };
    std::size_t root = q.add_vertex(pieces[0].quiver().vertex_name(pieces[0].root()));
    for (const auto& p : pieces) {
        const Quiver& P = p.quiver();
        std::vector<std::size_t> local(P.vertex_count(), npos);
        local[p.root()] = root;
        for (std::size_t v = 0; v < P.vertex_count(); ++v)
            if (v != p.root()) local[v] = q.add_vertex(fresh(vtaken, P.vertex_name(v)));
        for (std::size_t a = 0; a < P.arrow_count(); ++a)
            q.add_arrow(fresh(ataken, P.arrow(a).name), local[P.arrow(a).tail], local[P.arrow(a).head]);
    }
    return RootedTree::make(std::move(q));
}

std::vector<Bits> connected_subquivers(const RootedTree& q, std::size_t guard) {
    const Quiver& Q = q.quiver();
    const std::size_t n = q.size();
    // with_sink[v]: connected subquivers whose sink is v.
    std::vector<std::vector<Bits>> with_sink(n);
    std::size_t total = 0;
    for (auto v : q.postorder()) {
        std::vector<Bits> acc;
        Bits self(n);
        self.set(v);
        acc.push_back(self);
        for (auto a : Q.in_arrows(v)) {
            std::size_t t = Q.arrow(a).tail;
            std::vector<Bits> next = acc;
            for (const auto& base : acc)
                for (const auto& s : with_sink[t]) {
                    next.push_back(base | s);
                    if (total + next.size() > guard)
                        throw std::length_error("more than " + std::to_string(guard) + " connected subquivers");
                }
            acc = std::move(next);
        }
        total += acc.size();
        with_sink[v] = std::move(acc);
    }
    std::vector<Bits> out;
    for (std::size_t v = 0; v < n; ++v)
        for (auto& b : with_sink[v]) out.push_back(b);
    return out;
}

Poset inclusion_poset(const std::vector<Bits>& sets) {
    return Poset::from_leq(sets.size(), [&](std::size_t a, std::size_t b) { return sets[a].subset_of(sets[b]); });
}

// ---------------------------------------------------------------- complexity order

namespace {

struct Shape {
    std::size_t height = 0;
    std::vector<const Shape*> children;  // weakly decreasing
};

int compare_shapes(const Shape* a, const Shape* b) {
    if (a == b) return 0;
    if (a->height != b->height) return a->height < b->height ? -1 : 1;
    std::size_t n = std::max(a->children.size(), b->children.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= a->children.size()) return -1;
        if (i >= b->children.size()) return 1;
        int c = compare_shapes(a->children[i], b->children[i]);
        if (c != 0) return c;
    }
    return 0;
}

struct ShapeForest {
    std::vector<std::unique_ptr<Shape>> store;
    const Shape* root = nullptr;
};

ShapeForest shapes_of(const RootedTree& t) {
    ShapeForest f;
    std::vector<const Shape*> at(t.size(), nullptr);
    for (auto v : t.postorder()) {
        auto s = std::make_unique<Shape>();
        s->height = t.height(v);
        for (auto a : t.in_arrows(v)) s->children.push_back(at[t.quiver().arrow(a).tail]);
        std::sort(s->children.begin(), s->children.end(),
                  [](const Shape* x, const Shape* y) { return compare_shapes(x, y) > 0; });
        at[v] = s.get();
        f.store.push_back(std::move(s));
    }
    f.root = at[t.root()];
    return f;
}

void encode(const Shape* s, std::string& out) {
    out += '(';
    for (auto c : s->children) encode(c, out);
    out += ')';
}

}  // namespace

int complexity_compare(const RootedTree& a, const RootedTree& b) {
    ShapeForest fa = shapes_of(a), fb = shapes_of(b);
    return compare_shapes(fa.root, fb.root);
}

std::string canonical_form(const RootedTree& q) {
    ShapeForest f = shapes_of(q);
    std::string s;
    encode(f.root, s);
    return s;
}

// ---------------------------------------------------------------- morphisms over a base

std::vector<QuiverMap> over_morphisms(const OverQuiver& lam, const OverQuiver& gam, std::size_t limit) {
    const RootedTree& L = lam.tree;
    const RootedTree& G = gam.tree;
    const Quiver& LQ = L.quiver();
    const Quiver& GQ = G.quiver();
    std::vector<QuiverMap> out;
    // Vertices of lam in preorder, so that the head of each arrow is placed before its tail.
    std::vector<std::size_t> order(L.postorder().rbegin(), L.postorder().rend());
    QuiverMap f;
    f.vertex.assign(L.size(), npos);
    f.arrow.assign(LQ.arrow_count(), npos);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (out.size() >= limit) return;
        if (k == order.size()) {
            out.push_back(f);
            return;
        }
        std::size_t y = order[k];
        if (k == 0) {
            for (std::size_t w = 0; w < G.size(); ++w) {
                if (gam.map.vertex[w] != lam.map.vertex[y]) continue;
                f.vertex[y] = w;
                rec(k + 1);
            }
            f.vertex[y] = npos;
            return;
        }
        std::size_t b = L.out_arrow(y);
        std::size_t w = f.vertex[LQ.arrow(b).head];
        for (auto e : GQ.in_arrows(w)) {
            if (gam.map.arrow[e] != lam.map.arrow[b]) continue;
            std::size_t te = GQ.arrow(e).tail;
            if (gam.map.vertex[te] != lam.map.vertex[y]) continue;
            f.arrow[b] = e;
            f.vertex[y] = te;
            rec(k + 1);
        }
        f.arrow[b] = npos;
        f.vertex[y] = npos;
    };
    rec(0);
    return out;
}

// ---------------------------------------------------------------- families

RootedTree subspace_quiver(std::size_t n) {
    Quiver q("subspace" + std::to_string(n));
    std::size_t s = q.add_vertex("s");
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t v = q.add_vertex(std::to_string(i));
        q.add_arrow("a" + std::to_string(i), v, s);
    }
    return RootedTree::make(std::move(q));
}

RootedTree chain_quiver(std::size_t n) {
    if (n == 0) throw std::invalid_argument("chain needs at least one vertex");
    Quiver q("chain" + std::to_string(n));
    for (std::size_t i = 1; i < n; ++i) q.add_vertex(std::to_string(i));
    q.add_vertex("s");
    for (std::size_t i = 0; i + 1 < n; ++i) q.add_arrow("a" + std::to_string(i + 1), i, i + 1);
    return RootedTree::make(std::move(q));
}

RootedTree example_quiver() {
    Quiver q("extended-subspace");
    std::size_t s = q.add_vertex("s");
    std::size_t t = q.add_vertex("t");
    for (int i = 1; i <= 3; ++i) {
        std::size_t v = q.add_vertex(std::to_string(i));
        q.add_arrow("a" + std::to_string(i), v, t);
    }
    q.add_arrow("b", t, s);
    return RootedTree::make(std::move(q));
}

RootedTree random_tree(std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("random_tree: empty");
    Quiver q("random" + std::to_string(n));
    q.add_vertex("s");
    for (std::size_t i = 1; i < n; ++i) {
        q.add_vertex("v" + std::to_string(i));
        q.add_arrow("a" + std::to_string(i), i, rng.below(static_cast<u32>(i)));
    }
    return RootedTree::make(std::move(q));
}

OverQuiver random_over_quiver(const RootedTree& base, Rng& rng, std::size_t max_children, std::size_t max_vertices) {
    const Quiver& b = base.quiver();
    Quiver q(b.name() + "'");
    QuiverMap m;
    q.add_vertex(b.vertex_name(base.root()) + "'0");
    m.vertex.push_back(base.root());
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        for (auto a : b.in_arrows(m.vertex[v])) {
            std::size_t k = rng.below(static_cast<u32>(max_children + 1));
            for (; k > 0 && q.vertex_count() < max_vertices; --k) {
                const std::size_t tau = b.arrow(a).tail;
                std::size_t u = q.add_vertex(b.vertex_name(tau) + "'" + std::to_string(q.vertex_count()));
                m.vertex.push_back(tau);
                q.add_arrow(b.arrow(a).name + "'" + std::to_string(q.arrow_count()), u, v);
                m.arrow.push_back(a);
            }
        }
    }
    return OverQuiver{RootedTree::make(std::move(q)), std::move(m)};
}

std::vector<RootedTree> all_trees(std::size_t n) {
    std::vector<RootedTree> out;
    std::vector<std::vector<std::size_t>> level{{npos}};  // parent arrays, vertex 0 is the root
    std::size_t count = 1;
    while (!level.empty() && count <= n) {
        std::map<std::string, std::vector<std::size_t>> next;
        for (const auto& par : level) {
            Quiver q("tree" + std::to_string(out.size()));
            q.add_vertex("s");
            for (std::size_t i = 1; i < par.size(); ++i) {
                q.add_vertex("v" + std::to_string(i));
                q.add_arrow("a" + std::to_string(i), i, par[i]);
            }
            out.push_back(RootedTree::make(std::move(q)));
            if (count == n) continue;
            for (std::size_t p = 0; p < par.size(); ++p) {
                auto child = par;
                child.push_back(p);
                Quiver c("c");
                c.add_vertex("s");
                for (std::size_t i = 1; i < child.size(); ++i) {
                    c.add_vertex("v" + std::to_string(i));
                    c.add_arrow("a" + std::to_string(i), i, child[i]);
                }
                next.emplace(canonical_form(RootedTree::make(std::move(c))), child);
            }
        }
        level.clear();
        for (auto& [k, v] : next) level.push_back(v);
        ++count;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        Quiver q(out[i].quiver());
        q.set_name("tree" + std::to_string(i));
        out[i] = RootedTree::make(std::move(q));
    }
    return out;
}

// ---------------------------------------------------------------- text format

namespace {

Quiver parse_one(detail::Cursor& c) {
    c.expect_word("quiver");
    Quiver q(c.ident("quiver name"));
    c.expect_sym('{');
    c.expect_word("vertices");
    c.expect_sym(':');
    while (!c.is_sym(';')) {
        const detail::Token& t = c.peek();
        std::string v = c.ident("vertex name or ';'");
        if (q.find_vertex(v)) c.fail(t, "duplicate vertex '" + v + "'");
        q.add_vertex(v);
    }
    c.expect_sym(';');
    if (c.is_word("arrows")) {
        c.next();
        c.expect_sym(':');
        while (!c.is_sym('}')) {
            const detail::Token& t = c.peek();
            std::string a = c.ident("arrow name or '}'");
            if (q.find_arrow(a)) c.fail(t, "duplicate arrow '" + a + "'");
            c.expect_sym(':');
            const detail::Token& tt = c.peek();
            std::string u = c.ident("tail vertex");
            auto ut = q.find_vertex(u);
            if (!ut) c.fail(tt, "unknown vertex '" + u + "'");
            c.expect_arrow();
            const detail::Token& th = c.peek();
            std::string v = c.ident("head vertex");
            auto vh = q.find_vertex(v);
            if (!vh) c.fail(th, "unknown vertex '" + v + "'");
            c.expect_sym(';');
            q.add_arrow(a, *ut, *vh);
        }
    }
    c.expect_sym('}');
    return q;
}

}  // namespace

std::vector<Quiver> parse_quivers(std::string_view text, const std::string& source) {
    detail::Cursor c(detail::lex(text, source), source);
    std::vector<Quiver> out;
    while (!c.at_end()) {
        if (c.is_word("quiver")) {
            out.push_back(parse_one(c));
        } else {
            c.fail("expected 'quiver'");
        }
    }
    return out;
}

Quiver parse_quiver(std::string_view text, const std::string& source) {
    detail::Cursor c(detail::lex(text, source), source);
    Quiver q = parse_one(c);
    if (!c.at_end()) c.fail("unexpected input after quiver block");
    return q;
}

std::string format_quiver(const Quiver& q) {
    std::ostringstream os;
    os << "quiver " << q.name() << " {\n  vertices:";
    for (std::size_t v = 0; v < q.vertex_count(); ++v) os << ' ' << q.vertex_name(v);
    os << ";\n";
    if (q.arrow_count()) {
        os << "  arrows:\n";
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const Arrow& ar = q.arrow(a);
            os << "    " << ar.name << ": " << q.vertex_name(ar.tail) << " -> " << q.vertex_name(ar.head) << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string quiver_dot(const Quiver& q) {
    auto esc = [](const std::string& s) {
        std::string r;
        for (char c : s) {
            if (c == '"' || c == '\\') r += '\\';
            r += c;
        }
        return r;
    };
    std::ostringstream os;
    os << "digraph \"" << esc(q.name()) << "\" {\n  rankdir=BT;\n";
    for (std::size_t v = 0; v < q.vertex_count(); ++v)
        os << "  v" << v << " [label=\"" << esc(q.vertex_name(v)) << "\"];\n";
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        os << "  v" << ar.tail << " -> v" << ar.head << " [label=\"" << esc(ar.name) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace qrank
