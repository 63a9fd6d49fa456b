#include "suites.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace qrank::cli {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "inconclusive";
    }
}

std::string hex_digest(const std::string& s) {
    u64 h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"lemmas", "tensor", "splitting", "mainthm", "all"};
    return names;
}

nlohmann::ordered_json to_json(const Claim& c) {
    nlohmann::ordered_json j;
    j["claim"] = c.claim;
    j["instance"] = c.instance;
    j["parameters"] = c.parameters;
    j["seed"] = c.seed;
    j["verdict"] = verdict_name(c.verdict);
    j["certificate-digest"] = c.digest;
    j["detail"] = c.detail;
    return j;
}

int exit_code(const std::vector<Claim>& claims) {
    bool inc = false;
    for (const auto& c : claims) {
        if (c.verdict == Verdict::fail) return 1;
        inc = inc || c.verdict == Verdict::inconclusive;
    }
    return inc ? 2 : 0;
}

namespace {

// Failures collected from parallel cases; the one with the smallest case index is reported.
class Failures {
public:
    void add(std::size_t i, std::string msg) {
        std::lock_guard<std::mutex> lk(mu_);
        if (!any_ || i < first_) first_ = i, msg_ = std::move(msg);
        any_ = true;
    }
    bool any() const { return any_; }
    const std::string& message() const { return msg_; }

private:
    std::mutex mu_;
    bool any_ = false;
    std::size_t first_ = 0;
    std::string msg_;
};

struct Context {
    const RootedTree& t;
    const SuiteOptions& opt;
    Field f;
    Lattices l;
    Ring ring;
    std::string instance;

    Context(const RootedTree& tree, const SuiteOptions& o)
        : t(tree), opt(o), f(o.prime), l(tree), ring(l, o.seed, Field(o.prime)), instance(tree.quiver().name()) {}

    Claim claim(const std::string& name) const {
        Claim c;
        c.claim = name;
        c.instance = instance;
        c.seed = opt.seed;
        c.parameters["prime"] = f.p();
        return c;
    }
};

void finish(Claim& c, const Failures& fails, const std::string& cert) {
    if (fails.any()) {
        c.verdict = Verdict::fail;
        c.detail = fails.message();
    }
    c.certificate = cert + (fails.any() ? "\nfailure: " + fails.message() : "");
    c.digest = hex_digest(c.certificate);
}

u64 case_seed(u64 seed, std::size_t i, u64 salt) {
    Rng r(seed ^ (salt * 0x9e3779b97f4a7c15ULL));
    return r.split(i + 1).next();
}

// ---------------------------------------------------------------- lemmas

Claim lattice_shape(Context& cx) {
    Claim c = cx.claim("lattice-shape");
    Failures fails;
    std::ostringstream cert;
    for (std::size_t x = 0; x < cx.t.size(); ++x) {
        const VertexLattice& L = cx.l.at(x);
        cert << cx.t.quiver().vertex_name(x) << ":" << L.size();
        if (L.size() <= kTableGuard) {
            Lattice m = L.materialize();
            if (!m.check_distributive()) fails.add(x, "L(Q, " + cx.t.quiver().vertex_name(x) + ") is not distributive");
            cert << ":distributive";
        }
        cert << "\n";
    }
    c.detail = "sizes and distributivity of every L(Q, x)";
    finish(c, fails, cert.str());
    return c;
}

Claim ring_rank_claim(Context& cx) {
    Claim c = cx.claim("ring-rank");
    Failures fails;
    c.parameters["value"] = cx.l.ring_rank();
    c.detail = "ring_rank = " + std::to_string(cx.l.ring_rank());
    finish(c, fails, c.detail);
    return c;
}

Claim zeta_evaluation(Context& cx) {
    Claim c = cx.claim("zeta-evaluation");
    Failures fails;
    auto all = cx.l.all_elements();
    std::atomic<std::size_t> pairs{0};
    parallel_for(all.size(), cx.opt.jobs, [&](std::size_t i) {
        const LatticeElement n = all[i];
        RankVector r = rank_vector(cx.l, reduced_rep(cx.l, n, cx.f));
        const VertexLattice& L = cx.l.at(n.vertex);
        for (std::size_t m = 0; m < L.size(); ++m) {
            ++pairs;
            std::size_t z = L.leq(m, n.index) ? 1 : 0;
            if (r.r[n.vertex][m] != z)
                fails.add(i, "r_M(X_N) = " + std::to_string(r.r[n.vertex][m]) + " for M = " +
                                 cx.l.fingerprint(n.vertex, m) + ", N = " + cx.l.fingerprint(n));
        }
    });
    c.parameters["pairs"] = pairs.load();
    c.detail = std::to_string(pairs.load()) + " pairs with r_M(X_N) = zeta(M, N)";
    finish(c, fails, c.detail);
    return c;
}

Claim reduced_adjunction(Context& cx) {
    Claim c = cx.claim("reduced-adjunction");
    Failures fails;
    const std::size_t n = cx.l.root_lattice().size();
    std::vector<AdjunctionCheck> res(n);
    parallel_for(n, cx.opt.jobs, [&](std::size_t m) {
        Rng rng(case_seed(cx.opt.seed, m, 1));
        ReducedAdjunction adj(cx.l, m);
        res[m] = check_adjunction(adj, AdjunctionLimits{}, rng);
        if (!res[m].ok) fails.add(m, res[m].failure);
    });
    std::size_t exh = 0, pairs = 0;
    for (const auto& r : res) exh += r.exhaustive, pairs += r.pairs;
    c.parameters["elements"] = n;
    c.parameters["exhaustive"] = exh;
    c.detail = std::to_string(n) + " elements M, " + std::to_string(exh) + " with all pairs enumerated, " +
               std::to_string(pairs) + " Galois pairs";
    finish(c, fails, c.detail);
    return c;
}

Claim pushforward_adjunction(Context& cx) {
    Claim c = cx.claim("pushforward-adjunction");
    Failures fails;
    const std::size_t n = cx.opt.samples;
    std::vector<std::string> lines(n);
    parallel_for(n, cx.opt.jobs, [&](std::size_t i) {
        Rng rng(case_seed(cx.opt.seed, i, 2));
        OverQuiver o = random_over_quiver(cx.t, rng);
        std::vector<std::size_t> dv(o.tree.size()), dw(cx.t.size());
        for (auto& d : dv) d = rng.below(3);
        for (auto& d : dw) d = rng.below(3);
        Rep v = random_rep(o.tree.quiver_ptr(), cx.f, dv, rng);
        Rep w = random_rep(cx.t.quiver_ptr(), cx.f, dw, rng);
        std::size_t lhs = hom_dim(pushforward(cx.t.quiver_ptr(), o.map, v), w);
        std::size_t rhs = hom_dim(v, pullback(o.tree.quiver_ptr(), o.map, w));
        lines[i] = std::to_string(lhs) + "=" + std::to_string(rhs);
        if (lhs != rhs)
            fails.add(i, "case " + std::to_string(i) + ": dim Hom(f_*V, W) = " + std::to_string(lhs) +
                             ", dim Hom(V, f^*W) = " + std::to_string(rhs));
    });
    c.parameters["instances"] = n;
    std::string cert;
    for (const auto& s : lines) cert += s + "\n";
    c.detail = std::to_string(n) + " random root preserving maps";
    finish(c, fails, cert);
    return c;
}

Claim support_idempotents(Context& cx) {
    Claim c = cx.claim("support-idempotents");
    Failures fails;
    SupportAlgebra sa(cx.ring);
    const std::size_t n = sa.size();
    c.parameters["subquivers"] = n;
    if (n > 64) {
        c.verdict = Verdict::inconclusive;
        c.detail = std::to_string(n) + " connected subquivers exceed the limit of 64";
        finish(c, fails, c.detail);
        return c;
    }
    std::vector<RingElement> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = sa.idempotent(i);
    for (std::size_t i = 0; i < n; ++i) {
        RingElement s;
        for (auto j : sa.order().down(i).elements()) s = s + e[j];
        if (s != sa.identity(i)) fails.add(i * n, "id_P != sum of e_P' below P");
    }
    parallel_for(n * n, cx.opt.jobs, [&](std::size_t k) {
        std::size_t i = k / n, j = k % n;
        RingElement p = cx.ring.mul(e[i], e[j]);
        if (i == j ? p != e[i] : !p.is_zero())
            fails.add(k, "e_P e_S != delta e_P for subquivers " + std::to_string(i) + ", " + std::to_string(j));
    });
    c.detail = std::to_string(n * n) + " products e_P e_S";
    finish(c, fails, c.detail);
    return c;
}

Claim fine_idempotents(Context& cx) {
    Claim c = cx.claim("fine-idempotents");
    Failures fails;
    const VertexLattice& L = cx.l.root_lattice();
    const std::size_t n = L.size();
    const std::size_t root = cx.t.root();
    c.parameters["elements"] = n;
    if (n > 64) {
        c.verdict = Verdict::inconclusive;
        c.detail = "|L(Q, root)| = " + std::to_string(n) + " exceeds the limit of 64";
        finish(c, fails, c.detail);
        return c;
    }
    std::vector<RingElement> fm(n);
    for (std::size_t m = 0; m < n; ++m) fm[m] = fine_idempotent(cx.ring, m);
    parallel_for(n * n, cx.opt.jobs, [&](std::size_t k) {
        std::size_t m = k / n, nn = k % n;
        RingElement p = cx.ring.project_root(cx.ring.mul(fm[m], fm[nn]));
        if (m == nn ? p != fm[m] : !p.is_zero())
            fails.add(k, "f_M f_N != delta f_M at M = " + cx.l.fingerprint(root, m) + ", N = " + cx.l.fingerprint(root, nn));
        RingElement q = cx.ring.project_root(cx.ring.mul(fm[m], cx.ring.basis(cx.ring.reduced_label({root, nn}))));
        if (q != (L.leq(m, nn) ? fm[m] : RingElement{}))
            fails.add(k, "f_M X_N != zeta(M, N) f_M at M = " + cx.l.fingerprint(root, m) + ", N = " +
                             cx.l.fingerprint(root, nn));
    });
    RingElement total;
    for (const auto& f : fm) total = total + f;
    for (std::size_t i = 0; i < cx.opt.samples; ++i) {
        Rng rng(case_seed(cx.opt.seed, i, 3));
        std::vector<std::size_t> d(cx.t.size());
        for (auto& x : d) x = rng.below(3);
        d[root] = 1 + rng.below(2);
        RingElement v = cx.ring.project_root(cx.ring.element(random_rep(cx.t.quiver_ptr(), cx.f, d, rng)));
        if (cx.ring.project_root(cx.ring.mul(total, v)) != v)
            fails.add(n * n + i, "sum of f_M does not act as the identity on sample " + std::to_string(i));
    }
    c.detail = std::to_string(n * n) + " pairs (M, N) and " + std::to_string(cx.opt.samples) + " completeness samples";
    finish(c, fails, c.detail);
    return c;
}

// ---------------------------------------------------------------- tensor

Claim tensor_formula(Context& cx) {
    Claim c = cx.claim("tensor-formula");
    Failures fails;
    std::vector<std::pair<LatticeElement, LatticeElement>> cases;
    for (std::size_t x = 0; x < cx.t.size(); ++x)
        for (std::size_t m = 0; m < cx.l.at(x).size(); ++m)
            for (std::size_t n = 0; n < cx.l.at(x).size(); ++n) cases.push_back({{x, m}, {x, n}});
    // intern the reduced representations up front so label order does not depend on scheduling
    for (const auto& k : cx.l.all_elements()) cx.ring.reduced_label(k);
    std::atomic<std::size_t> summands{0};
    parallel_for(cases.size(), cx.opt.jobs, [&](std::size_t i) {
        auto r = check_tensor_formula(cx.ring, cases[i].first, cases[i].second);
        summands += r.summands;
        if (!r.ok) fails.add(i, r.failure);
    });
    c.parameters["pairs"] = cases.size();
    c.detail = std::to_string(cases.size()) + " pairs, " + std::to_string(summands.load()) + " summands";
    finish(c, fails, c.detail);
    return c;
}

// ---------------------------------------------------------------- splitting

Claim splitting(Context& cx) {
    Claim c = cx.claim("splitting");
    Failures fails;
    std::vector<std::size_t> d = cx.opt.dims;
    if (d.empty()) {
        d.assign(cx.t.size(), 2);
        d[cx.t.root()] = 3;
    }
    if (d.size() != cx.t.size()) throw std::invalid_argument("--dims needs one entry per vertex");
    Rng rng(case_seed(cx.opt.seed, 0, 4));
    Rep v = random_rep(cx.t.quiver_ptr(), cx.f, d, rng);
    c.parameters["dims"] = d;
    c.parameters["lmax"] = cx.opt.lmax;
    auto reps = verify_splitting(cx.l, v, cx.opt.lmax);
    std::ostringstream cert;
    bool undecided = false;
    for (const auto& r : reps) {
        cert << cx.l.fingerprint(cx.t.root(), r.n) << " rank " << r.rank << " l " << r.l;
        for (const auto& a : r.attempts)
            cert << " [" << a.l << ": " << a.multiplicity << "/" << a.expected << ", complement " << a.complement_rank
                 << "]";
        cert << "\n";
        undecided = undecided || r.l == 0;
    }
    c.detail = std::to_string(reps.size()) + " maximal N with nonzero rank";
    if (undecided) {
        c.verdict = Verdict::inconclusive;
        c.detail += "; some N did not split by l = " + std::to_string(cx.opt.lmax);
    }
    finish(c, fails, cert.str());
    return c;
}

// ---------------------------------------------------------------- main theorem

Claim main_theorem(Context& cx) {
    Claim c = cx.claim("main-theorem");
    Failures fails;
    const std::size_t root = cx.t.root();
    for (const auto& k : cx.l.all_elements()) cx.ring.reduced_label(k);
    std::map<std::size_t, Rep> found;
    for (std::size_t i = 0; i < cx.opt.samples; ++i) {
        Rng rng(case_seed(cx.opt.seed, i, 5));
        std::vector<std::size_t> d(cx.t.size());
        for (auto& x : d) x = rng.below(3);
        d[root] = 1 + rng.below(3);
        Rep v = random_rep(cx.t.quiver_ptr(), cx.f, d, rng);
        for (auto [id, k] : cx.ring.decompose(v).terms)
            if (cx.ring.root_supported(id)) found.emplace(id, cx.ring.witness(id));
    }
    std::vector<std::pair<std::size_t, Rep>> cases;
    for (const auto& [id, w] : found) {
        bool reduced = false;
        for (std::size_t m = 0; m < cx.l.root_lattice().size(); ++m) reduced = reduced || cx.ring.reduced_label({root, m}) == id;
        if (!reduced) cases.emplace_back(id, w);
    }
    std::sort(cases.begin(), cases.end(),
              [&](const auto& a, const auto& b) { return cx.ring.label(a.first).key() < cx.ring.label(b.first).key(); });
    std::vector<NilpotencyReport> reps(cases.size());
    parallel_for(cases.size(), cx.opt.jobs, [&](std::size_t i) {
        reps[i] = verify_nilpotency(cx.ring, cases[i].second, cx.opt.kmax);
        if (reps[i].rank_m != 0) fails.add(i, "r_M(V) != 0 for a non-reduced indecomposable of fine support M");
        if (!reps[i].indecomposable || reps[i].reduced) fails.add(i, "sample summand is not a non-reduced indecomposable");
    });
    // f_M X_M = f_M, so f_M X_M is idempotent and never nilpotent
    for (std::size_t m = 0; m < cx.l.root_lattice().size(); ++m) {
        RingElement f = fine_idempotent(cx.ring, m);
        if (cx.ring.project_root(cx.ring.mul(f, cx.ring.basis(cx.ring.reduced_label({root, m})))) != f)
            fails.add(cases.size() + m, "f_M X_M != f_M at M = " + cx.l.fingerprint(root, m));
    }
    std::ostringstream cert;
    bool undecided = false;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& w = cases[i].second;
        cert << "dims";
        for (auto x : w.dims()) cert << " " << x;
        cert << " fsupp " << cx.l.fingerprint(root, reps[i].m) << " k " << reps[i].k << "\n";
        undecided = undecided || reps[i].k == 0;
    }
    c.parameters["kmax"] = cx.opt.kmax;
    c.parameters["samples"] = cx.opt.samples;
    c.parameters["cases"] = cases.size();
    c.detail = std::to_string(found.size()) + " root supported indecomposables found, " + std::to_string(cases.size()) +
               " not reduced";
    if (undecided) {
        c.verdict = Verdict::inconclusive;
        c.detail += "; nilpotency not observed by k = " + std::to_string(cx.opt.kmax) + " for some case";
    }
    finish(c, fails, cert.str());
    return c;
}

}  // namespace

std::vector<Claim> run_suite(const std::string& suite, const RootedTree& t, const SuiteOptions& opt) {
    Context cx(t, opt);
    std::vector<Claim> out;
    const bool all = suite == "all";
    if (all || suite == "lemmas") {
        out.push_back(lattice_shape(cx));
        out.push_back(ring_rank_claim(cx));
        out.push_back(zeta_evaluation(cx));
        out.push_back(reduced_adjunction(cx));
        out.push_back(pushforward_adjunction(cx));
        out.push_back(support_idempotents(cx));
        out.push_back(fine_idempotents(cx));
    }
    if (all || suite == "tensor") out.push_back(tensor_formula(cx));
    if (all || suite == "splitting") out.push_back(splitting(cx));
    if (all || suite == "mainthm") out.push_back(main_theorem(cx));
    if (out.empty()) throw std::invalid_argument("unknown suite '" + suite + "'");
    return out;
}

}  // namespace qrank::cli
