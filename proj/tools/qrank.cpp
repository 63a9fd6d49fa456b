#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qrank/ring.hpp"
#include "suites.hpp"

using namespace qrank;
using json = nlohmann::ordered_json;

namespace {

struct Input {
    std::string quiver_file;
    std::string quiver_name;
    std::vector<std::string> family;
};

struct Global {
    u64 seed = 0;
    bool json = false;
    unsigned jobs = 1;
    u32 prime = kDefaultPrime;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t parse_size(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty()) throw std::invalid_argument(what + ": expected a non-negative integer, got '" + s + "'");
    return v;
}

RootedTree family_tree(const std::vector<std::string>& fam) {
    const std::string& name = fam.at(0);
    auto size = [&] {
        if (fam.size() < 2) throw std::invalid_argument("family '" + name + "' needs a size");
        return parse_size(fam[1], "family size");
    };
    if (name == "subspace") return subspace_quiver(size());
    if (name == "chain") return chain_quiver(size());
    if (name == "extended-subspace") return example_quiver();
    throw std::invalid_argument("unknown family '" + name + "' (subspace n, chain n, extended-subspace)");
}

std::vector<Quiver> load_quivers(const Input& in) {
    if (!in.family.empty()) return {family_tree(in.family).quiver()};
    if (in.quiver_file.empty()) throw std::invalid_argument("give --quiver FILE or --family NAME [N]");
    return parse_quivers(read_file(in.quiver_file), in.quiver_file);
}

RootedTree load_tree(const Input& in) {
    if (!in.family.empty()) return family_tree(in.family);
    auto qs = load_quivers(in);
    if (qs.empty()) throw std::invalid_argument(in.quiver_file + ": no quiver defined");
    if (in.quiver_name.empty()) return RootedTree::make(std::move(qs.front()));
    for (auto& q : qs)
        if (q.name() == in.quiver_name) return RootedTree::make(std::move(q));
    throw std::invalid_argument(in.quiver_file + ": no quiver named '" + in.quiver_name + "'");
}

void add_input(CLI::App* sub, Input& in) {
    sub->add_option("--quiver", in.quiver_file, "quiver description file");
    sub->add_option("--name", in.quiver_name, "quiver to use when the file defines several");
    sub->add_option("--family", in.family, "built-in family: subspace N | chain N | extended-subspace")->expected(1, 2);
}

std::size_t vertex_of(const RootedTree& t, const std::string& name) {
    if (name.empty()) return t.root();
    auto v = t.quiver().find_vertex(name);
    if (!v) throw std::invalid_argument("no vertex named '" + name + "' in " + t.quiver().name());
    return *v;
}

std::string csv_quote(const std::string& s) {
    std::string o = "\"";
    for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
    return o + "\"";
}

std::vector<std::size_t> parse_dims(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) out.push_back(parse_size(tok, "--dims"));
    return out;
}

// ---------------------------------------------------------------- commands

int cmd_lattice(const Global& g, const Input& in, const std::string& vname, bool dot) {
    RootedTree t = load_tree(in);
    Lattices l(t);
    const std::size_t x = vertex_of(t, vname);
    const VertexLattice& L = l.at(x);
    if (dot) {
        std::cout << hasse_dot(L.poset(), [&](std::size_t e) { return l.fingerprint(x, e); }, "L");
        return 0;
    }
    if (g.json) {
        json j;
        j["quiver"] = t.quiver().name();
        j["vertex"] = t.quiver().vertex_name(x);
        j["size"] = L.size();
        j["ring-rank"] = l.ring_rank();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << L.size() << "\n";
    }
    return 0;
}

int cmd_reduced(const Global& g, const Input& in, const std::string& vname, const std::string& element, bool dot) {
    RootedTree t = load_tree(in);
    Lattices l(t);
    const std::size_t x = vertex_of(t, vname);
    std::vector<std::size_t> elems;
    if (element.empty()) {
        for (std::size_t e = 0; e < l.at(x).size(); ++e) elems.push_back(e);
    } else {
        std::size_t e = parse_size(element, "--element");
        if (e >= l.at(x).size()) throw std::invalid_argument("--element out of range");
        elems.push_back(e);
    }
    json arr = json::array();
    for (auto e : elems) {
        auto r = l.reduced(x, e);
        const Quiver& qm = r->over.tree.quiver();
        if (g.json) {
            json j;
            j["element"] = e;
            j["fingerprint"] = l.fingerprint(x, e);
            j["vertices"] = qm.vertex_count();
            std::vector<std::string> over;
            for (auto v : r->over.map.vertex) over.push_back(t.quiver().vertex_name(v));
            j["over"] = over;
            j["quiver"] = format_quiver(qm);
            arr.push_back(j);
        } else if (dot) {
            std::cout << quiver_dot(qm);
        } else {
            std::cout << "# " << e << " " << l.fingerprint(x, e) << "\n" << format_quiver(qm);
        }
    }
    if (g.json) std::cout << arr.dump(2) << "\n";
    return 0;
}

int cmd_rankvec(const Global& g, const Input& in, const std::string& rep_file, const std::string& rep_name,
                int random_max) {
    RootedTree t = load_tree(in);
    Lattices l(t);
    RankVector rv;
    if (random_max >= 0) {
        Rng rng(g.seed);
        std::vector<std::size_t> d(t.size());
        for (auto& x : d) x = rng.below(static_cast<u32>(random_max + 1));
        rv = rank_vector(l, random_rep(t.quiver_ptr(), Field(g.prime), d, rng));
    } else {
        if (rep_file.empty()) throw std::invalid_argument("give --rep FILE or --random D");
        std::vector<Quiver> qs = load_quivers(in);
        auto lookup = [&](const std::string& name) -> std::shared_ptr<const Quiver> {
            if (name == t.quiver().name()) return t.quiver_ptr();
            for (const auto& q : qs)
                if (q.name() == name) return std::make_shared<const Quiver>(q);
            return nullptr;
        };
        auto reps = parse_reps(read_file(rep_file), lookup, rep_file);
        const ParsedRep* pr = nullptr;
        for (const auto& r : reps)
            if (rep_name.empty() ? true : r.name == rep_name) {
                pr = &r;
                break;
            }
        if (!pr) throw std::invalid_argument(rep_file + ": no matching representation");
        if (pr->quiver_name != t.quiver().name())
            throw std::invalid_argument(rep_file + ": representation " + pr->name + " is on quiver " + pr->quiver_name +
                                        ", not " + t.quiver().name());
        Rep v(t.quiver_ptr(), pr->rep.field(), pr->rep.dims(), pr->rep.mats());
        if (pr->rational) {
            QRep q = pr->qrep;
            q.quiver = t.quiver_ptr();
            rv = rank_vector_rational(l, q);
        } else {
            rv = rank_vector(l, v);
        }
    }
    if (g.json) {
        json arr = json::array();
        for (const auto& m : l.all_elements()) {
            json j;
            j["fingerprint"] = l.fingerprint(m);
            j["vertex"] = t.quiver().vertex_name(m.vertex);
            j["rank"] = rv.at(m);
            arr.push_back(j);
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << "fingerprint,vertex,rank\n";
        for (const auto& m : l.all_elements())
            std::cout << csv_quote(l.fingerprint(m)) << "," << csv_quote(t.quiver().vertex_name(m.vertex)) << ","
                      << rv.at(m) << "\n";
    }
    return 0;
}

int cmd_verify(const Global& g, const Input& in, const std::string& suite, cli::SuiteOptions opt,
               const std::string& out_file, bool timing) {
    RootedTree t = load_tree(in);
    opt.seed = g.seed;
    opt.jobs = g.jobs;
    opt.prime = g.prime;
    auto t0 = std::chrono::steady_clock::now();
    auto claims = cli::run_suite(suite, t, opt);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const int code = cli::exit_code(claims);
    json report;
    report["suite"] = suite;
    report["instance"] = t.quiver().name();
    report["seed"] = g.seed;
    if (timing) report["wall-clock"] = secs;
    json arr = json::array();
    for (const auto& c : claims) arr.push_back(cli::to_json(c));
    report["claims"] = arr;
    report["exit-code"] = code;
    if (!out_file.empty()) {
        std::ofstream o(out_file);
        if (!o) throw std::runtime_error(out_file + ": cannot write");
        o << report.dump(2) << "\n";
    }
    if (g.json) {
        std::cout << report.dump(2) << "\n";
    } else {
        for (const auto& c : claims)
            std::cout << cli::verdict_name(c.verdict) << "  " << c.claim << "  " << c.instance << "  " << c.digest
                      << "  " << c.detail << "\n";
        if (timing) std::cout << "wall-clock " << secs << " s\n";
    }
    return code;
}

int cmd_validate(const Global& g, const std::vector<std::string>& files) {
    std::vector<Quiver> quivers;
    json arr = json::array();
    int code = 0;
    for (const auto& f : files) {
        std::string text = read_file(f);
        json j;
        j["file"] = f;
        try {
            auto qs = parse_quivers(text, f);
            std::size_t nq = qs.size();
            for (auto& q : qs) {
                RootCheck rc = check_rooted_tree(q);
                if (!rc.ok) throw std::invalid_argument(f + ": quiver " + q.name() + ": " + rc.problem);
                quivers.push_back(std::move(q));
            }
            j["quivers"] = nq;
            j["status"] = "ok";
        } catch (const ParseError& e) {
            // not a quiver file; try representations against everything loaded so far
            try {
                auto lookup = [&](const std::string& name) -> std::shared_ptr<const Quiver> {
                    for (const auto& q : quivers)
                        if (q.name() == name) return std::make_shared<const Quiver>(q);
                    return nullptr;
                };
                auto reps = parse_reps(text, lookup, f);
                j["reps"] = reps.size();
                j["status"] = "ok";
            } catch (const std::exception& e2) {
                j["status"] = "error";
                j["error"] = std::string(e.what()) + "\n" + e2.what();
                code = 1;
            }
        } catch (const std::exception& e) {
            j["status"] = "error";
            j["error"] = e.what();
            code = 1;
        }
        arr.push_back(j);
    }
    if (g.json) {
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& j : arr) {
            if (j["status"] == "ok")
                std::cout << "ok  " << j["file"].get<std::string>() << "\n";
            else
                std::cerr << j["error"].get<std::string>() << "\n";
        }
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank functions on rooted tree quivers"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    if (const char* s = std::getenv("QRANK_SEED")) {
        try {
            g.seed = std::stoull(s);
        } catch (const std::exception&) {
            std::cerr << "QRANK_SEED: not an integer: " << s << "\n";
            return 1;
        }
    }
    app.add_option("--seed", g.seed, "seed for all randomized steps (default: $QRANK_SEED or 0)");
    app.add_flag("--json", g.json, "machine readable output");
    app.add_option("--jobs", g.jobs, "worker threads for verification suites")->check(CLI::Range(1u, 256u));
    app.add_option("--prime", g.prime, "prime for GF(p)")->check([](const std::string& s) {
        try {
            unsigned long v = std::stoul(s);
            return v < 65536 && is_prime(static_cast<u32>(v)) ? std::string() : std::string("not a prime below 65536");
        } catch (const std::exception&) {
            return std::string("not an integer");
        }
    });

    Input in;
    std::string vertex, element, rep_file, rep_name, suite = "all", out_file, dims;
    bool dot = false, count = false, timing = false;
    int random_max = -1;
    cli::SuiteOptions sopt;

    auto* lat = app.add_subcommand("lattice", "size or Hasse diagram of L(Q, x)");
    add_input(lat, in);
    lat->add_option("--vertex", vertex, "vertex name (default: the root)");
    auto* dflag = lat->add_flag("--dot", dot, "Hasse diagram in DOT");
    lat->add_flag("--count", count, "print |L(Q, x)| (default)")->excludes(dflag);

    auto* red = app.add_subcommand("reduced", "reduced quivers Q_M");
    add_input(red, in);
    red->add_option("--vertex", vertex, "vertex name (default: the root)");
    red->add_option("--element", element, "element index (default: all)");
    red->add_flag("--dot", dot, "DOT output");

    auto* rv = app.add_subcommand("rankvec", "rank vector of a representation as CSV");
    add_input(rv, in);
    rv->add_option("--rep", rep_file, "representation file");
    rv->add_option("--rep-name", rep_name, "representation to use when the file defines several");
    rv->add_option("--random", random_max, "random representation with dimensions 0..D instead of a file");

    auto* ver = app.add_subcommand("verify", "run verification suites");
    add_input(ver, in);
    ver->add_option("--suite", suite, "lemmas | tensor | splitting | mainthm | all")
        ->check(CLI::IsMember(cli::suite_names()));
    ver->add_option("--dims", dims, "comma separated dimension vector for the splitting suite");
    ver->add_option("--lmax", sopt.lmax, "largest tensor power tried by the splitting suite");
    ver->add_option("--kmax", sopt.kmax, "largest power tried for nilpotency");
    ver->add_option("--samples", sopt.samples, "random instances per sampled claim");
    ver->add_option("--out", out_file, "also write the JSON report to this file");
    ver->add_flag("--timing", timing, "include wall-clock time in the report");

    std::vector<std::string> files;
    auto* val = app.add_subcommand("validate", "parse quiver and representation files");
    val->add_option("files", files, "files to check")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int c = app.exit(e);
        return c == 0 ? 0 : 1;
    }

    try {
        if (*lat) return cmd_lattice(g, in, vertex, dot);
        if (*red) return cmd_reduced(g, in, vertex, element, dot);
        if (*rv) return cmd_rankvec(g, in, rep_file, rep_name, random_max);
        if (*ver) {
            if (!dims.empty()) sopt.dims = parse_dims(dims);
            return cmd_verify(g, in, suite, sopt, out_file, timing);
        }
        if (*val) return cmd_validate(g, files);
    } catch (const std::exception& e) {
        std::cerr << "qrank: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
