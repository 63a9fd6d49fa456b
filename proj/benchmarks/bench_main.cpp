#include <benchmark/benchmark.h>

#include "qrank/ring.hpp"

using namespace qrank;

namespace {

RootedTree wide_tree(std::size_t arms, std::size_t depth) {
    Quiver q("wide");
    std::size_t s = q.add_vertex("s");
    for (std::size_t a = 0; a < arms; ++a) {
        std::size_t head = s;
        for (std::size_t d = 0; d < depth; ++d) {
            std::size_t v = q.add_vertex("v" + std::to_string(a) + "_" + std::to_string(d));
            q.add_arrow("a" + std::to_string(a) + "_" + std::to_string(d), v, head);
            head = v;
        }
    }
    return RootedTree::make(std::move(q));
}

void BM_LatticeBuild(benchmark::State& st) {
    RootedTree t = wide_tree(static_cast<std::size_t>(st.range(0)), 2);
    for (auto _ : st) {
        Lattices l(t);
        benchmark::DoNotOptimize(l.ring_rank());
    }
}
BENCHMARK(BM_LatticeBuild)->DenseRange(2, 5);

void BM_RankVector(benchmark::State& st) {
    RootedTree t = example_quiver();
    Lattices l(t);
    Rng rng(1);
    std::size_t d = static_cast<std::size_t>(st.range(0));
    Rep v = random_rep(t.quiver_ptr(), Field(), std::vector<std::size_t>(t.size(), d), rng);
    for (auto _ : st) benchmark::DoNotOptimize(rank_vector(l, v));
}
BENCHMARK(BM_RankVector)->Arg(2)->Arg(4)->Arg(8);

void BM_Decompose(benchmark::State& st) {
    RootedTree t = subspace_quiver(3);
    Lattices l(t);
    std::vector<Rep> parts;
    for (int i = 0; i < st.range(0); ++i)
        for (const auto& e : l.all_elements()) parts.push_back(reduced_rep(l, e));
    Rep v = dsum(parts);
    for (auto _ : st) benchmark::DoNotOptimize(krull_schmidt(v, 1).summands.size());
    st.counters["dim"] = static_cast<double>(v.total_dim());
}
BENCHMARK(BM_Decompose)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Adjunction(benchmark::State& st) {
    RootedTree t = wide_tree(3, 2);
    Lattices l(t);
    for (auto _ : st) {
        Rng rng(2);
        for (std::size_t m = 0; m < l.root_lattice().size(); m += 7) {
            ReducedAdjunction adj(l, m);
            benchmark::DoNotOptimize(check_adjunction(adj, AdjunctionLimits{}, rng).ok);
        }
    }
}
BENCHMARK(BM_Adjunction)->Unit(benchmark::kMillisecond);

void BM_Splitting(benchmark::State& st) {
    RootedTree t = subspace_quiver(static_cast<std::size_t>(st.range(0)));
    Lattices l(t);
    Rng rng(3);
    std::vector<std::size_t> d(t.size(), 2);
    d[t.root()] = 3;
    Rep v = random_rep(t.quiver_ptr(), Field(), d, rng);
    for (auto _ : st) benchmark::DoNotOptimize(verify_splitting(l, v, 4).size());
}
BENCHMARK(BM_Splitting)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_TensorFormula(benchmark::State& st) {
    RootedTree t = example_quiver();
    Lattices l(t);
    for (auto _ : st) {
        Ring r(l, 4);
        std::size_t ok = 0;
        const std::size_t root = t.root();
        for (std::size_t m = 0; m < l.root_lattice().size(); m += 3)
            for (std::size_t n = 0; n < l.root_lattice().size(); n += 3) ok += check_tensor_formula(r, {root, m}, {root, n}).ok;
        benchmark::DoNotOptimize(ok);
    }
}
BENCHMARK(BM_TensorFormula)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
