#include <benchmark/benchmark.h>

#include "qhkit/grid_graph.hpp"
#include "qhkit/metrics.hpp"
#include "qhkit/path.hpp"

using namespace qhkit;

namespace {

const Domain& ball() {
    static const Domain d(Ball{Point(0, 0), 1.0}, "ball");
    return d;
}

const Domain& slit() {
    static const Domain d(SlitDisk{}, "slit_disk");
    return d;
}

void BM_GraphBuildBall(benchmark::State& state) {
    const int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        GridGraph g(ball(), level);
        benchmark::DoNotOptimize(g.edge_count());
    }
}
BENCHMARK(BM_GraphBuildBall)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_GraphBuildSlit(benchmark::State& state) {
    const int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        GridGraph g(slit(), level);
        benchmark::DoNotOptimize(g.edge_count());
    }
}
BENCHMARK(BM_GraphBuildSlit)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

// Graph cached, fresh source each iteration so the Dijkstra run is measured.
void BM_KUpperQuery(benchmark::State& state) {
    GraphCache::instance().graph(slit(), 4);
    double t = 0.1;
    for (auto _ : state) {
        t = t > 0.2 ? 0.1 : t + 1e-4;
        benchmark::DoNotOptimize(k_upper(slit(), Point(0.5, t), Point(0.5, -t), 4).value);
    }
}
BENCHMARK(BM_KUpperQuery)->Unit(benchmark::kMillisecond);

void BM_QhLengthSegment(benchmark::State& state) {
    const Path p{{Point(-0.9, 0.0), Point(0.95, 0.1)}};
    for (auto _ : state) benchmark::DoNotOptimize(qh_length(p, ball()).value);
}
BENCHMARK(BM_QhLengthSegment)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
