#include <benchmark/benchmark.h>

#include <random>

#include "soblab/bundle_metrics.hpp"
#include "soblab/experiments.hpp"
#include "soblab/sobolev.hpp"

using namespace soblab;

static void BM_SphereExpLog(benchmark::State& state) {
    Manifold s2 = Manifold::sphere(2);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Vec x{1, 0, 0};
    Vec v = s2.project_to_tangent(x, {g(rng), g(rng), g(rng)});
    for (auto _ : state) {
        Vec y = s2.exp_map(x, v);
        benchmark::DoNotOptimize(s2.log_map(x, y));
    }
}
BENCHMARK(BM_SphereExpLog);

static void BM_TransportHom(benchmark::State& state) {
    Manifold M = Manifold::interval(0, 1);
    Manifold N = Manifold::sphere(2);
    Mat m(2, 1);
    m(0, 0) = 0.7;
    m(1, 0) = -0.2;
    HomElement h = make_hom(M, N, {0.25}, {1, 0, 0}, m);
    for (auto _ : state) benchmark::DoNotOptimize(transport_hom(h, {0.5}, {0, 1, 0}));
}
BENCHMARK(BM_TransportHom);

static void BM_PathLengthCG(benchmark::State& state) {
    Manifold M = Manifold::interval(-1, 1);
    Manifold N = Manifold::euclidean(2);
    const int steps = static_cast<int>(state.range(0));
    BundlePath path;
    for (int j = 0; j <= steps; ++j) {
        double tau = static_cast<double>(j) / steps;
        Mat mat(2, 1);
        mat(0, 0) = std::cos(M_PI * tau);
        mat(1, 0) = std::sin(M_PI * tau);
        path.samples.push_back(make_hom(M, N, {0.0}, {1 - 2 * tau, 0.0}, mat));
    }
    for (auto _ : state) benchmark::DoNotOptimize(path_length(0.5, path));
}
BENCHMARK(BM_PathLengthCG)->Arg(128)->Arg(512);

static void BM_SobolevEnergy(benchmark::State& state) {
    SampledMap u = chiron_kink_map(16, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sobolev_energy(u, 2.0));
}
BENCHMARK(BM_SobolevEnergy)->Arg(1024)->Arg(8192);

BENCHMARK_MAIN();
