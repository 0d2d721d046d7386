// Compares the parallel SNF engine against the serial reference on seeded
// random chain complexes (d^2 = 0 by construction: each boundary factors
// through the saturated kernel of the previous one) and on the bar complex
// of a truncated polynomial ring, which is sparser and taller.

#include "zalg/homology.hpp"
#include "zalg/rng.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>

using namespace zalg;

namespace {

DenseMat random_mat(Rng& rng, long rows, long cols, long span) {
  DenseMat m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m.at(i, j) = rng.uniform(-span, span);
  return m;
}

ChainComplexZ random_complex(Rng& rng, long degrees, long rank, long span) {
  ChainComplexZ c;
  std::vector<long> dims(degrees + 1);
  for (long n = 0; n <= degrees; ++n) dims[n] = rng.uniform(rank / 2, rank);
  c.set_dim(0, dims[0]);
  DenseMat d1 = random_mat(rng, dims[0], dims[1], span);
  c.set_boundary(1, SparseMat::from_dense(d1));
  DenseMat prev = d1;
  for (long n = 2; n <= degrees; ++n) {
    DenseMat k = kernel_basis(prev);  // dims[n-1] x k
    DenseMat m = random_mat(rng, k.cols, dims[n], 1);
    DenseMat d(k.rows, dims[n]);
    for (long i = 0; i < k.rows; ++i)
      for (long j = 0; j < dims[n]; ++j) {
        Int s = 0;
        for (long t = 0; t < k.cols; ++t) s += k.at(i, t) * m.at(t, j);
        d.at(i, j) = s;
      }
    c.set_boundary(n, SparseMat::from_dense(d));
    prev = d;
  }
  return c;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parallel vs serial homology engine benchmark"};
  long rank = 60, degrees = 4, count = 3, span = 3;
  std::uint64_t seed = 1;
  app.add_option("--rank", rank, "max module rank per degree");
  app.add_option("--degrees", degrees, "top degree of the random complexes");
  app.add_option("--count", count, "number of random complexes");
  app.add_option("--span", span, "entry range for the bottom boundary");
  app.add_option("--seed", seed, "rng seed");
  CLI11_PARSE(app, argc, argv);

  Rng rng(seed);
  std::printf("%-28s %10s %10s %8s\n", "instance", "parallel", "serial", "equal");
  double tp_sum = 0, ts_sum = 0;
  for (long i = 0; i < count; ++i) {
    ChainComplexZ c = random_complex(rng, degrees, rank, span);
    auto t0 = std::chrono::steady_clock::now();
    auto hp = homology_range(c, 0, degrees, Engine::parallel);
    double tp = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto hs = homology_range(c, 0, degrees, Engine::serial);
    double ts = ms_since(t0);
    bool eq = hp == hs;
    tp_sum += tp;
    ts_sum += ts;
    std::printf("random #%-2ld rank<=%-4ld       %8.1fms %8.1fms %8s\n", i, rank, tp, ts,
                eq ? "yes" : "NO");
    if (!eq) return 1;
  }

  BasedRing t4 = truncated_poly(4);
  for (long top : {5L, 6L}) {
    ChainComplexZ c = bar_complex(t4, top);
    auto t0 = std::chrono::steady_clock::now();
    auto hp = homology_range(c, 0, top - 1, Engine::parallel);
    double tp = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto hs = homology_range(c, 0, top - 1, Engine::serial);
    double ts = ms_since(t0);
    bool eq = hp == hs;
    tp_sum += tp;
    ts_sum += ts;
    std::printf("bar tZ[t]/(t^4) top=%-2ld     %8.1fms %8.1fms %8s\n", top, tp, ts,
                eq ? "yes" : "NO");
    if (!eq) return 1;
  }
  std::printf("%-28s %8.1fms %8.1fms\n", "total", tp_sum, ts_sum);
  return 0;
}
