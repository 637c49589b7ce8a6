// Times each OpenMP kernel against its serial twin and checks they agree.
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include <omp.h>

#include "mubqpd/csco.hpp"
#include "mubqpd/kernels.hpp"
#include "mubqpd/polytope.hpp"
#include "mubqpd/qpd.hpp"
#include "mubqpd/rng.hpp"
#include "mubqpd/state.hpp"

using namespace mubqpd;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  f();  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %9.4f ms  parallel %9.4f ms  speedup %5.2fx  %s\n", name, serial * 1e3, parallel * 1e3,
              serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
  std::printf("qpd_table's serial twin decodes every index digit by division; the OpenMP kernel\n"
              "reuses a prefix sum, so its ratio is not a pure threading effect.\n");

  {
    const CscoBasis b = build_csco(7);
    const BlochState s = bloch_from_density(random_state(7, StateKind::mixed, 3), b);
    std::vector<double> a, p;
    const double ts = seconds([&] { a = qpd_table(s, b, Execution::serial).values; }, 3);
    const double tp = seconds([&] { p = qpd_table(s, b, Execution::parallel).values; }, 3);
    row("qpd_table n=7", ts, tp, a == p);
  }
  {
    const CscoBasis b = build_csco(4);
    const double ts = seconds([&] { (void)enumerate_faces(b, Execution::serial); }, 3);
    const double tp = seconds([&] { (void)enumerate_faces(b, Execution::parallel); }, 3);
    const auto rs = enumerate_faces(b, Execution::serial);
    const auto rp = enumerate_faces(b, Execution::parallel);
    row("enumerate_faces n=4", ts, tp,
        rs.facet_count == rp.facet_count && rs.edge_count_geometric == rp.edge_count_geometric);
  }
  {
    const CscoBasis b = build_csco(3);
    std::vector<std::vector<double>> pts(200000, std::vector<double>(8));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CounterRng rng(derive_key(11, i));
      for (auto& x : pts[i]) x = rng.uniform(-1.0, 1.0);
    }
    std::vector<double> a, p;
    const double ts = seconds([&] { a = kernels::serial::membership_margins(pts, b.alphabet); }, 3);
    const double tp = seconds([&] { p = kernels::membership_margins(pts, b.alphabet); }, 3);
    row("membership_margins 2e5", ts, tp, a == p);
  }
  {
    const CscoBasis b = build_csco(3);
    const DensityMatrix rho = random_state(3, StateKind::mixed, 5);
    FourierConsistency a, p;
    const double ts = seconds([&] { a = fourier_consistency(rho.matrix, b, 200, 1, {1, 2}, Execution::serial); }, 5);
    const double tp = seconds([&] { p = fourier_consistency(rho.matrix, b, 200, 1, {1, 2}, Execution::parallel); }, 5);
    row("fourier_consistency n=3", ts, tp, a.max_deviation == p.max_deviation);
  }
  {
    const CscoBasis b = build_csco(3);
    SupportProbe a, p;
    const double ts = seconds([&] { a = support_probe(b, 50, 2, Execution::serial); }, 5);
    const double tp = seconds([&] { p = support_probe(b, 50, 2, Execution::parallel); }, 5);
    row("support_probe n=3", ts, tp, a.max_gap == p.max_gap);
  }
  return 0;
}
