// Compares the parallel field kernels against the serial reference.
#include "spinrep/serial_ref.hpp"

#include <chrono>
#include <cstdio>

using namespace spinrep;

namespace {

double seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double time_best(F fn, int reps = 5) {
  double best = 1e30;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, seconds(t0));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 1024;
  const Grid2D g(n, n, 0.01, 0.01, true, true);
  SpinorField psi;
  const auto ns = static_cast<size_t>(g.size());
  psi.psi1.resize(ns);
  psi.psi2.resize(ns);
  psi.H.assign(ns, 0.5);
  psi.mask.assign(ns, 1);
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) {
      const cplx z = g.z(iu, iv);
      const auto i = static_cast<size_t>(g.id(iu, iv));
      psi.psi1[i] = std::exp(cplx(0.0, 1.0) * z) + 0.3;
      psi.psi2[i] = std::cos(z) + cplx(0.1, 0.2);
    }

  std::printf("grid %dx%d\n", n, n);
  std::printf("%-14s %12s %12s %8s\n", "kernel", "serial [s]", "parallel [s]", "speedup");

  struct RowT {
    const char* name;
    double ts, tp;
  };
  const RowT rows[] = {
      {"d_z", time_best([&] { serial::d_z(psi.psi1, g); }),
       time_best([&] { d_z(psi.psi1, g); })},
      {"d_zbar", time_best([&] { serial::d_zbar(psi.psi1, g); }),
       time_best([&] { d_zbar(psi.psi1, g); })},
      {"factorize_Z", time_best([&] { serial::factorize_Z(psi); }),
       time_best([&] { factorize_Z(psi); })},
      {"potentials", time_best([&] { serial::potentials(psi, liegeo::GroupTag::Nil); }),
       time_best([&] { potentials(psi, liegeo::GroupTag::Nil); })},
  };
  for (const auto& r : rows)
    std::printf("%-14s %12.6f %12.6f %8.2f\n", r.name, r.ts, r.tp, r.ts / r.tp);
  return 0;
}
