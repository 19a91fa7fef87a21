#ifndef SPINREP_GRID_HPP
#define SPINREP_GRID_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spinrep {

using cplx = std::complex<double>;
using CField = std::vector<cplx>;
using RField = std::vector<double>;
using Mask = std::vector<std::uint8_t>;

/// Uniform conformal grid for z = u + iv.  Samples are stored row-major
/// with index id(iu, iv) = iu*nv + iv.
struct Grid2D {
  int nu = 0, nv = 0;
  double du = 0.0, dv = 0.0;
  bool periodic_u = false, periodic_v = false;
  cplx origin{0.0, 0.0};

  Grid2D() = default;
  Grid2D(int nu_, int nv_, double du_, double dv_, bool pu = false, bool pv = false,
         cplx origin_ = {0.0, 0.0})
      : nu(nu_), nv(nv_), du(du_), dv(dv_), periodic_u(pu), periodic_v(pv), origin(origin_) {
    if (nu < 4 || nv < 4) throw std::invalid_argument("Grid2D: need nu, nv >= 4");
    if (du <= 0.0 || dv <= 0.0) throw std::invalid_argument("Grid2D: need positive spacings");
  }

  int size() const { return nu * nv; }
  int id(int iu, int iv) const { return iu * nv + iv; }
  cplx z(int iu, int iv) const { return origin + cplx(iu * du, iv * dv); }
  bool interior_u(int iu) const { return periodic_u || (iu > 0 && iu < nu - 1); }
  bool interior_v(int iv) const { return periodic_v || (iv > 0 && iv < nv - 1); }
};

inline Mask full_mask(const Grid2D& g) { return Mask(static_cast<size_t>(g.size()), 1); }

}  // namespace spinrep

#endif
