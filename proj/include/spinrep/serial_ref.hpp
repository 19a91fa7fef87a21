#ifndef SPINREP_SERIAL_REF_HPP
#define SPINREP_SERIAL_REF_HPP

#include "spinrep/spinfield.hpp"

/// Plain single-threaded reference implementations of the parallel field
/// kernels; kept for equivalence testing and benchmarking.
namespace spinrep::serial {

CField d_u(const CField& f, const Grid2D& g);
CField d_v(const CField& f, const Grid2D& g);
CField d_z(const CField& f, const Grid2D& g);
CField d_zbar(const CField& f, const Grid2D& g);

ZFactors factorize_Z(const SpinorField& psi);
RField induced_metric(const SpinorField& psi);
PotentialField potentials(const SpinorField& psi, liegeo::GroupTag group, double mu = 0.0);

}  // namespace spinrep::serial

#endif
