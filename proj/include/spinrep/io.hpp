#ifndef SPINREP_IO_HPP
#define SPINREP_IO_HPP

#include "spinrep/minimalpde.hpp"
#include "spinrep/nilrot.hpp"
#include "spinrep/recon.hpp"
#include "spinrep/shg.hpp"

#include <string>

namespace spinrep::io {

/// CSV columns: iu, iv, Re psi1, Im psi1, Re psi2, Im psi2, H, valid.
/// Floats are written with 17 significant digits.
void write_spinor_csv(const SpinorField& psi, const Grid2D& g, const std::string& path);

/// Reads the CSV back; grid extents are inferred from the index columns,
/// spacings/periodicity come from the supplied prototype grid (CSV carries
/// no geometry).  Parse failures throw with the offending line number.
SpinorField read_spinor_csv(const std::string& path, Grid2D& g);

/// Compact dump: magic "SPN1", u32 nu, u32 nv, u8 periodic flags, doubles
/// du, dv, origin, then row-major (Re psi1, Im psi1, Re psi2, Im psi2, H,
/// valid) as little-endian 64-bit floats.
void write_spinor_bin(const SpinorField& psi, const Grid2D& g, const std::string& path);
SpinorField read_spinor_bin(const std::string& path, Grid2D& g);

/// Spinor binary layout plus one matrix block (u32 rows, u32 cols,
/// interleaved re/im) per sample.
void write_frame_bin(const recon::FrameField& ff, const Grid2D& g, const std::string& path);

/// Profile CSV: columns s, u, v, sigma.
void write_profile_csv(const nilrot::ProfileCurve& p, const std::string& path);
nilrot::ProfileCurve read_profile_csv(const std::string& path);

std::string solve_report_json(const shg::SolveReport& rep, const std::string& solver,
                              const Grid2D& g, double tol);
std::string minimal_report_json(const minimalpde::MinimalReport& rep, const std::string& group,
                                const Grid2D& g, double tol);
std::string energy_report_json(const std::string& group, cplx E, double E_geometric, double W,
                               int chi, const Grid2D& g, double tol);

void write_text(const std::string& path, const std::string& text);

}  // namespace spinrep::io

#endif
