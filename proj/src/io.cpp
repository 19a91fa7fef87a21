#include "spinrep/io.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spinrep::io {

namespace {

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

[[noreturn]] void io_fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

template <typename T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is, const std::string& path) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) io_fail(path, "truncated binary dump");
  return v;
}

}  // namespace

void write_spinor_csv(const SpinorField& psi, const Grid2D& g, const std::string& path) {
  psi.require_size(g);
  std::ofstream os(path);
  if (!os) io_fail(path, "cannot open for writing");
  os << "iu,iv,re_psi1,im_psi1,re_psi2,im_psi2,H,valid\n";
  for (int iu = 0; iu < g.nu; ++iu)
    for (int iv = 0; iv < g.nv; ++iv) {
      const auto i = static_cast<size_t>(g.id(iu, iv));
      os << iu << ',' << iv << ',' << fmt17(psi.psi1[i].real()) << ','
         << fmt17(psi.psi1[i].imag()) << ',' << fmt17(psi.psi2[i].real()) << ','
         << fmt17(psi.psi2[i].imag()) << ',' << fmt17(psi.H[i]) << ','
         << int(psi.mask[i]) << '\n';
    }
  if (!os) io_fail(path, "write failure");
}

SpinorField read_spinor_csv(const std::string& path, Grid2D& g) {
  std::ifstream is(path);
  if (!is) io_fail(path, "cannot open");
  std::string line;
  int lineno = 0;
  struct Row {
    int iu, iv, valid;
    double r1, i1, r2, i2, H;
  };
  std::vector<Row> rows;
  int numax = -1, nvmax = -1;
  while (std::getline(is, line)) {
    ++lineno;
    if (lineno == 1 || line.empty()) continue;  // header
    Row r;
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    if (!(ls >> r.iu >> r.iv >> r.r1 >> r.i1 >> r.r2 >> r.i2 >> r.H >> r.valid))
      io_fail(path, "parse error at line " + std::to_string(lineno));
    if (r.iu < 0 || r.iv < 0) io_fail(path, "negative index at line " + std::to_string(lineno));
    numax = std::max(numax, r.iu);
    nvmax = std::max(nvmax, r.iv);
    rows.push_back(r);
  }
  if (numax < 3 || nvmax < 3) io_fail(path, "grid too small or file empty");
  g = Grid2D(numax + 1, nvmax + 1, g.du > 0.0 ? g.du : 1.0, g.dv > 0.0 ? g.dv : 1.0,
             g.periodic_u, g.periodic_v, g.origin);
  const auto n = static_cast<size_t>(g.size());
  if (rows.size() != n) io_fail(path, "sample count does not fill the grid");
  SpinorField psi;
  psi.psi1.resize(n);
  psi.psi2.resize(n);
  psi.H.resize(n);
  psi.mask.assign(n, 0);
  for (const Row& r : rows) {
    const auto i = static_cast<size_t>(g.id(r.iu, r.iv));
    psi.psi1[i] = {r.r1, r.i1};
    psi.psi2[i] = {r.r2, r.i2};
    psi.H[i] = r.H;
    psi.mask[i] = r.valid ? 1 : 0;
  }
  return psi;
}

void write_spinor_bin(const SpinorField& psi, const Grid2D& g, const std::string& path) {
  psi.require_size(g);
  std::ofstream os(path, std::ios::binary);
  if (!os) io_fail(path, "cannot open for writing");
  os.write("SPN1", 4);
  put(os, static_cast<std::uint32_t>(g.nu));
  put(os, static_cast<std::uint32_t>(g.nv));
  put(os, static_cast<std::uint8_t>(g.periodic_u));
  put(os, static_cast<std::uint8_t>(g.periodic_v));
  put(os, g.du);
  put(os, g.dv);
  put(os, g.origin.real());
  put(os, g.origin.imag());
  for (size_t i = 0; i < psi.psi1.size(); ++i) {
    put(os, psi.psi1[i].real());
    put(os, psi.psi1[i].imag());
    put(os, psi.psi2[i].real());
    put(os, psi.psi2[i].imag());
    put(os, psi.H[i]);
    put(os, static_cast<double>(psi.mask[i]));
  }
  if (!os) io_fail(path, "write failure");
}

SpinorField read_spinor_bin(const std::string& path, Grid2D& g) {
  std::ifstream is(path, std::ios::binary);
  if (!is) io_fail(path, "cannot open");
  char magic[4];
  is.read(magic, 4);
  if (!is || std::string(magic, 4) != "SPN1") io_fail(path, "bad magic");
  const auto nu = get<std::uint32_t>(is, path);
  const auto nv = get<std::uint32_t>(is, path);
  const bool pu = get<std::uint8_t>(is, path) != 0;
  const bool pv = get<std::uint8_t>(is, path) != 0;
  const double du = get<double>(is, path), dv = get<double>(is, path);
  const double ore = get<double>(is, path), oim = get<double>(is, path);
  g = Grid2D(static_cast<int>(nu), static_cast<int>(nv), du, dv, pu, pv, cplx(ore, oim));
  const auto n = static_cast<size_t>(g.size());
  SpinorField psi;
  psi.psi1.resize(n);
  psi.psi2.resize(n);
  psi.H.resize(n);
  psi.mask.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const double r1 = get<double>(is, path), i1 = get<double>(is, path);
    const double r2 = get<double>(is, path), i2 = get<double>(is, path);
    psi.psi1[i] = {r1, i1};
    psi.psi2[i] = {r2, i2};
    psi.H[i] = get<double>(is, path);
    psi.mask[i] = get<double>(is, path) != 0.0 ? 1 : 0;
  }
  return psi;
}

void write_frame_bin(const recon::FrameField& ff, const Grid2D& g, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) io_fail(path, "cannot open for writing");
  os.write("SPN1", 4);
  put(os, static_cast<std::uint32_t>(g.nu));
  put(os, static_cast<std::uint32_t>(g.nv));
  put(os, static_cast<std::uint8_t>(g.periodic_u));
  put(os, static_cast<std::uint8_t>(g.periodic_v));
  put(os, g.du);
  put(os, g.dv);
  put(os, g.origin.real());
  put(os, g.origin.imag());
  for (size_t i = 0; i < ff.f.size(); ++i) {
    for (int m = 0; m < 3; ++m) {
      put(os, ff.Psi.comp[static_cast<size_t>(m)][i].real());
      put(os, ff.Psi.comp[static_cast<size_t>(m)][i].imag());
    }
    put(os, static_cast<double>(ff.mask[i]));
    const Eigen::MatrixXcd& M = ff.f[i].m;
    put(os, static_cast<std::uint32_t>(M.rows()));
    put(os, static_cast<std::uint32_t>(M.cols()));
    for (Eigen::Index r = 0; r < M.rows(); ++r)
      for (Eigen::Index c = 0; c < M.cols(); ++c) {
        put(os, M(r, c).real());
        put(os, M(r, c).imag());
      }
  }
  if (!os) io_fail(path, "write failure");
}

void write_profile_csv(const nilrot::ProfileCurve& p, const std::string& path) {
  std::ofstream os(path);
  if (!os) io_fail(path, "cannot open for writing");
  os << "s,u,v,sigma\n";
  for (size_t j = 0; j < p.size(); ++j)
    os << fmt17(p.s[j]) << ',' << fmt17(p.u[j]) << ',' << fmt17(p.v[j]) << ','
       << fmt17(p.sigma[j]) << '\n';
  if (!os) io_fail(path, "write failure");
}

nilrot::ProfileCurve read_profile_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) io_fail(path, "cannot open");
  nilrot::ProfileCurve p;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (lineno == 1 || line.empty()) continue;
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    double s, u, v, sg;
    if (!(ls >> s >> u >> v >> sg))
      io_fail(path, "parse error at line " + std::to_string(lineno));
    p.s.push_back(s);
    p.u.push_back(u);
    p.v.push_back(v);
    p.sigma.push_back(sg);
  }
  if (p.size() < 2) io_fail(path, "profile too short");
  p.h = p.s[1] - p.s[0];
  p.closed_pole_to_pole =
      p.u.front() == 0.0 && p.u.back() == 0.0 && std::abs(p.sigma.back() - M_PI) < 1e-9;
  return p;
}

std::string solve_report_json(const shg::SolveReport& rep, const std::string& solver,
                              const Grid2D& g, double tol) {
  nlohmann::json j;
  j["solver"] = solver;
  j["grid"] = {g.nu, g.nv};
  j["tol"] = tol;
  j["converged"] = rep.converged;
  j["iterations"] = rep.iterations;
  j["residual"] = rep.residual;
  j["residual_imag"] = rep.residual_imag;
  j["history"] = rep.history;
  return j.dump(2);
}

std::string minimal_report_json(const minimalpde::MinimalReport& rep, const std::string& group,
                                const Grid2D& g, double tol) {
  nlohmann::json j;
  j["solver"] = "minimal";
  j["group"] = group;
  j["grid"] = {g.nu, g.nv};
  j["tol"] = tol;
  j["converged"] = rep.converged;
  j["iterations"] = rep.iterations;
  j["residual"] = rep.residual;
  j["ea_range"] = {rep.ea_min, rep.ea_max};
  j["history"] = rep.history;
  return j.dump(2);
}

std::string energy_report_json(const std::string& group, cplx E, double E_geometric, double W,
                               int chi, const Grid2D& g, double tol) {
  nlohmann::json j;
  j["group"] = group;
  j["E_re"] = E.real();
  j["E_im"] = E.imag();
  j["E_geometric"] = E_geometric;
  j["W"] = W;
  j["chi"] = chi;
  j["grid"] = {g.nu, g.nv};
  j["tol"] = tol;
  return j.dump(2);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) io_fail(path, "cannot open for writing");
  os << text << '\n';
  if (!os) io_fail(path, "write failure");
}

}  // namespace spinrep::io
