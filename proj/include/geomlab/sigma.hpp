// Two-dimensional sigma models with projector-valued fields: harmonicity
// residual, holomorphy classification, energy-momentum holomorphy, cubic
// identity, nilpotency order and topological charge. Fields live on a
// rectangle in C and may carry exact Wirtinger closures.
#pragma once

#include <geomlab/core.hpp>
#include <geomlab/projgeo.hpp>
#include <geomlab/zpoly.hpp>

#include <optional>
#include <string>

namespace geomlab::sigma {

struct ProjectorField {
  double x0 = 0, y0 = 0, h = 0;
  int nx = 0, ny = 0;
  int N = 0, p = 0;
  std::vector<MatC> values;  // iy * nx + ix
  std::optional<RationalMatrixFn> closure;

  cplx z(int ix, int iy) const { return {x0 + ix * h, y0 + iy * h}; }
  const MatC& at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
  MatC& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * nx + ix]; }
  bool interior(int ix, int iy, int margin = 1) const {
    return ix >= margin && iy >= margin && ix < nx - margin && iy < ny - margin;
  }

  static ProjectorField sample(const RationalMatrixFn& fn, int p, double radius, int n) {
    ProjectorField f;
    f.h = 2 * radius / (n - 1);
    f.x0 = -radius;
    f.y0 = -radius;
    f.nx = f.ny = n;
    f.p = p;
    f.closure = fn;
    f.N = static_cast<int>(fn.num.rows());
    f.values.resize(static_cast<std::size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) f.at(ix, iy) = fn.value(f.z(ix, iy));
    return f;
  }

  void validate(double tol = kTolConstructor, double continuity = 0.5) const {
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        const MatC& P = at(ix, iy);
        if (sup_abs(MatC(P - P.adjoint())) > tol || sup_abs(MatC(P * P - P)) > tol)
          throw std::invalid_argument("projector field: invariant violated at a node");
        if (ix > 0 && (at(ix - 1, iy) - P).norm() > continuity)
          throw std::invalid_argument("projector field: continuity violated");
      }
  }

  // dP/dz at a node: exact when a closure is present, else central
  // differences (interior only).
  MatC dz(int ix, int iy) const {
    if (closure) return closure->dz(z(ix, iy));
    MatC dx = (at(ix + 1, iy) - at(ix - 1, iy)) / (2 * h);
    MatC dy = (at(ix, iy + 1) - at(ix, iy - 1)) / (2 * h);
    return 0.5 * (dx - kI * dy);
  }
  MatC dzbar(int ix, int iy) const {
    if (closure) return closure->dzbar(z(ix, iy));
    MatC dx = (at(ix + 1, iy) - at(ix - 1, iy)) / (2 * h);
    MatC dy = (at(ix, iy + 1) - at(ix, iy - 1)) / (2 * h);
    return 0.5 * (dx + kI * dy);
  }
  MatC dz_dzbar(int ix, int iy) const {
    if (closure) return closure->dz_dzbar(z(ix, iy));
    // Laplacian/4 on the 5-point stencil
    MatC lap = (at(ix + 1, iy) + at(ix - 1, iy) + at(ix, iy + 1) + at(ix, iy - 1) - 4 * at(ix, iy)) /
               (h * h);
    return 0.25 * lap;
  }

  double sup_dz() const {
    double s = 0;
    for (int iy = 1; iy + 1 < ny; ++iy)
      for (int ix = 1; ix + 1 < nx; ++ix) s = std::max(s, dz(ix, iy).norm());
    return s;
  }
};

// sup over interior nodes of |[P, d2 P/dz dzbar]|
inline double harmonic_residual(const ProjectorField& f, int margin = 1) {
  if (f.nx < 2 * margin + 1 || f.ny < 2 * margin + 1)
    throw std::invalid_argument("harmonic_residual: grid too small");
  double worst = 0;
  for (int iy = margin; iy < f.ny - margin; ++iy)
    for (int ix = margin; ix < f.nx - margin; ++ix) {
      MatC m = f.dz_dzbar(ix, iy);
      const MatC& P = f.at(ix, iy);
      worst = std::max(worst, (P * m - m * P).norm());
    }
  return worst;
}

enum class Holomorphy { holomorphic, antiholomorphic, neither };

inline const char* to_string(Holomorphy h) {
  switch (h) {
    case Holomorphy::holomorphic: return "holomorphic";
    case Holomorphy::antiholomorphic: return "antiholomorphic";
    default: return "neither";
  }
}

struct Classification {
  Holomorphy kind = Holomorphy::neither;
  bool degenerate = false;   // both signs pass (constant field)
  double residual_holo = 0;  // sup |[P, dP] + dP|
  double residual_anti = 0;  // sup |[P, dP] - dP|
  double square_sup = 0;     // sup |(dP)^2|, the p = 1 cross-check
};

inline Classification holomorphy_classify(const ProjectorField& f, double tol = -1) {
  double scale = std::max(f.sup_dz(), 1e-30);
  if (tol < 0) tol = f.closure ? 1e-9 * scale : 20 * f.h * f.h * scale;
  Classification c;
  for (int iy = 1; iy + 1 < f.ny; ++iy)
    for (int ix = 1; ix + 1 < f.nx; ++ix) {
      MatC d = f.dz(ix, iy);
      const MatC& P = f.at(ix, iy);
      MatC com = P * d - d * P;
      c.residual_holo = std::max(c.residual_holo, (com + d).norm());
      c.residual_anti = std::max(c.residual_anti, (com - d).norm());
      c.square_sup = std::max(c.square_sup, (d * d).norm());
    }
  bool holo = c.residual_holo < tol, anti = c.residual_anti < tol;
  if (holo && anti) {
    c.kind = Holomorphy::holomorphic;
    c.degenerate = true;
  } else if (holo) {
    c.kind = Holomorphy::holomorphic;
  } else if (anti) {
    c.kind = Holomorphy::antiholomorphic;
  } else {
    c.kind = Holomorphy::neither;
  }
  return c;
}

// sup |dbar Tr((dP/dz)^2)|; small iff the field is (numerically) harmonic.
struct StressReport {
  double value = 0;
  bool precondition_ok = true;
  double harmonic = 0;
};

// Finite differences of the computed trace field Tr((dP/dz)^2); the trace
// itself uses the closure derivatives when present.
inline StressReport stress_holomorphy(const ProjectorField& f, double tol_harmonic = 1e-3) {
  StressReport rep;
  rep.harmonic = harmonic_residual(f);
  rep.precondition_ok = rep.harmonic < tol_harmonic;
  std::vector<cplx> t(static_cast<std::size_t>(f.nx) * f.ny, cplx(0, 0));
  int inner = f.closure ? 0 : 1;
  for (int iy = inner; iy < f.ny - inner; ++iy)
    for (int ix = inner; ix < f.nx - inner; ++ix) {
      MatC d = f.dz(ix, iy);
      t[static_cast<std::size_t>(iy) * f.nx + ix] = (d * d).trace();
    }
  double worst = 0;
  for (int iy = inner + 1; iy < f.ny - inner - 1; ++iy)
    for (int ix = inner + 1; ix < f.nx - inner - 1; ++ix) {
      auto at = [&](int jx, int jy) { return t[static_cast<std::size_t>(jy) * f.nx + jx]; };
      cplx dx = (at(ix + 1, iy) - at(ix - 1, iy)) / (2 * f.h);
      cplx dy = (at(ix, iy + 1) - at(ix, iy - 1)) / (2 * f.h);
      worst = std::max(worst, std::abs(0.5 * (dx + kI * dy)));
    }
  rep.value = worst;
  return rep;
}

// |(D_X P)^3 - 1/2 Tr((D_X P)^2) D_X P| for rank-1 fields, with
// D_X = a d/dz + b d/dzbar.
inline double cubic_identity_residual(const ProjectorField& f, cplx a, cplx b) {
  if (f.p != 1) throw std::invalid_argument("cubic_identity_residual: rank p = 1 required");
  double worst = 0;
  for (int iy = 1; iy + 1 < f.ny; ++iy)
    for (int ix = 1; ix + 1 < f.nx; ++ix) {
      MatC d = a * f.dz(ix, iy) + b * f.dzbar(ix, iy);
      MatC lhs = d * d * d;
      MatC rhs = 0.5 * (d * d).trace() * d;
      worst = std::max(worst, sup_abs(MatC(lhs - rhs)));
    }
  return worst;
}

// smallest k <= N with sup |(dP/dz)^k| < 1e-6 * (sup |dP/dz|)^k, else N + 1
inline int nilpotency_order(const ProjectorField& f) {
  double scale = f.sup_dz();
  if (scale == 0) return 1;
  for (int k = 1; k <= f.N; ++k) {
    double worst = 0;
    for (int iy = 1; iy + 1 < f.ny; ++iy)
      for (int ix = 1; ix + 1 < f.nx; ++ix) {
        MatC d = f.dz(ix, iy);
        MatC pw = d;
        for (int j = 1; j < k; ++j) pw = pw * d;
        worst = std::max(worst, sup_abs(pw));
      }
    if (worst < 1e-6 * std::pow(scale, k)) return k;
  }
  return f.N + 1;
}

// (1/2 pi i) integral of Tr(P dP ^ dP); near-integer when the field is
// close to constant near the boundary.
struct ChargeReport {
  double charge = 0;
  bool boundary_flag = false;  // boundary variation too large
};

inline ChargeReport topological_charge(const ProjectorField& f) {
  ChargeReport rep;
  cplx acc = 0;
  double interior_d = 0, boundary_d = 0;
  for (int iy = 1; iy + 1 < f.ny; ++iy)
    for (int ix = 1; ix + 1 < f.nx; ++ix) {
      MatC px, py;
      if (f.closure) {
        MatC pz = f.dz(ix, iy), pzb = f.dzbar(ix, iy);
        px = pz + pzb;
        py = kI * (pz - pzb);
      } else {
        px = (f.at(ix + 1, iy) - f.at(ix - 1, iy)) / (2 * f.h);
        py = (f.at(ix, iy + 1) - f.at(ix, iy - 1)) / (2 * f.h);
      }
      acc += (f.at(ix, iy) * (px * py - py * px)).trace() * (f.h * f.h);
      double dnorm = px.norm() + py.norm();
      bool edge = ix <= 2 || iy <= 2 || ix >= f.nx - 3 || iy >= f.ny - 3;
      (edge ? boundary_d : interior_d) = std::max(edge ? boundary_d : interior_d, dnorm);
    }
  rep.charge = (acc / (2 * M_PI * kI)).real();
  rep.boundary_flag = boundary_d > 1e-2 * std::max(interior_d, 1e-30);
  return rep;
}

struct SigmaReport {
  std::string fixture;
  double harmonic = 0;
  Classification classification;
  double stress = 0;
  int nilpotency = 0;
  double charge = 0;
};

// ---- built-in fixtures ----

// projector onto a polynomial line v(z): P = v v^+ / (v^+ v)
inline RationalMatrixFn line_projector(const std::vector<ZPoly>& v) {
  const int n = static_cast<int>(v.size());
  MatZ col(n, 1);
  for (int i = 0; i < n; ++i) col(i, 0) = v[i];
  MatZ num = col * col.adjoint();
  ZPoly den = (col.adjoint() * col)(0, 0);
  return {num, den};
}

// CP^1 chart field Z = z (degree-one rational map)
inline RationalMatrixFn cp1_holomorphic() { return line_projector({ZPoly(cplx(1, 0)), ZPoly::z()}); }
// conjugate field: Z = zbar
inline RationalMatrixFn cp1_antiholomorphic() {
  return line_projector({ZPoly(cplx(1, 0)), ZPoly::zbar()});
}
// degree-two map Z = z^2
inline RationalMatrixFn cp1_degree2() {
  return line_projector({ZPoly(cplx(1, 0)), ZPoly::z() * ZPoly::z()});
}
// non-harmonic witness Z = z + 0.3 zbar^2
inline RationalMatrixFn cp1_nonharmonic() {
  ZPoly w = ZPoly::z() + ZPoly::zbar() * ZPoly::zbar() * cplx(0.3, 0);
  return line_projector({ZPoly(cplx(1, 0)), w});
}

// CP^2 middle map of the Frenet construction for the rational curve
// (1, z, z^2): harmonic but neither holomorphic nor antiholomorphic.
inline RationalMatrixFn cp2_middle() {
  std::vector<ZPoly> v = {ZPoly(cplx(1, 0)), ZPoly::z(), ZPoly::z() * ZPoly::z()};
  std::vector<ZPoly> vp = {ZPoly(cplx(0, 0)), ZPoly(cplx(1, 0)), ZPoly::z() * cplx(2, 0)};
  MatZ colv(3, 1), colvp(3, 1);
  for (int i = 0; i < 3; ++i) {
    colv(i, 0) = v[i];
    colvp(i, 0) = vp[i];
  }
  ZPoly s = (colv.adjoint() * colv)(0, 0);        // |v|^2
  ZPoly overlap = (colv.adjoint() * colvp)(0, 0);  // <v, v'>
  // f1 = s v' - <v,v'> v  (the s factor clears denominators)
  MatZ f1(3, 1);
  for (int i = 0; i < 3; ++i) f1(i, 0) = s * vp[i] - overlap * v[i];
  MatZ num = f1 * f1.adjoint();
  ZPoly den = (f1.adjoint() * f1)(0, 0);
  return {num, den};
}

// rank-2 chart field in G_{4,2}
inline RationalMatrixFn grassmann42_field() {
  // Z(z) = [[z, 0.2], [0.3 z, 0.1 z]]; P = (1;Z)(1+Z^+Z)^{-1}(1,Z^+)
  MatZ Z(2, 2);
  Z(0, 0) = ZPoly::z();
  Z(0, 1) = ZPoly(cplx(0.2, 0));
  Z(1, 0) = ZPoly::z() * cplx(0.3, 0);
  Z(1, 1) = ZPoly::z() * cplx(0.1, 0);
  MatZ B(4, 2);
  B(0, 0) = ZPoly(cplx(1, 0));
  B(1, 1) = ZPoly(cplx(1, 0));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) B(2 + i, j) = Z(i, j);
  MatZ M = MatZ(2, 2);
  {
    MatZ ZZ = Z.adjoint() * Z;
    ZZ(0, 0) = ZZ(0, 0) + ZPoly(cplx(1, 0));
    ZZ(1, 1) = ZZ(1, 1) + ZPoly(cplx(1, 0));
    // 2x2 adjugate; the determinant becomes the shared denominator
    M(0, 0) = ZZ(1, 1);
    M(1, 1) = ZZ(0, 0);
    M(0, 1) = -ZZ(0, 1);
    M(1, 0) = -ZZ(1, 0);
    MatZ num = B * M * B.adjoint();
    ZPoly det = ZZ(0, 0) * ZZ(1, 1) - ZZ(0, 1) * ZZ(1, 0);
    return {num, det};
  }
}

inline ProjectorField builtin_fixture(const std::string& name, int nodes = 65, double radius = 1.0) {
  if (name == "cp1-holomorphic") return ProjectorField::sample(cp1_holomorphic(), 1, radius, nodes);
  if (name == "cp1-antiholomorphic")
    return ProjectorField::sample(cp1_antiholomorphic(), 1, radius, nodes);
  if (name == "cp1-degree2") return ProjectorField::sample(cp1_degree2(), 1, radius, nodes);
  if (name == "cp1-nonharmonic") return ProjectorField::sample(cp1_nonharmonic(), 1, radius, nodes);
  if (name == "cp2-middle") return ProjectorField::sample(cp2_middle(), 1, radius, nodes);
  if (name == "grassmann42") {
    auto f = ProjectorField::sample(grassmann42_field(), 2, radius, nodes);
    return f;
  }
  throw std::invalid_argument("unknown sigma fixture: " + name);
}

inline SigmaReport analyze(const std::string& fixture, int nodes = 65, double radius = 1.0) {
  ProjectorField f = builtin_fixture(fixture, nodes, radius);
  SigmaReport rep;
  rep.fixture = fixture;
  rep.harmonic = harmonic_residual(f);
  rep.classification = holomorphy_classify(f);
  rep.stress = stress_holomorphy(f).value;
  rep.nilpotency = nilpotency_order(f);
  rep.charge = topological_charge(f).charge;
  return rep;
}

}  // namespace geomlab::sigma
