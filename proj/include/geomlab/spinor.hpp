// Clifford representation on 2^l-dimensional spinors (ladder construction),
// Fock packing of antiholomorphic forms, simple spinors and their
// correspondence with isometric complex structures, chirality split.
#pragma once

#include <geomlab/core.hpp>
#include <geomlab/exterior.hpp>
#include <geomlab/jspace.hpp>

#include <vector>

namespace geomlab::spinor {

struct CliffordRep {
  int ell = 0;
  std::vector<MatC> gamma;  // 2l Hermitian operators of size 2^l

  int dim() const { return 1 << ell; }

  // complex-linear extension to coordinate vectors of E*_c
  MatC apply(const VecC& omega) const {
    MatC m = MatC::Zero(dim(), dim());
    for (int i = 0; i < 2 * ell; ++i) m += omega[i] * gamma[i];
    return m;
  }
};

// Ladder construction: gamma_k = Z...Z X I...I, gamma_{l+k} = Z...Z Y I...I.
// With this ordering the Fock vacuum of the standard structure J0 is the
// first basis vector.
inline CliffordRep build_gamma(int ell) {
  if (ell < 1 || ell > 6) throw std::invalid_argument("build_gamma: l must be in [1, 6]");
  MatC X(2, 2), Y(2, 2), Z(2, 2), I2 = MatC::Identity(2, 2);
  X << 0, 1, 1, 0;
  Y << 0, -kI, kI, 0;
  Z << 1, 0, 0, -1;
  auto kron = [](const MatC& a, const MatC& b) {
    MatC r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
  };
  auto site = [&](const MatC& op, int k) {
    MatC acc = MatC::Identity(1, 1);
    for (int j = 0; j < ell; ++j) acc = kron(acc, j < k ? Z : (j == k ? op : I2));
    return acc;
  };
  CliffordRep rep;
  rep.ell = ell;
  rep.gamma.resize(2 * ell);
  for (int k = 0; k < ell; ++k) {
    rep.gamma[k] = site(X, k);
    rep.gamma[ell + k] = site(Y, k);
  }
  return rep;
}

inline double clifford_relation_residual(const CliffordRep& rep) {
  double worst = 0;
  const int n = 2 * rep.ell;
  for (int i = 0; i < n; ++i) {
    worst = std::max(worst, sup_abs(MatC(rep.gamma[i] - rep.gamma[i].adjoint())));
    for (int j = 0; j < n; ++j) {
      MatC anti = rep.gamma[i] * rep.gamma[j] + rep.gamma[j] * rep.gamma[i];
      MatC expect = (i == j) ? MatC(2.0 * MatC::Identity(rep.dim(), rep.dim()))
                             : MatC(MatC::Zero(rep.dim(), rep.dim()));
      worst = std::max(worst, sup_abs(MatC(anti - expect)));
    }
  }
  return worst;
}

// dimension of {X : [X, gamma_i] = 0 for all i}; 1 means irreducible
inline int commutant_dimension(const CliffordRep& rep, double tol = 1e-9) {
  const int d = rep.dim();
  MatC stacked(2 * rep.ell * d * d, d * d);
  for (int g = 0; g < 2 * rep.ell; ++g) {
    const MatC& G = rep.gamma[g];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            cplx v = 0;
            if (j == l) v += G(i, k);
            if (i == k) v -= G(l, j);
            stacked(g * d * d + i * d + j, k * d + l) = v;
          }
  }
  Eigen::JacobiSVD<MatC> svd(stacked);
  int kernel = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) < tol * svd.singularValues()(0)) ++kernel;
  return kernel;
}

// joint kernel of gamma(omega) over a basis of (1,0)-forms of J; must be a
// line, returned with the first sizable coordinate made real positive.
inline VecC vacuum_from_J(const CliffordRep& rep, const MatR& J) {
  jspace::check_isometric(J, 1e-8);
  MatC coframe = jspace::holomorphic_coframe(J);
  const int d = rep.dim();
  MatC stacked(rep.ell * d, d);
  for (int k = 0; k < rep.ell; ++k) stacked.middleRows(k * d, d) = rep.apply(coframe.col(k));
  Eigen::JacobiSVD<MatC> svd(stacked, Eigen::ComputeFullV);
  int kernel = 0;
  for (int i = 0; i < d; ++i)
    if (svd.singularValues()(i) < 1e-9 * svd.singularValues()(0)) ++kernel;
  if (kernel != 1) throw std::runtime_error("vacuum_from_J: joint kernel dimension != 1");
  VecC psi = svd.matrixV().col(d - 1);
  // phase convention: first coordinate above threshold real positive
  for (int i = 0; i < d; ++i)
    if (std::abs(psi[i]) > 1e-8) {
      psi *= std::conj(psi[i]) / std::abs(psi[i]);
      break;
    }
  return psi;
}

struct AnnihilatorSpace {
  MatC basis;  // columns in E*_c coordinates
  bool simple = false;
  double isotropy = 0;  // max |(w_i, w_j)| over basis pairs
};

inline AnnihilatorSpace annihilator(const CliffordRep& rep, const VecC& psi, double tol = 1e-9) {
  if (psi.norm() == 0) throw std::invalid_argument("annihilator: zero spinor");
  const int d = rep.dim();
  const int n = 2 * rep.ell;
  MatC map(d, n);
  for (int i = 0; i < n; ++i) map.col(i) = rep.gamma[i] * psi;
  Eigen::JacobiSVD<MatC> svd(map, Eigen::ComputeFullV);
  int kernel = 0;
  for (int i = 0; i < n; ++i)
    if (i >= svd.singularValues().size() || svd.singularValues()(i) < tol * psi.norm()) ++kernel;
  AnnihilatorSpace out;
  out.basis = svd.matrixV().rightCols(kernel);
  out.simple = kernel == rep.ell;
  for (int a = 0; a < kernel; ++a)
    for (int b = 0; b < kernel; ++b) {
      cplx pair = out.basis.col(a).transpose() * out.basis.col(b);  // bilinear, no conjugation
      out.isotropy = std::max(out.isotropy, std::abs(pair));
    }
  return out;
}

// Reconstruct the isometric structure with Lambda^{1,0} = I(psi).
inline MatR j_from_simple_spinor(const CliffordRep& rep, const VecC& psi) {
  AnnihilatorSpace ann = annihilator(rep, psi);
  if (!ann.simple) throw std::invalid_argument("j_from_simple_spinor: spinor is not simple");
  const int n = 2 * rep.ell;
  MatC full(n, n);
  full.leftCols(rep.ell) = ann.basis;
  full.rightCols(rep.ell) = ann.basis.conjugate();
  MatC diag = MatC::Zero(n, n);
  for (int i = 0; i < rep.ell; ++i) {
    diag(i, i) = kI;
    diag(rep.ell + i, rep.ell + i) = -kI;
  }
  MatC jt = full * diag * full.inverse();
  MatR J = jt.transpose().real();
  jspace::check_isometric(J, 1e-7);
  return J;
}

// Phi((1/sqrt2 gamma(w)) creation): pack an inhomogeneous antiholomorphic
// form, given by one ExteriorForm per degree, into a spinor.
inline VecC fock_pack(const CliffordRep& rep, const MatR& J, const std::vector<ExteriorForm>& comps,
                      const VecC& vacuum, double tol = 1e-8) {
  MatC alphabar = jspace::holomorphic_coframe(J).conjugate();
  const int ell = rep.ell;
  FrameMetric eu = FrameMetric::euclidean(2 * ell);
  VecC out = VecC::Zero(rep.dim());
  for (const auto& comp : comps) {
    if (comp.dim() != 2 * ell) throw DimensionMismatch("fock_pack: wrong form dimension");
    const int k = comp.degree();
    double packed = 0;
    for (const auto& subset : all_subsets(ell, k)) {
      ExteriorForm basis_form_ab = jspace::wedge_columns(alphabar, subset);
      cplx coeff = hermitian_pairing(basis_form_ab, comp, eu);
      if (coeff == cplx(0, 0)) continue;
      VecC cur = vacuum;
      for (auto it = subset.rbegin(); it != subset.rend(); ++it)
        cur = (1.0 / std::sqrt(2.0)) * (rep.apply(alphabar.col(*it)) * cur);
      out += coeff * cur;
      packed += std::norm(coeff);
    }
    double total = std::abs(hermitian_pairing(comp, comp, eu));
    if (std::abs(total - packed) > tol * std::max(1.0, total))
      throw std::invalid_argument("fock_pack: form has components outside Lambda^{0,k}");
  }
  return out;
}

// chirality operator: phase-normalized product of all gammas, fixed so the
// standard vacuum has chirality +1
inline MatC chirality_operator(const CliffordRep& rep) {
  MatC prod = MatC::Identity(rep.dim(), rep.dim());
  for (const auto& g : rep.gamma) prod = prod * g;
  prod *= std::pow(kI, rep.ell);
  // the square is +1; fix the sign on the standard vacuum e_1
  if (prod(0, 0).real() < 0) prod = -prod;
  return prod;
}

// unitary exp(sum c_ij [gamma_i, gamma_j]/4) for an antisymmetric real
// coefficient matrix c
inline MatC spin_rotation(const CliffordRep& rep, const MatR& c) {
  const int d = rep.dim();
  MatC K = MatC::Zero(d, d);
  for (int i = 0; i < 2 * rep.ell; ++i)
    for (int j = i + 1; j < 2 * rep.ell; ++j)
      K += c(i, j) * 0.5 * (rep.gamma[i] * rep.gamma[j] - rep.gamma[j] * rep.gamma[i]) * 0.5;
  // K is anti-Hermitian; exponentiate through the Hermitian iK
  Eigen::SelfAdjointEigenSolver<MatC> es(MatC(kI * K));
  VecC phases(d);
  for (int i = 0; i < d; ++i) phases[i] = std::exp(-kI * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// SO matrix R with U gamma(w) U^+ = gamma(R w)
inline MatR rotation_of_spin(const CliffordRep& rep, const MatC& U) {
  const int n = 2 * rep.ell;
  MatR R(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      R(m, k) = ((rep.gamma[m] * U * rep.gamma[k] * U.adjoint()).trace() / double(rep.dim())).real();
  return R;
}

}  // namespace geomlab::spinor
