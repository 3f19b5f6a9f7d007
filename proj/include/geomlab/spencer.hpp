// Prolongations of matrix Lie algebras and the Koszul-type delta complex on
// g^(k) (x) Lambda^s, with cohomology dimensions by exact rank-nullity.
//
// A symmetric (k+1)-linear map t is stored by its evaluations t^mu_M on
// weakly increasing index tuples M; delta acts by moving one antisymmetric
// slot into the symmetric block with alternating signs. Everything is exact
// over the rationals.
#pragma once

#include <geomlab/multiindex.hpp>
#include <geomlab/ratlin.hpp>

#include <map>
#include <string>
#include <vector>

namespace geomlab::spencer {

struct MatrixLieAlgebra {
  int n = 0;
  std::string name;
  std::vector<RatMat> basis;  // n x n rational matrices

  int dim() const { return static_cast<int>(basis.size()); }
};

inline std::vector<Rat> flatten(const RatMat& m) {
  std::vector<Rat> v;
  v.reserve(m.rows() * m.cols());
  for (std::int64_t i = 0; i < m.rows(); ++i)
    for (std::int64_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

inline RatMat commutator(const RatMat& a, const RatMat& b) {
  const auto n = a.rows();
  RatMat c(n, n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) {
      Rat s(0);
      for (std::int64_t k = 0; k < n; ++k) s += a(i, k) * b(k, j) - b(i, k) * a(k, j);
      c(i, j) = s;
    }
  return c;
}

// Exact structure checks: basis independence and closure under commutator.
inline bool is_lie_algebra(const MatrixLieAlgebra& g) {
  SpanTracker span(g.n * g.n);
  for (const auto& b : g.basis)
    if (!span.add(flatten(b))) return false;  // dependent basis
  for (std::size_t i = 0; i < g.basis.size(); ++i)
    for (std::size_t j = i + 1; j < g.basis.size(); ++j)
      if (!span.contains(flatten(commutator(g.basis[i], g.basis[j])))) return false;
  return true;
}

// ---- shipped algebras ----

inline MatrixLieAlgebra gl(int n) {
  MatrixLieAlgebra g{n, "gl(" + std::to_string(n) + ",R)", {}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RatMat m(n, n);
      m(i, j) = 1;
      g.basis.push_back(m);
    }
  return g;
}

inline MatrixLieAlgebra so(int n) {
  MatrixLieAlgebra g{n, "o(" + std::to_string(n) + ")", {}};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      RatMat m(n, n);
      m(i, j) = 1;
      m(j, i) = -1;
      g.basis.push_back(m);
    }
  return g;
}

inline MatrixLieAlgebra co(int n) {
  MatrixLieAlgebra g = so(n);
  g.name = "co(" + std::to_string(n) + ")";
  RatMat id(n, n);
  for (int i = 0; i < n; ++i) id(i, i) = 1;
  g.basis.push_back(id);
  return g;
}

// sp(l, R) acting on R^{2l} with the symplectic form [[0, I], [-I, 0]]:
// matrices [[A, B], [C, -A^t]] with B, C symmetric.
inline MatrixLieAlgebra sp(int l) {
  const int n = 2 * l;
  MatrixLieAlgebra g{n, "sp(" + std::to_string(l) + ",R)", {}};
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      RatMat m(n, n);
      m(i, j) = 1;
      m(l + j, l + i) = -1;
      g.basis.push_back(m);
    }
  for (int i = 0; i < l; ++i)
    for (int j = i; j < l; ++j) {
      RatMat b(n, n);
      b(i, l + j) = 1;
      b(j, l + i) = 1;
      g.basis.push_back(b);
      RatMat c(n, n);
      c(l + i, j) = 1;
      c(l + j, i) = 1;
      g.basis.push_back(c);
    }
  return g;
}

// gl(l, C) embedded in gl(2l, R): matrices commuting with J0 = [[0,-I],[I,0]],
// i.e. [[A, -B], [B, A]].
inline MatrixLieAlgebra gl_complex(int l) {
  const int n = 2 * l;
  MatrixLieAlgebra g{n, "gl(" + std::to_string(l) + ",C)", {}};
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      RatMat a(n, n);
      a(i, j) = 1;
      a(l + i, l + j) = 1;
      g.basis.push_back(a);
      RatMat b(n, n);
      b(i, l + j) = -1;
      b(l + i, j) = 1;
      g.basis.push_back(b);
    }
  return g;
}

inline MatrixLieAlgebra by_name(const std::string& name) {
  auto num = [&](std::size_t at) { return name[at] - '0'; };
  if (name.rfind("gl", 0) == 0 && name.back() == 'C') return gl_complex(num(2));
  if (name.rfind("gl", 0) == 0) return gl(num(2));
  if (name.rfind("co", 0) == 0) return co(num(2));
  if (name.rfind("o", 0) == 0) return so(num(1));
  if (name.rfind("sp", 0) == 0) return sp(num(2));
  throw std::invalid_argument("unknown algebra name: " + name);
}

// ---- prolongations ----

// Basis element of g^(k): evaluations t^mu_M over multisets M of size k+1,
// flattened as mu * num_multisets + rank(M).
struct ProlongationSpace {
  int n = 0;
  int k = 0;
  std::vector<Multi> multis;               // multisets of size k+1
  std::vector<std::vector<Rat>> basis;     // each of length n * multis.size()

  int dim() const { return static_cast<int>(basis.size()); }
  std::int64_t coords() const { return static_cast<std::int64_t>(n) * multis.size(); }
  std::int64_t index(int mu, std::int64_t m) const { return mu * static_cast<std::int64_t>(multis.size()) + m; }
};

// Functionals on n x n matrices vanishing exactly on span(g).
inline std::vector<std::vector<Rat>> complement_functionals(const MatrixLieAlgebra& g) {
  RatMat gt(g.dim(), g.n * g.n);
  for (int b = 0; b < g.dim(); ++b) {
    auto v = flatten(g.basis[b]);
    for (std::int64_t j = 0; j < gt.cols(); ++j) gt(b, j) = v[j];
  }
  return nullspace(gt);
}

inline ProlongationSpace prolongation(const MatrixLieAlgebra& g, int k) {
  if (k < 0) throw std::invalid_argument("prolongation: k must be >= 0");
  ProlongationSpace ps;
  ps.n = g.n;
  ps.k = k;
  ps.multis = all_multisets(g.n, k + 1);
  const auto lam = complement_functionals(g);
  const auto qs = all_multisets(g.n, k);
  std::vector<Multi> table = ps.multis;

  RatMat constraints(static_cast<std::int64_t>(qs.size()) * lam.size(), ps.coords());
  std::int64_t row = 0;
  for (const auto& q : qs) {
    for (const auto& l : lam) {
      // functional l applied to the matrix (mu,nu) -> t^mu_{q + nu}
      for (int mu = 0; mu < g.n; ++mu)
        for (int nu = 0; nu < g.n; ++nu) {
          const Rat& c = l[mu * g.n + nu];
          if (c == 0) continue;
          auto m = multiset_insert(q, nu);
          constraints(row, ps.index(mu, multiset_rank(m, table))) += c;
        }
      ++row;
    }
  }
  ps.basis = nullspace(constraints);
  return ps;
}

inline int prolongation_dim(const MatrixLieAlgebra& g, int k) { return prolongation(g, k).dim(); }

// Smallest k with g^(k) = 0, searched up to k_max; returns k_max + 1 if the
// algebra does not terminate in range.
inline int order(const MatrixLieAlgebra& g, int k_max = 4) {
  for (int k = 1; k <= k_max; ++k)
    if (prolongation_dim(g, k) == 0) return k;
  return k_max + 1;
}

// ---- the delta complex ----

// Cochain in g^(r-1) (x) Lambda^s stored by evaluations K^mu_{M|A} with M a
// multiset of size r and A an increasing s-subset.
struct Cochain {
  int n = 0;
  int r = 0;  // symmetric slots
  int s = 0;  // antisymmetric slots
  std::vector<Multi> multis;
  std::vector<Index> subsets;
  std::vector<Rat> values;  // index: (mu * multis.size() + m) * subsets.size() + a

  static Cochain zero(int n, int r, int s) {
    Cochain c;
    c.n = n;
    c.r = r;
    c.s = s;
    c.multis = all_multisets(n, r);
    c.subsets = all_subsets(n, s);
    c.values.assign(static_cast<std::size_t>(n) * c.multis.size() * c.subsets.size(), Rat(0));
    return c;
  }

  std::int64_t idx(int mu, std::int64_t m, std::int64_t a) const {
    return (mu * static_cast<std::int64_t>(multis.size()) + m) * subsets.size() + a;
  }
  Rat& at(int mu, const Multi& m, const Index& a) {
    return values[idx(mu, multiset_rank(m, multis), subset_rank(a, n))];
  }
  const Rat& at(int mu, const Multi& m, const Index& a) const {
    return values[idx(mu, multiset_rank(m, multis), subset_rank(a, n))];
  }
};

// delta K (v_1..v_{r-1}; w_0..w_s) = sum_j (-1)^j K(w_j, v...; w_0..^j..w_s)
inline Cochain delta(const Cochain& c) {
  if (c.r < 1) {
    Cochain z = Cochain::zero(c.n, 0, c.s + 1);
    z.r = -1;  // marker: target is zero space
    return z;
  }
  Cochain out = Cochain::zero(c.n, c.r - 1, c.s + 1);
  for (int mu = 0; mu < c.n; ++mu)
    for (std::size_t m = 0; m < out.multis.size(); ++m)
      for (std::size_t a = 0; a < out.subsets.size(); ++a) {
        const Index& A = out.subsets[a];
        Rat acc(0);
        for (std::size_t j = 0; j < A.size(); ++j) {
          Index rest = A;
          rest.erase(rest.begin() + j);
          Multi with = multiset_insert(out.multis[m], A[j]);
          Rat term = c.at(mu, with, rest);
          acc += (j % 2 == 0) ? term : -term;
        }
        out.values[out.idx(mu, m, a)] = acc;
      }
  return out;
}

// Matrix of delta from C^{r,s}(g) (coordinates in the prolongation basis of
// g^(r-1) tensored with s-subsets) into the raw evaluation space of
// C^{r-1,s+1}. Rank and kernel computed here are those of delta itself.
struct DeltaSlot {
  std::int64_t domain_dim = 0;
  std::int64_t rank = 0;
};

class SpencerCalculator {
 public:
  explicit SpencerCalculator(MatrixLieAlgebra g) : g_(std::move(g)) {}

  const MatrixLieAlgebra& algebra() const { return g_; }

  const ProlongationSpace& prolonged(int k) {
    auto it = spaces_.find(k);
    if (it != spaces_.end()) return it->second;
    return spaces_.emplace(k, prolongation(g_, k)).first->second;
  }

  // dim C^{r,s} = dim g^(r-1) * C(n, s); r >= 0, with g^(-1) = R^n.
  std::int64_t cochain_dim(int r, int s) {
    if (s < 0 || s > g_.n) return 0;
    std::int64_t gs = (r == 0) ? g_.n : prolonged(r - 1).dim();
    return gs * binom(g_.n, s);
  }

  DeltaSlot delta_slot(int r, int s) {
    DeltaSlot slot;
    slot.domain_dim = cochain_dim(r, s);
    if (r < 1 || slot.domain_dim == 0 || s >= g_.n) {
      // r = 0 ends the complex; s = n makes the target Lambda^{n+1} = 0
      slot.rank = 0;
      return slot;
    }
    const ProlongationSpace& dom = prolonged(r - 1);
    const auto dom_subsets = all_subsets(g_.n, s);
    const auto out_multis = all_multisets(g_.n, r - 1);
    const auto out_subsets = all_subsets(g_.n, s + 1);
    const std::int64_t out_coords =
        static_cast<std::int64_t>(g_.n) * out_multis.size() * out_subsets.size();

    SpanTracker image(out_coords);
    std::vector<Rat> col(out_coords);
    for (int b = 0; b < dom.dim(); ++b) {
      for (std::size_t A = 0; A < dom_subsets.size(); ++A) {
        std::fill(col.begin(), col.end(), Rat(0));
        // delta of (basis element b) tensor e_A
        for (int mu = 0; mu < g_.n; ++mu)
          for (std::size_t m = 0; m < out_multis.size(); ++m)
            for (std::size_t B = 0; B < out_subsets.size(); ++B) {
              const Index& outB = out_subsets[B];
              Rat acc(0);
              for (std::size_t j = 0; j < outB.size(); ++j) {
                Index rest = outB;
                rest.erase(rest.begin() + j);
                if (subset_rank(rest, g_.n) != static_cast<std::int64_t>(A) ||
                    rest != dom_subsets[A])
                  continue;
                Multi with = multiset_insert(out_multis[m], outB[j]);
                Rat term = dom.basis[b][dom.index(mu, multiset_rank(with, dom.multis))];
                acc += (j % 2 == 0) ? term : -term;
              }
              if (acc != 0)
                col[(mu * static_cast<std::int64_t>(out_multis.size()) + m) * out_subsets.size() + B] = acc;
            }
        image.add(col);
      }
    }
    slot.rank = image.rank();
    return slot;
  }

  // dim H^{r,s} = dim ker(delta on C^{r,s}) - rank(delta on C^{r+1,s-1})
  std::int64_t cohomology_dim(int r, int s) {
    if (r < 0 || s < 0 || s > g_.n) throw std::invalid_argument("cohomology_dim: bidegree out of range");
    DeltaSlot here = delta_slot(r, s);
    std::int64_t kernel = here.domain_dim - here.rank;
    std::int64_t image = (s == 0) ? 0 : delta_slot(r + 1, s - 1).rank;
    return kernel - image;
  }

 private:
  MatrixLieAlgebra g_;
  std::map<int, ProlongationSpace> spaces_;
};

inline std::int64_t spencer_cohomology_dim(const MatrixLieAlgebra& g, int r, int s) {
  SpencerCalculator calc(g);
  return calc.cohomology_dim(r, s);
}

// Rank-one membership: is e (x) w in span(g)? Used by the ellipticity check.
inline bool rank_one_in_algebra(const MatrixLieAlgebra& g, const std::vector<Rat>& e,
                                const std::vector<Rat>& w) {
  SpanTracker span(g.n * g.n);
  for (const auto& b : g.basis) span.add(flatten(b));
  std::vector<Rat> v(g.n * g.n);
  bool nonzero = false;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      v[i * g.n + j] = e[i] * w[j];
      if (v[i * g.n + j] != 0) nonzero = true;
    }
  if (!nonzero) return false;
  return span.contains(v);
}

}  // namespace geomlab::spencer
