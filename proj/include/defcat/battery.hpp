#pragma once

#include "defcat/json_io.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

namespace defcat {

// Deterministic seeded generator shared by the selftest driver and the test
// suites.  All draws go through the raw engine so results are reproducible
// across platforms.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(unsigned long long seed) : eng(seed) {}
  long long uniform(long long lo, long long hi) {  // inclusive
    return lo + (long long)(eng() % (unsigned long long)(hi - lo + 1));
  }
  template <class K>
  K scalar(const FieldContext<K>& f, long long bound = 4) {
    return f.make(uniform(-bound, bound));
  }
};

struct BatteryResult {
  std::string name;
  bool pass = true;
  int instances = 0;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    ++instances;
    if (!ok) {
      pass = false;
      if (failures.size() < 16) failures.push_back(what);
    }
  }
  std::string summary() const {
    std::ostringstream os;
    os << name << ": " << (pass ? "pass" : "FAIL") << " (" << instances << " checks)";
    for (const auto& f : failures) os << "\n    " << f;
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// random generators
// ---------------------------------------------------------------------------

template <class K>
Vec<K> random_ring_element(Rng& rng, const BaseRing<K>& ring, long long bound = 4) {
  Vec<K> v(ring.dim());
  for (int i = 0; i < ring.dim(); ++i) v(i) = rng.scalar<K>(ring.field, bound);
  return v;
}

template <class K>
FpModule<K> random_fp_module(Rng& rng, const RingPtr<K>& ring, int max_gens = 3, int max_rels = 3) {
  FpModule<K> m;
  m.ring = ring;
  int p = (int)rng.uniform(1, max_gens), q = (int)rng.uniform(0, max_rels);
  m.pres = RingMat<K>(p, q, *ring);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) m.pres.at(i, j) = random_ring_element<K>(rng, *ring, 2);
  return m;
}

template <class K>
FpFunctorModule<K> random_functor_module(Rng& rng, const CatCtxPtr<K>& ctx, int max_gens = 2,
                                         int max_rels = 2) {
  FpFunctorModule<K> f;
  f.ctx = ctx;
  const int n = ctx->n_objects();
  int p = (int)rng.uniform(1, max_gens), q = (int)rng.uniform(0, max_rels);
  for (int i = 0; i < p; ++i) f.targets.push_back((int)rng.uniform(0, n - 1));
  for (int i = 0; i < q; ++i) f.sources.push_back((int)rng.uniform(0, n - 1));
  f.delta.assign(p, std::vector<Mor<K>>(q));
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < q; ++i) {
      Mor<K> m = ctx->cat->zero_mor(f.targets[j], f.sources[i]);
      for (int t = 0; t < (int)m.v.size(); ++t) m.v(t) = rng.scalar<K>(ctx->cat->ring->field, 2);
      f.delta[j][i] = std::move(m);
    }
  return f;
}

// invertible morphism of a random invertible reduction plus random kernel part
template <class K>
Mor<K> random_unit_endo(Rng& rng, const LinCategory<K>& c, int x, const RingSurjection<K>& theta) {
  const int d = c.ring->dim();
  Mat<K> ker = theta.kernel();
  for (int attempt = 0; attempt < 128; ++attempt) {
    Mor<K> f = c.zero_mor(x, x);
    // start from the identity to keep the reduction invertible most draws
    f.v = c.identity[x];
    for (int b = 0; b < c.rank[x][x]; ++b) {
      // random multiple of a kernel element
      if (ker.cols() > 0) {
        Vec<K> kc = Vec<K>::Zero(d);
        for (int j = 0; j < ker.cols(); ++j) kc += rng.scalar<K>(c.ring->field, 2) * ker.col(j);
        f.v.segment(b * d, d) += kc;
      }
    }
    // sprinkle a unit-level perturbation that stays invertible downstairs
    if (rng.uniform(0, 1)) {
      int b = (int)rng.uniform(0, c.rank[x][x] - 1);
      f.v(b * d) += rng.scalar<K>(c.ring->field, 1);
    }
    if (is_isomorphism<K>(c, f)) return f;
  }
  return c.identity_mor(x);
}

// gauge twist: transport the composition law through random invertible
// coordinate changes on every hom module (identity object map)
template <class K>
CatPtr<K> gauge_twist(Rng& rng, const LinCategory<K>& c) {
  const int n = c.n_objects();
  const int d = c.ring->dim();
  // random invertible U[x][y] on flat coordinates, R-linear: block structure
  // U = (unit k-matrix) ⊗ id_R + nilpotent-coefficient part
  std::vector<std::vector<Mat<K>>> u(n, std::vector<Mat<K>>(n)), uinv(n, std::vector<Mat<K>>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int r = c.rank[x][y];
      for (;;) {
        // invertible r x r matrix over R: unit diagonal plus small noise,
        // off-diagonal entries mostly in the maximal ideal
        RingMat<K> a(r, r, *c.ring);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) {
            a.at(i, j) = random_ring_element<K>(rng, *c.ring, 1);
            if (i != j && rng.uniform(0, 2)) a.at(i, j)(0) = K(0);
            if (i == j) a.at(i, j) += c.ring->one();
          }
        Mat<K> m = expand(*c.ring, a);
        auto inv = inverse<K>(m);
        if (inv) {
          u[x][y] = m;
          uinv[x][y] = *inv;
          break;
        }
      }
    }
  auto out = std::make_shared<LinCategory<K>>();
  out->ring = c.ring;
  out->objects = c.objects;
  out->rank = c.rank;
  for (int x = 0; x < n; ++x) out->identity.push_back(Vec<K>(u[x][x] * c.identity[x]));
  for (const auto& [key, t] : c.comp) {
    auto [x, y, z] = key;
    typename LinCategory<K>::Table nt(c.rank[y][z], std::vector<Vec<K>>(c.rank[x][y]));
    for (int b2 = 0; b2 < c.rank[y][z]; ++b2)
      for (int b1 = 0; b1 < c.rank[x][y]; ++b1) {
        // m'(g, f) = U(m(U^{-1} g, U^{-1} f)) on basis morphisms
        Mor<K> g = c.zero_mor(y, z), f = c.zero_mor(x, y);
        Vec<K> e2 = Vec<K>::Zero(c.hom_dim(y, z));
        e2(b2 * d) = c.ring->field.make(1);
        g.v = uinv[y][z] * e2;
        Vec<K> e1 = Vec<K>::Zero(c.hom_dim(x, y));
        e1(b1 * d) = c.ring->field.make(1);
        f.v = uinv[x][y] * e1;
        nt[b2][b1] = u[x][z] * c.compose(g, f).v;
      }
    out->comp[key] = std::move(nt);
  }
  return out;
}

// ---------------------------------------------------------------------------
// exact-sequence machinery (Tor long exact sequences with real maps)
// ---------------------------------------------------------------------------

template <class K>
struct TensoredComplex {
  std::vector<int> dims;   // dim C_t
  std::vector<Mat<K>> d;   // d[t]: C_{t+1} -> C_t
};

// tensor a free resolution with a module; entries act through `rho`
template <class K>
TensoredComplex<K> tensor_resolution(const FreeResolution<K>& res,
                                     const std::function<Mat<K>(const Vec<K>&)>& rho, int mdim) {
  TensoredComplex<K> c;
  for (int r : res.ranks) c.dims.push_back(r * mdim);
  for (size_t t = 0; t < res.differentials.size(); ++t) {
    const RingMat<K>& dm = res.differentials[t];
    Mat<K> big = Mat<K>::Zero(dm.rows * mdim, dm.cols * mdim);
    for (int a = 0; a < dm.rows; ++a)
      for (int b = 0; b < dm.cols; ++b) big.block(a * mdim, b * mdim, mdim, mdim) = rho(dm.at(a, b));
    c.d.push_back(std::move(big));
  }
  return c;
}

template <class K>
Mat<K> complex_diff(const TensoredComplex<K>& c, int t) {  // C_{t+1} -> C_t
  if (t < (int)c.d.size()) return c.d[t];
  int rows = t < (int)c.dims.size() ? c.dims[t] : 0;
  int cols = t + 1 < (int)c.dims.size() ? c.dims[t + 1] : 0;
  return Mat<K>::Zero(rows, cols);
}

template <class K>
struct HomologyData {
  Mat<K> cycles;  // basis in C_t coords
  Mat<K> proj;    // cycle coords -> homology coords
  int dim = 0;
};

template <class K>
HomologyData<K> complex_homology(const TensoredComplex<K>& c, int t) {
  HomologyData<K> h;
  int dim_t = t < (int)c.dims.size() ? c.dims[t] : 0;
  if (dim_t == 0) {
    h.cycles = Mat<K>(0, 0);
    h.proj = Mat<K>(0, 0);
    return h;
  }
  Mat<K> dout = t >= 1 ? complex_diff<K>(c, t - 1) : Mat<K>(Mat<K>::Zero(0, dim_t));
  Mat<K> z = t >= 1 ? kernel_basis<K>(dout) : Mat<K>(Mat<K>::Identity(dim_t, dim_t));
  Mat<K> din = complex_diff<K>(c, t);
  Mat<K> b = column_space_basis<K>(din);
  auto bz = solve<K>(z, b);
  if (!bz) throw std::domain_error("complex_homology: boundaries outside cycles");
  Mat<K> bb = column_space_basis<K>(*bz);
  Mat<K> comp = complement_basis<K>(bb, (int)z.cols());
  Mat<K> frame = hstack<K>(bb, comp);
  auto finv = inverse<K>(frame);
  if (!finv) throw std::domain_error("complex_homology: degenerate frame");
  h.cycles = z;
  h.proj = finv->bottomRows(comp.cols());
  h.dim = (int)comp.cols();
  return h;
}

// homology class of a cycle
template <class K>
Vec<K> homology_class(const HomologyData<K>& h, const Vec<K>& cycle) {
  auto coords = solve<K>(h.cycles, Mat<K>(cycle));
  if (!coords) throw std::domain_error("homology_class: not a cycle");
  return h.proj * coords->col(0);
}

// induced map on homology of a degreewise chain map (blockdiagonal lift of f)
template <class K>
Mat<K> induced_map(const TensoredComplex<K>& src, const TensoredComplex<K>& dst,
                   const HomologyData<K>& hsrc, const HomologyData<K>& hdst, const Mat<K>& f_block) {
  Mat<K> m(hdst.dim, hsrc.dim);
  if (hsrc.dim == 0 || hdst.dim == 0) return Mat<K>(hdst.dim, hsrc.dim);
  // cycle representatives: a right inverse of the homology projection
  Mat<K> src_rinv = *solve<K>(hsrc.proj, Mat<K>(Mat<K>::Identity(hsrc.dim, hsrc.dim)));
  for (int c = 0; c < hsrc.dim; ++c) {
    Vec<K> cyc = hsrc.cycles * (src_rinv.col(c));
    Vec<K> img = f_block * cyc;
    m.col(c) = homology_class<K>(hdst, img);
  }
  return m;
}

template <class K>
Mat<K> blockdiag(const Mat<K>& f, int copies) {
  Mat<K> m = Mat<K>::Zero(f.rows() * copies, f.cols() * copies);
  for (int i = 0; i < copies; ++i) m.block(i * f.rows(), i * f.cols(), f.rows(), f.cols()) = f;
  return m;
}

// full long-exact-sequence check for 0 -> A -> B -> C -> 0 against a free
// resolution window; verifies exactness at every interior joint
template <class K>
void long_exact_check(BatteryResult& out, const FreeResolution<K>& res,
                      const std::function<Mat<K>(const Vec<K>&, const AlgebraModule<K>&)>& rho,
                      const AlgebraModule<K>& a, const AlgebraModule<K>& b, const AlgebraModule<K>& c,
                      const Mat<K>& inc, const Mat<K>& prj, int imax) {
  auto rig = [&](const AlgebraModule<K>& m) {
    return tensor_resolution<K>(res, [&](const Vec<K>& r) { return rho(r, m); }, m.dim);
  };
  TensoredComplex<K> ca = rig(a), cb = rig(b), cc = rig(c);
  std::vector<HomologyData<K>> ha, hb, hc;
  for (int t = 0; t <= imax; ++t) {
    ha.push_back(complex_homology<K>(ca, t));
    hb.push_back(complex_homology<K>(cb, t));
    hc.push_back(complex_homology<K>(cc, t));
  }
  auto ranks_at = [&](int t) { return t < (int)res.ranks.size() ? res.ranks[t] : 0; };
  std::vector<Mat<K>> alpha, beta, delta;  // H_t(A)->H_t(B), H_t(B)->H_t(C), H_t(C)->H_{t-1}(A)
  for (int t = 0; t <= imax; ++t) {
    alpha.push_back(induced_map<K>(ca, cb, ha[t], hb[t], blockdiag<K>(inc, ranks_at(t))));
    beta.push_back(induced_map<K>(cb, cc, hb[t], hc[t], blockdiag<K>(prj, ranks_at(t))));
  }
  delta.push_back(Mat<K>(0, 0));  // unused placeholder for t = 0
  for (int t = 1; t <= imax; ++t) {
    // connecting map via the snake construction
    Mat<K> m(ha[t - 1].dim, hc[t].dim);
    Mat<K> prj_b = blockdiag<K>(prj, ranks_at(t));
    Mat<K> inc_b = blockdiag<K>(inc, ranks_at(t - 1));
    if (hc[t].dim > 0 && ha[t - 1].dim >= 0) {
      Mat<K> c_rinv = *solve<K>(hc[t].proj, Mat<K>(Mat<K>::Identity(hc[t].dim, hc[t].dim)));
      for (int col = 0; col < hc[t].dim; ++col) {
        Vec<K> zc = hc[t].cycles * (c_rinv.col(col));
        auto w = solve<K>(prj_b, Mat<K>(zc));
        if (!w) throw std::domain_error("long_exact_check: projection not surjective on chains");
        Vec<K> dw = complex_diff<K>(cb, t - 1) * w->col(0);
        auto apre = solve<K>(inc_b, Mat<K>(dw));
        if (!apre) throw std::domain_error("long_exact_check: boundary not in the submodule");
        m.col(col) = homology_class<K>(ha[t - 1], Vec<K>(apre->col(0)));
      }
    }
    delta.push_back(std::move(m));
  }
  // exactness checks at interior joints
  auto joint = [&](const Mat<K>& into, const Mat<K>& outof, const std::string& name) {
    bool composite_zero = is_zero_matrix<K>(Mat<K>(outof * into));
    int dim_mid = (int)outof.cols();
    bool dims = rank_of<K>(into) == dim_mid - rank_of<K>(outof);
    out.check(composite_zero && dims, "long exact sequence fails at " + name);
  };
  for (int t = 0; t < imax; ++t) {
    // ... -> H_{t+1}(C) -> H_t(A) -> H_t(B) -> H_t(C) -> H_{t-1}(A) -> ...
    joint(delta[t + 1], alpha[t], "H_" + std::to_string(t) + "(A)");
    joint(alpha[t], beta[t], "H_" + std::to_string(t) + "(B)");
    if (t >= 1)
      joint(beta[t], delta[t], "H_" + std::to_string(t) + "(C)");
    else
      out.check(rank_of<K>(beta[0]) == hc[0].dim, "H_0(C) not covered (right exactness)");
  }
}

// random short exact sequence of concrete modules: a submodule spun from
// random vectors inside a random module
template <class K>
struct ShortExact {
  AlgebraModule<K> a, b, c;
  Mat<K> inc, prj;
};

template <class K>
ShortExact<K> random_short_exact(Rng& rng, const AlgebraModule<K>& b) {
  ShortExact<K> s;
  s.b = b;
  Mat<K> seed(b.dim, std::max(1, (int)rng.uniform(1, 2)));
  for (int j = 0; j < seed.cols(); ++j)
    for (int i = 0; i < b.dim; ++i) seed(i, j) = rng.scalar<K>(b.alg->field, 2);
  Mat<K> sub = spin<K>(b, seed);
  s.inc = sub;
  s.a = sub.cols() ? submodule_on<K>(b, sub) : zero_module<K>(b.alg);
  s.c = quotient_module<K>(b, sub, &s.prj, nullptr);
  return s;
}

}  // namespace defcat
