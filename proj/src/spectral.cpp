#include "hiernet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hiernet/error.hpp"
#include "parallel.hpp"

namespace hiernet {

double Spectrum::lambda2() const {
  require(values.size() >= 2, "lambda2 needs at least two eigenvalues");
  return values[1];
}

Spectrum dense_spectrum(const Eigen::MatrixXd& laplacian) {
  require(laplacian.rows() == laplacian.cols(), "Laplacian must be square");
  Spectrum s;
  if (laplacian.rows() == 0) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian);
  if (es.info() != Eigen::Success) fail(ErrorCode::kNumeric, "symmetric eigensolver failed");
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();

  // Spot-check the ends and the middle of the spectrum.
  const double scale = std::max(1.0, laplacian.norm());
  const Eigen::Index n = vals.size();
  for (Eigen::Index j : {Eigen::Index{0}, n / 2, n - 1}) {
    const double r = (laplacian * vecs.col(j) - vals(j) * vecs.col(j)).norm();
    if (r > 1e-8 * scale) fail(ErrorCode::kNumeric, "eigenpair residual too large");
  }
  s.values.assign(vals.data(), vals.data() + n);
  std::sort(s.values.begin(), s.values.end());
  return s;
}

Spectrum dense_spectrum(const Graph& g) { return dense_spectrum(laplacian_matrix(g)); }

double poly_eval(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

std::vector<double> poly_from_roots(const Eigen::VectorXd& roots) {
  std::vector<double> c{1.0};
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    // c(x) * (x - r)
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= roots(i) * c[j];
    }
    c = std::move(next);
  }
  return c;
}

Eigen::MatrixXd delete_row_col(const Eigen::MatrixXd& m, Eigen::Index r) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd out(n - 1, n - 1);
  for (Eigen::Index i = 0, oi = 0; i < n; ++i) {
    if (i == r) continue;
    for (Eigen::Index j = 0, oj = 0; j < n; ++j) {
      if (j == r) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorCode::kNumeric, "symmetric eigensolver failed");
  return es.eigenvalues();
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0.0) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::string level_context(std::size_t level, double mu) {
  std::ostringstream os;
  os.precision(17);
  os << "level " << level << ", mu = " << mu;
  return os.str();
}

struct LevelData {
  Eigen::MatrixXd laplacian;
  Eigen::Index root = 0;
  CharPolyPair polys;
};

void solve_block(const LevelData& lv, double shift, double* out) {
  Eigen::MatrixXd m = lv.laplacian;
  m(lv.root, lv.root) += shift;
  const Eigen::VectorXd ev = sym_eigenvalues(m);
  std::copy(ev.data(), ev.data() + ev.size(), out);
}

void solve_companion(const LevelData& lv, double shift, double imag_tol, std::size_t level, double mu,
                     double* out) {
  const auto& phi = lv.polys.phi;
  const auto& phr = lv.polys.phi_rootdeleted;
  const std::size_t n = phi.size() - 1;
  std::vector<double> p = phi;
  for (std::size_t j = 0; j < phr.size(); ++j) p[j] -= shift * phr[j];
  std::vector<double> dp(n, 0.0);
  for (std::size_t j = 1; j <= n; ++j) dp[j - 1] = static_cast<double>(j) * p[j];

  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 1; j < n; ++j) c(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j - 1)) = 1.0;
  for (std::size_t j = 0; j < n; ++j) c(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(n - 1)) = -p[j];
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::kNumeric, "companion root finder failed at " + level_context(level, mu));

  for (std::size_t j = 0; j < n; ++j) {
    const std::complex<double> z = es.eigenvalues()(static_cast<Eigen::Index>(j));
    if (std::abs(z.imag()) > imag_tol) {
      std::ostringstream os;
      os << "complex root (imag " << z.imag() << ") at " << level_context(level, mu);
      fail(ErrorCode::kNumeric, os.str());
    }
    double x = z.real();
    double fx = std::abs(poly_eval(p, x));
    for (int it = 0; it < 8 && fx > 0.0; ++it) {
      const double d = poly_eval(dp, x);
      if (d == 0.0) break;
      double step = poly_eval(p, x) / d;
      bool moved = false;
      for (int damp = 0; damp < 6; ++damp, step *= 0.5) {
        const double f2 = std::abs(poly_eval(p, x - step));
        if (f2 < fx) {
          x -= step;
          fx = f2;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    out[j] = x;
  }
}

}  // namespace

CharPolyPair char_polys(const Eigen::MatrixXd& laplacian, std::size_t root) {
  const auto n = static_cast<std::size_t>(laplacian.rows());
  require(laplacian.rows() == laplacian.cols(), "Laplacian must be square");
  require(n >= 1 && root < n, "root out of range");
  if (n > kCharPolyMaxOrder) {
    fail(ErrorCode::kInvalidArgument,
         "characteristic polynomials limited to order " + std::to_string(kCharPolyMaxOrder));
  }
  CharPolyPair p;
  p.phi = poly_from_roots(sym_eigenvalues(laplacian));
  p.phi_rootdeleted = poly_from_roots(sym_eigenvalues(delete_row_col(laplacian, static_cast<Eigen::Index>(root))));
  return p;
}

CharPolyPair char_polys(const Graph& g) { return char_polys(laplacian_matrix(g), g.root()); }

Spectrum recursive_spectrum(const HierarchySpec& spec, const RecursiveOptions& opts) {
  spec.validate();
  require(!spec.truncated, "recursive spectrum needs a non-truncated hierarchy");
  const std::size_t k = spec.levels();
  std::vector<LevelData> lv(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Graph& b = spec.bases[i];
    if (b.order() > kCharPolyMaxOrder)
      fail(ErrorCode::kInvalidArgument, "recursive spectrum limited to base order " + std::to_string(kCharPolyMaxOrder));
    lv[i].laplacian = laplacian_matrix(b);
    lv[i].root = static_cast<Eigen::Index>(b.root());
    if (opts.method == RootMethod::kCompanion) lv[i].polys = char_polys(lv[i].laplacian, b.root());
  }

  const Eigen::VectorXd top = sym_eigenvalues(lv[k - 1].laplacian);
  std::vector<double> mus(top.data(), top.data() + top.size());

  // Level index i is 0-based here; the reported level is 1-based.
  for (std::size_t i = k - 1; i-- > 0;) {
    const double beta = spec.alphas[i + 1] / spec.alphas[i];
    const std::size_t n = spec.bases[i].order();
    std::vector<double> next(mus.size() * n);
    detail::parallel_for(mus.size(), opts.jobs, [&](std::size_t m) {
      const double shift = beta * mus[m];
      double* out = next.data() + m * n;
      if (opts.method == RootMethod::kBlock)
        solve_block(lv[i], shift, out);
      else
        solve_companion(lv[i], shift, opts.imag_tol, i + 1, mus[m], out);
    });
    mus = std::move(next);
  }
  std::sort(mus.begin(), mus.end());
  return Spectrum{std::move(mus)};
}

Eigen::MatrixXd recursive_laplacian(const HierarchySpec& spec) {
  spec.validate();
  require(!spec.truncated, "recursive Laplacian needs a non-truncated hierarchy");
  const std::size_t k = spec.levels();
  Eigen::MatrixXd m = laplacian_matrix(spec.bases[k - 1]);
  for (std::size_t i = k - 1; i-- > 0;) {
    const Graph& b = spec.bases[i];
    const double beta = spec.alphas[i + 1] / spec.alphas[i];
    const auto n = static_cast<Eigen::Index>(b.order());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    d(static_cast<Eigen::Index>(b.root()), static_cast<Eigen::Index>(b.root())) = 1.0;
    m = beta * kron(m, d) + kron(Eigen::MatrixXd::Identity(m.rows(), m.cols()), laplacian_matrix(b));
  }
  return m;
}

SpectralBounds spectral_bounds(std::size_t order, double lambda2, double max_valency) {
  require(order >= 2, "bounds need at least two nodes");
  if (!(lambda2 > 1e-10)) fail(ErrorCode::kDisconnected, "lambda2 is zero: graph is disconnected");
  SpectralBounds b;
  const double n = static_cast<double>(order);
  b.lambda2 = lambda2;
  b.max_valency = max_valency;
  const double ln = std::log(n - 1.0);
  const double hi = std::ceil((max_valency + lambda2) / (4.0 * lambda2) * ln);
  b.diameter_lo = 4.0 / (n * lambda2);
  b.diameter_hi = 2.0 * hi;
  b.mean_dist_lo = 2.0 / ((n - 1.0) * lambda2) + 0.5;
  b.mean_dist_hi = hi;
  b.cheeger_lo = lambda2 / 2.0;
  b.cheeger_hi = std::sqrt(lambda2 * (2.0 * max_valency - lambda2));
  return b;
}

SpectralBounds spectral_bounds(const Graph& g) {
  if (!is_connected(g)) fail(ErrorCode::kDisconnected, "spectral bounds need a connected graph");
  const Spectrum s = dense_spectrum(g);
  double dmax = 0.0;
  for (std::size_t v = 0; v < g.order(); ++v) dmax = std::max(dmax, g.valency(v));
  return spectral_bounds(g.order(), s.lambda2(), dmax);
}

}  // namespace hiernet
