#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "hiernet/graph.hpp"
#include "hiernet/products.hpp"

namespace hiernet {

// Sorted Laplacian eigenvalues.
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double lambda2() const;
};

Spectrum dense_spectrum(const Graph& g);
Spectrum dense_spectrum(const Eigen::MatrixXd& laplacian);

inline constexpr std::size_t kCharPolyMaxOrder = 64;

// Coefficients lowest degree first; both monic.
// phi             = det(xI - L)
// phi_rootdeleted = det(xI - L') with L' = L minus root row and column
struct CharPolyPair {
  std::vector<double> phi;
  std::vector<double> phi_rootdeleted;
};

CharPolyPair char_polys(const Eigen::MatrixXd& laplacian, std::size_t root);
CharPolyPair char_polys(const Graph& g);

double poly_eval(const std::vector<double>& coeffs, double x);

enum class RootMethod {
  // Eigenvalues of L_i + beta mu e_r e_r^T, whose characteristic polynomial
  // is phi - beta mu phi'. Symmetric, so repeated roots stay accurate.
  kBlock,
  // Companion-matrix roots of phi - beta mu phi', Newton polished.
  kCompanion,
};

struct RecursiveOptions {
  RootMethod method = RootMethod::kBlock;
  unsigned jobs = 1;
  double imag_tol = 1e-9;
};

// Spectrum of a non-truncated hierarchy from its base spectra alone.
Spectrum recursive_spectrum(const HierarchySpec& spec, const RecursiveOptions& opts = {});

// M_k = L_k, M_i = beta_{i+1} M_{i+1} (x) D_i + I (x) L_i; returns M_1.
Eigen::MatrixXd recursive_laplacian(const HierarchySpec& spec);

struct SpectralBounds {
  double lambda2 = 0.0;
  double max_valency = 0.0;
  double diameter_lo = 0.0;
  double diameter_hi = 0.0;
  double mean_dist_lo = 0.0;
  double mean_dist_hi = 0.0;
  double cheeger_lo = 0.0;
  double cheeger_hi = 0.0;
};

SpectralBounds spectral_bounds(const Graph& g);
// Same bounds from a known lambda2, for graphs too large for a dense solve.
SpectralBounds spectral_bounds(std::size_t order, double lambda2, double max_valency);

}  // namespace hiernet
