#pragma once

// Data-parallel inner loops shared by the modules. Every kernel has a serial
// reference path and an OpenMP path; both produce identical results and the
// tests compare them element for element.

#include <span>
#include <vector>

#include "hardy/dual.hpp"
#include "hardy/fock.hpp"
#include "hardy/types.hpp"

namespace hardy::kernels {

enum class Exec { serial, parallel };

struct HermitianExtremes {
  double min_eig = 0.0;
  double max_abs_eig = 0.0;
};

// Extreme eigenvalues of each Hermitian block (blocks are symmetrized first).
std::vector<HermitianExtremes> hermitian_extremes(std::span<const CMatrix> blocks, Exec exec);

// Largest singular value of each sparse block. Dense eigensolve of M^* M up
// to dense_limit rows, power iteration beyond.
std::vector<double> spectral_norms(std::span<const SparseCMatrix> blocks, Exec exec,
                                   Eigen::Index dense_limit = 2500);

// evaluate_poly(x, points[i]) for every i.
std::vector<VertexMatrix> evaluate_batch(const HardyPoly& x, std::span<const DualPoint> points,
                                         Exec exec);

}  // namespace hardy::kernels
