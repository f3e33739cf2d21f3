#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rigidity/polynomial.hpp"

namespace rigidity {

enum class ExecMode { kSerial, kParallel };

/// kHalfPiBox: k_t = pi * t / per_axis, the half-open box [0, pi)^d. This
/// anchors k = 0 on the grid and keeps the equivalent +-pi boundary off it;
/// spectra and loci use it. kFullPeriod: k_t = 2*pi * t / per_axis, one full
/// period per axis; equivariance checks use it for complete coverage.
enum class GridRange { kHalfPiBox, kFullPeriod };

/// Flat index: axis 0 slowest, last axis fastest.
std::size_t grid_size(int dim, int per_axis);
std::vector<double> grid_point(int dim, int per_axis, std::size_t flat_index,
                               GridRange range = GridRange::kHalfPiBox);

/// Apply fn(flat_index, momentum) over the whole grid. The parallel path uses
/// OpenMP; writes addressed by flat index make results identical to the
/// serial reference.
void grid_sweep(int dim, int per_axis, ExecMode mode,
                const std::function<void(std::size_t, const Momentum&)>& fn,
                GridRange range = GridRange::kHalfPiBox);

/// Evaluate fn(i) for i in [0, count) into a preallocated vector.
template <typename T>
std::vector<T> indexed_map(std::size_t count, ExecMode mode,
                           const std::function<T(std::size_t)>& fn);

extern template std::vector<double> indexed_map<double>(
    std::size_t, ExecMode, const std::function<double(std::size_t)>&);
extern template std::vector<Complex> indexed_map<Complex>(
    std::size_t, ExecMode, const std::function<Complex(std::size_t)>&);

}  // namespace rigidity
