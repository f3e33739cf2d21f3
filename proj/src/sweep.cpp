#include "rigidity/sweep.hpp"

#include <cmath>

#include "rigidity/errors.hpp"

namespace rigidity {

std::size_t grid_size(int dim, int per_axis) {
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(per_axis);
  return total;
}

std::vector<double> grid_point(int dim, int per_axis, std::size_t flat_index,
                               GridRange range) {
  const double step = (range == GridRange::kHalfPiBox ? M_PI : 2.0 * M_PI) / per_axis;
  std::vector<double> k(dim);
  for (int axis = dim - 1; axis >= 0; --axis) {
    const std::size_t t = flat_index % per_axis;
    flat_index /= per_axis;
    k[axis] = step * static_cast<double>(t);
  }
  return k;
}

void grid_sweep(int dim, int per_axis, ExecMode mode,
                const std::function<void(std::size_t, const Momentum&)>& fn,
                GridRange range) {
  if (per_axis < 2) throw input_error("grid must be >= 2 per axis");
  const std::size_t total = grid_size(dim, per_axis);
  if (mode == ExecMode::kParallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(total); ++i) {
      const std::size_t flat = static_cast<std::size_t>(i);
      fn(flat, Momentum(grid_point(dim, per_axis, flat, range)));
    }
  } else {
    for (std::size_t flat = 0; flat < total; ++flat)
      fn(flat, Momentum(grid_point(dim, per_axis, flat, range)));
  }
}

template <typename T>
std::vector<T> indexed_map(std::size_t count, ExecMode mode,
                           const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  if (mode == ExecMode::kParallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
  }
  return out;
}

template std::vector<double> indexed_map<double>(std::size_t, ExecMode,
                                                 const std::function<double(std::size_t)>&);
template std::vector<Complex> indexed_map<Complex>(std::size_t, ExecMode,
                                                   const std::function<Complex(std::size_t)>&);

}  // namespace rigidity
