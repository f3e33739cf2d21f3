#include "rigidity/invariants.hpp"

#include <cmath>

#include "rigidity/format.hpp"
#include "rigidity/spectral.hpp"
#include "rigidity/symmetry.hpp"

namespace rigidity {

LoopSpec LoopSpec::axis_cycle(int axis, std::vector<double> fixed_transverse, int resolution) {
  if (resolution < 16) throw input_error("loop resolution must be >= 16");
  LoopSpec spec;
  spec.is_axis = true;
  spec.axis = axis;
  spec.fixed = std::move(fixed_transverse);
  spec.resolution = resolution;
  return spec;
}

LoopSpec LoopSpec::polyline(std::vector<std::vector<double>> vertices, int resolution) {
  if (resolution < 16) throw input_error("loop resolution must be >= 16");
  if (vertices.size() < 2) throw input_error("polyline loop needs at least two vertices");
  const auto& first = vertices.front();
  const auto& last = vertices.back();
  if (first.size() != last.size()) throw input_error("polyline vertex dimensions differ");
  for (std::size_t i = 0; i < first.size(); ++i)
    if (std::abs(reduce_to_torus(first[i] - last[i])) > 1e-9)
      throw input_error("polyline loop is not closed (endpoints differ mod 2*pi)");
  LoopSpec spec;
  spec.is_axis = false;
  spec.vertices = std::move(vertices);
  spec.resolution = resolution;
  return spec;
}

std::vector<Momentum> LoopSpec::sample(int dim) const {
  std::vector<Momentum> points;
  points.reserve(resolution);
  if (is_axis) {
    if (axis < 0 || axis >= dim) throw input_error("loop axis out of range");
    if (static_cast<int>(fixed.size()) != dim - 1)
      throw input_error("axis loop needs " + std::to_string(dim - 1) +
                        " fixed transverse components, got " + std::to_string(fixed.size()));
    for (int t = 0; t < resolution; ++t) {
      std::vector<double> k(dim);
      int cursor = 0;
      for (int j = 0; j < dim; ++j)
        if (j != axis) k[j] = fixed[cursor++];
      k[axis] = 2.0 * M_PI * t / resolution;
      points.push_back(Momentum(std::move(k)));
    }
    return points;
  }
  // arc-length-uniform resampling of the closed polyline
  for (const auto& v : vertices)
    if (static_cast<int>(v.size()) != dim)
      throw input_error("polyline vertex dimension mismatch");
  std::vector<double> cumulative{0.0};
  for (std::size_t v = 0; v + 1 < vertices.size(); ++v) {
    double len = 0.0;
    for (std::size_t j = 0; j < vertices[v].size(); ++j) {
      const double diff = vertices[v + 1][j] - vertices[v][j];
      len += diff * diff;
    }
    cumulative.push_back(cumulative.back() + std::sqrt(len));
  }
  const double total = cumulative.back();
  if (total <= 0.0) throw input_error("degenerate polyline loop");
  std::size_t seg = 0;
  for (int t = 0; t < resolution; ++t) {
    const double target = total * t / resolution;
    while (seg + 2 < cumulative.size() && cumulative[seg + 1] < target) ++seg;
    const double seg_len = cumulative[seg + 1] - cumulative[seg];
    const double alpha = seg_len > 0 ? (target - cumulative[seg]) / seg_len : 0.0;
    std::vector<double> k(vertices[seg].size());
    for (std::size_t j = 0; j < k.size(); ++j)
      k[j] = vertices[seg][j] + alpha * (vertices[seg + 1][j] - vertices[seg][j]);
    points.push_back(Momentum(std::move(k)));
  }
  return points;
}

double phase_winding(const std::vector<Complex>& samples) {
  if (samples.size() < 2) throw input_error("winding needs at least two samples");
  double total = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Complex a = samples[i];
    const Complex b = samples[(i + 1) % samples.size()];
    const double step = std::arg(b / a);
    if (!(std::abs(step) < M_PI / 2.0))
      throw numerical_error("insufficient resolution: phase step " + fmt_real(step) +
                            " exceeds pi/2 between samples " + std::to_string(i) + " and " +
                            std::to_string((i + 1) % samples.size()));
    total += step;
  }
  return total / (2.0 * M_PI);
}

namespace {

int winding_with_refinement(const RigidityPolynomial& r, const LoopSpec& loop, double tol,
                            ExecMode mode) {
  if (!r.is_square()) throw input_error("determinant winding needs a square family (N = M)");
  const int max_resolution = 1 << 14;
  int resolution = loop.resolution;
  for (;;) {
    LoopSpec refined = loop;
    refined.resolution = resolution;
    const std::vector<Momentum> points = refined.sample(r.dim());

    std::vector<Complex> dets = indexed_map<Complex>(
        points.size(), mode, [&](std::size_t i) -> Complex {
          const Matrix at_k = r.evaluate(points[i]);
          const Eigen::VectorXd sigmas = singular_values(at_k);
          const double sigma_min = sigmas(sigmas.size() - 1);
          if (sigma_min <= tol) return Complex(0.0, 0.0);  // flagged below
          return at_k.determinant();
        });
    for (std::size_t i = 0; i < dets.size(); ++i)
      if (dets[i] == Complex(0.0, 0.0))
        throw numerical_error("gap closure on loop at k = " + points[i].to_string());

    try {
      const double winding = phase_winding(dets);
      const double nearest = std::round(winding);
      if (std::abs(winding - nearest) > 1e-3)
        throw numerical_error("winding " + fmt_real(winding) +
                              " is not integral within 1e-3; increase resolution");
      return static_cast<int>(nearest);
    } catch (const numerical_error&) {
      if (resolution * 2 > max_resolution) throw;
      resolution *= 2;
    }
  }
}

}  // namespace

int det_winding(const RigidityPolynomial& r, const LoopSpec& loop, double tol, ExecMode mode) {
  return winding_with_refinement(r, loop, tol, mode);
}

std::vector<int> cycle_windings(const RigidityPolynomial& r, int resolution,
                                const std::vector<double>& basepoint, double tol,
                                ExecMode mode) {
  if (!r.is_square()) throw input_error("cycle windings need a square family (N = M)");
  std::vector<double> base = basepoint;
  if (base.empty()) base.assign(r.dim(), 0.0);
  if (static_cast<int>(base.size()) != r.dim())
    throw input_error("basepoint dimension mismatch");
  std::vector<int> windings;
  for (int axis = 0; axis < r.dim(); ++axis) {
    std::vector<double> fixed;
    for (int j = 0; j < r.dim(); ++j)
      if (j != axis) fixed.push_back(base[j]);
    windings.push_back(det_winding(r, LoopSpec::axis_cycle(axis, fixed, resolution), tol, mode));
  }
  return windings;
}

std::vector<std::pair<Momentum, int>> trim_signs(const RigidityPolynomial& r, double tol) {
  if (r.rows() != 1 || r.cols() != 1)
    throw input_error("TRIM signs are defined for 1x1 families only");
  const ClassEvidence evidence = detect_class(r);
  if (evidence.symmetry_class != SymmetryClass::AIII_BDI)
    throw input_error("TRIM signs need class AIII/BDI, detected " +
                      to_string(evidence.symmetry_class));
  std::vector<std::pair<Momentum, int>> out;
  for (const Momentum& trim : trims(r.dim())) {
    const Complex value = r.evaluate(trim)(0, 0);
    if (std::abs(value) <= tol)
      throw numerical_error("family vanishes at TRIM " + trim.to_string() +
                            "; sign undefined");
    out.emplace_back(trim, value.real() >= 0.0 ? 1 : -1);
  }
  return out;
}

}  // namespace rigidity
