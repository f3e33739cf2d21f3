#include "rigidity/linearize.hpp"

#include "rigidity/errors.hpp"

namespace rigidity {

RigidityPolynomial linearize_collinear(const SpinModel& model) {
  auto diagnostics = validate(model);
  for (const auto& d : diagnostics)
    if (d.level == Diagnostic::kError)
      throw input_error("invalid model: " + d.message);

  const int n_cols = 2 * model.sublattices;
  const int m_rows = 2 * static_cast<int>(model.constraints.size());
  RigidityPolynomial r(m_rows, n_cols, model.dim);

  // Spin parameterization (p, q) around a collinear state with q0 in {0, pi}:
  // dS/dq = (0, cos q0, 0) carries the spin sign, dS/dp = (0, 0, 1) does not.
  for (std::size_t f = 0; f < model.constraints.size(); ++f) {
    const int in_plane_row = 2 * static_cast<int>(f);
    const int out_of_plane_row = in_plane_row + 1;
    for (const auto& term : model.constraints[f].terms) {
      const int q_col = 2 * term.sublattice;
      const int p_col = q_col + 1;
      r.add_entry(term.offset, in_plane_row, q_col, term.coeff * term.spin_sign);
      r.add_entry(term.offset, out_of_plane_row, p_col, term.coeff);
    }
  }
  return r;
}

}  // namespace rigidity
