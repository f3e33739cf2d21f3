#include "rigidity/report.hpp"

#include <ostream>

#include <nlohmann/json.hpp>

#include "rigidity/format.hpp"
#include "rigidity/invariants.hpp"
#include "rigidity/linearize.hpp"
#include "rigidity/spectral.hpp"

namespace rigidity {

using nlohmann::json;

namespace {

std::string block_line(const BlockReport& block, int d) {
  std::string out = to_string(block.symmetry_class);
  out += ", nu = " + std::to_string(block.nu_signed) + " (|nu| = " +
         std::to_string(block.abs_nu) + ")";
  out += ", d = " + std::to_string(d);
  out += ", m = " + std::to_string(block.m);
  out += "  ->  " + block.result.verdict.to_string();
  out += "   [" + block.result.provenance + "]";
  return out;
}

}  // namespace

ReportDocument build_report(const SpinModel& model, const Config& config) {
  ReportDocument doc = build_report(linearize_collinear(model), config, model.name);
  doc.sublattices = model.sublattices;
  doc.families = static_cast<int>(model.constraints.size());
  return doc;
}

ReportDocument build_report(const RigidityPolynomial& r, const Config& config,
                            const std::string& name) {
  ReportDocument doc;
  doc.model_name = name;
  doc.dim = r.dim();
  doc.rows = r.rows();
  doc.cols = r.cols();
  doc.nu = r.cols() - r.rows();
  doc.classification = classify_model(r, config.class_tol);

  const ExecMode mode = config.parallel ? ExecMode::kParallel : ExecMode::kSerial;
  doc.gap_grid = config.grid_for_dim(r.dim());
  const GapTable gaps = gap_map(r, doc.gap_grid, config.rank_tol_rel, mode);
  double min_gap = 0.0, max_gap = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < gaps.rows.size(); ++i) {
    const double g = gaps.rows[i].sigmas.empty() ? 0.0 : gaps.rows[i].sigmas.back();
    if (i == 0) min_gap = max_gap = g;
    min_gap = std::min(min_gap, g);
    max_gap = std::max(max_gap, g);
    sum += g;
  }
  doc.gap_min = min_gap;
  doc.gap_max = max_gap;
  doc.gap_mean = gaps.rows.empty() ? 0.0 : sum / static_cast<double>(gaps.rows.size());

  int max_rank = 0;
  for (const auto& row : gaps.rows) max_rank = std::max(max_rank, row.rank);
  for (const auto& row : gaps.rows)
    if (row.rank < max_rank) {
      ++doc.zero_locus_count;
      if (doc.zero_locus_sample.size() < 8) doc.zero_locus_sample.push_back(row.k);
    }

  // invariant diagnostics per block: TRIM signs for 1x1 BDI blocks, cycle
  // windings for square gapped blocks; failures are reported, not fatal
  for (std::size_t b = 0; b < doc.classification.blocks.size(); ++b) {
    const auto& block = doc.classification.blocks[b];
    const std::string label = "block " + std::to_string(b + 1);
    if (block.rows == 0 || block.cols == 0) {
      doc.invariant_notes.push_back(label + ": degenerate block, no diagnostics");
      continue;
    }
    const RigidityPolynomial sub = r.extract(block.row_indices, block.col_indices);
    if (block.rows == 1 && block.cols == 1 &&
        block.symmetry_class == SymmetryClass::AIII_BDI) {
      try {
        std::string signs;
        for (const auto& [trim, sign] : trim_signs(sub, config.loop_tol)) {
          if (!signs.empty()) signs += ", ";
          signs += trim.to_string() + ": " + (sign > 0 ? "+1" : "-1");
        }
        doc.invariant_notes.push_back(label + ": TRIM signs " + signs);
      } catch (const std::exception& e) {
        doc.invariant_notes.push_back(label + ": TRIM signs unavailable (" +
                                      std::string(e.what()) + ")");
      }
    }
    if (block.rows == block.cols) {
      try {
        std::vector<int> windings =
            cycle_windings(sub, config.winding_resolution, {}, config.loop_tol, mode);
        std::string text;
        for (std::size_t i = 0; i < windings.size(); ++i) {
          if (i) text += ", ";
          text += std::to_string(windings[i]);
        }
        doc.invariant_notes.push_back(label + ": cycle windings (" + text + ")");
      } catch (const std::exception& e) {
        doc.invariant_notes.push_back(label + ": cycle windings unavailable (" +
                                      std::string(e.what()) + ")");
      }
    }
  }
  return doc;
}

void ReportDocument::write_text(std::ostream& out) const {
  out << "model: " << model_name << "\n";
  out << "  d = " << dim;
  if (sublattices > 0) out << ", sublattices = " << sublattices;
  if (families > 0) out << ", families = " << families;
  out << ", matrix " << rows << "x" << cols << ", nu = N - M = " << nu << "\n";
  out << "whole matrix: " << block_line(classification.whole, dim) << "\n";
  out << "independent blocks: " << classification.blocks.size() << "\n";
  for (std::size_t b = 0; b < classification.blocks.size(); ++b) {
    const auto& block = classification.blocks[b];
    out << "  block " << (b + 1) << " (" << block.rows << "x" << block.cols
        << "): " << block_line(block, dim) << "\n";
  }
  out << "gap statistics (grid " << gap_grid << " per axis, momenta in radians): min "
      << fmt_real(gap_min) << ", max " << fmt_real(gap_max) << ", mean "
      << fmt_real(gap_mean) << "\n";
  out << "zero locus: " << zero_locus_count << " grid point(s)";
  if (!zero_locus_sample.empty()) {
    out << "; sample:";
    for (const auto& k : zero_locus_sample) out << " " << k.to_string();
  }
  out << "\n";
  for (const auto& note : invariant_notes) out << "  " << note << "\n";
}

std::string ReportDocument::to_json() const {
  json doc;
  doc["model"] = model_name;
  doc["dim"] = dim;
  doc["sublattices"] = sublattices;
  doc["families"] = families;
  doc["rows"] = rows;
  doc["cols"] = cols;
  doc["nu"] = nu;
  auto block_json = [this](const BlockReport& block) {
    json jb;
    jb["rows"] = block.rows;
    jb["cols"] = block.cols;
    jb["row_indices"] = block.row_indices;
    jb["col_indices"] = block.col_indices;
    jb["class"] = to_string(block.symmetry_class);
    jb["nu"] = block.nu_signed;
    jb["abs_nu"] = block.abs_nu;
    jb["d"] = dim;
    jb["m"] = block.m;
    jb["verdict"] = block.result.verdict.to_string();
    jb["provenance"] = block.result.provenance;
    return jb;
  };
  doc["whole"] = block_json(classification.whole);
  json blocks = json::array();
  for (const auto& block : classification.blocks) blocks.push_back(block_json(block));
  doc["blocks"] = blocks;
  doc["gap"] = {{"grid", gap_grid},
                {"units", "radians"},
                {"min", fmt_real(gap_min)},
                {"max", fmt_real(gap_max)},
                {"mean", fmt_real(gap_mean)}};
  doc["zero_locus_count"] = zero_locus_count;
  json sample = json::array();
  for (const auto& k : zero_locus_sample) {
    json jk = json::array();
    for (double x : k.k) jk.push_back(fmt_real(x));
    sample.push_back(jk);
  }
  doc["zero_locus_sample"] = sample;
  doc["invariant_notes"] = invariant_notes;
  return doc.dump(2) + "\n";
}

}  // namespace rigidity
