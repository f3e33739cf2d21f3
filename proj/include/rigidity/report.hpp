#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rigidity/classify.hpp"
#include "rigidity/config.hpp"
#include "rigidity/model.hpp"

namespace rigidity {

/// End-to-end report: model summary, per-block symmetry/index data, gap
/// statistics, zero-locus sample, invariant diagnostics and classification
/// verdicts. Every verdict carries its provenance note.
struct ReportDocument {
  std::string model_name;
  int dim = 0;
  int sublattices = 0;
  int families = 0;
  int rows = 0;
  int cols = 0;
  int nu = 0;

  ModelClassification classification;

  int gap_grid = 0;
  double gap_min = 0.0;
  double gap_max = 0.0;
  double gap_mean = 0.0;
  std::size_t zero_locus_count = 0;
  std::vector<Momentum> zero_locus_sample;  // first few points

  // diagnostics; either a value or the reason it is unavailable
  std::vector<std::string> invariant_notes;

  void write_text(std::ostream& out) const;
  std::string to_json() const;
};

ReportDocument build_report(const SpinModel& model, const Config& config);

/// Pipeline report for a bare coefficient family (no model metadata).
ReportDocument build_report(const RigidityPolynomial& r, const Config& config,
                            const std::string& name);

}  // namespace rigidity
