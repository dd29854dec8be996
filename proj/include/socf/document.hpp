#pragma once

#include <optional>
#include <string>
#include <variant>

#include "socf/analysis.hpp"
#include "socf/forms.hpp"
#include "socf/oracle.hpp"

namespace socf::io {

/// One SOCF as exchanged on disk:
///   {"form": "general",   "c": [...], "d": 0, "A": [[...], ...], "b": [...]}
///   {"form": "canonical", "c": [...], "d": 0, "delta": 0, "M": [[...]], "x_star": [...]}
/// with an optional "label" string. Matrices are row-major arrays of rows.
struct SocfDocument {
  std::variant<GeneralForm, CanonicalForm> form;
  std::optional<std::string> label;

  bool is_general() const { return std::holds_alternative<GeneralForm>(form); }
  std::size_t dim() const;
  /// The canonical parameters, canonicalizing a general document.
  CanonicalForm canonical(const TolerancePolicy& tol = {}) const;
  /// Evaluates with the parameterization the document carries.
  double evaluate(const Vector& x) const;
};

/// Throws Error(Parse) naming the offending field, Error(DimensionMismatch)
/// for inconsistent shapes, and NonSymmetric/NotPSD for a bad M.
SocfDocument parse_document(const std::string& text, const TolerancePolicy& tol = {});
std::string serialize_document(const SocfDocument& doc);

struct ProbeSummary {
  std::uint64_t seed = 0;
  oracle::ConcavityProbe concavity;
  oracle::BoundednessProbe boundedness;
  std::optional<oracle::GridMax> grid;
  std::optional<double> gradient_norm_at_base;
  std::vector<std::string> notes;
  std::vector<std::string> contradictions;
};

struct Report {
  std::optional<std::string> label;
  CanonicalForm canonical;
  analysis::ConcavityClass concavity;
  analysis::BoundednessReport boundedness;
  analysis::RegionClass region;
  std::optional<ProbeSummary> probe;
};

Report build_report(const SocfDocument& doc, const TolerancePolicy& tol = {});

/// Runs every oracle against the closed-form report and records any
/// disagreement. Boundary-flagged reports never count as contradictions.
ProbeSummary run_probes(const Report& report, const oracle::ProbeConfig& cfg,
                        const TolerancePolicy& tol = {});

std::string serialize_report(const Report& report);
std::string render_report_human(const Report& report);

/// %.17g text; parses back to the identical double.
std::string format_double(double v);

/// "1,2,3" -> vector; "1,0;0,1" -> matrix (rows split on ';').
Vector parse_vector_arg(const std::string& text);
Matrix parse_matrix_arg(const std::string& text);

}  // namespace socf::io
