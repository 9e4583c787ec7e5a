#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "perioctrl/analyzer.hpp"
#include "perioctrl/crosscheck.hpp"
#include "perioctrl/smith.hpp"
#include "perioctrl/witness.hpp"

namespace perioctrl {

/// Machine-readable verdict row. Invariant factors and witnesses are
/// serialized as polynomial strings in the output dialect ('pi' permitted),
/// so they re-parse with parse_unipoly_pi.
nlohmann::json verdict_to_json(const ControllabilityVerdict& v);

/// Full analysis report: lattice, per-mode verdicts, the generic screening
/// block, and the pinned numeric-pi bit pattern.
nlohmann::json box_report_to_json(const BoxReport& box, const GenericReport& generic);

/// Human-readable summary table with the generic screening block and the
/// box-coverage caveat.
std::string box_report_text(const BoxReport& box, const GenericReport& generic);

/// Rebuilds verdicts from a report previously produced by box_report_to_json
/// (used to reuse cached analysis results). Throws std::runtime_error on
/// malformed input.
std::vector<ControllabilityVerdict> verdicts_from_json(const nlohmann::json& j);

nlohmann::json smith_report_to_json(const SmithDecomposition& s, bool reconstruction_ok);
std::string smith_report_text(const SmithDecomposition& s, bool reconstruction_ok);

nlohmann::json witness_report_to_json(const WitnessReport& r);

nlohmann::json rank_reports_to_json(const std::vector<RankSampleReport>& reports);

}  // namespace perioctrl
