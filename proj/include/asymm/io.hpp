#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"

#include "asymm/experiments.hpp"
#include "asymm/groups.hpp"
#include "asymm/measures.hpp"
#include "asymm/quantum.hpp"

namespace asymm {

// Complex matrices are serialized as nested arrays of [re, im] pairs, row by
// row. State files: {"dim": d, "matrix": [...], "label": "..."} (label
// optional). Channel files: {"input_dim", "output_dim", "kraus": [matrix...]}.
// Group files: {"order", "labels", "table", "identity"}.

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const DensityOperator& rho,
                             const std::string& label = "");
DensityOperator state_from_json(const nlohmann::json& j);
DensityOperator load_state_file(const std::filesystem::path& path);

nlohmann::json channel_to_json(const KrausChannel& e);
KrausChannel channel_from_json(const nlohmann::json& j);
KrausChannel load_channel_file(const std::filesystem::path& path);

nlohmann::json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const nlohmann::json& j);
FiniteGroup load_group_file(const std::filesystem::path& path);

// Rounds to 12 significant digits; report payload numbers pass through this
// so that serialization round-trips losslessly.
double round_sig(double v);
nlohmann::json json_number(double v);

// FNV-1a digest of the 12-significant-digit text rendering of a matrix.
std::string digest_matrix(const Matrix& m);

nlohmann::json measure_result_to_json(const MeasureResult& r);
nlohmann::json experiment_report_to_json(const ExperimentReport& r);

// Full report file: tool/version/command/seed/timestamp envelope around a
// payload subtree. Everything the determinism guarantee covers lives in
// "payload".
nlohmann::json report_envelope(const std::string& command, std::uint64_t seed,
                               nlohmann::json payload);

// Writes to a temporary sibling and renames into place, so a failed run never
// leaves a partial report.
void write_report_atomic(const std::filesystem::path& path,
                         const nlohmann::json& report);

}  // namespace asymm
