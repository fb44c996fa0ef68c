#pragma once

// Table configuration files (JSON) and the structured analysis report.

#include <string>
#include <vector>

#include <json.hpp>

#include "billiards/formulas.hpp"
#include "billiards/geometry.hpp"
#include "billiards/normal_form.hpp"

namespace billiards {

/// Parse {"L": ..., "left": {...}|{"named":...}, "right": ...|"same"}.
TableConfig table_from_json(const nlohmann::json& j, std::vector<std::string>* warnings = nullptr);
nlohmann::json table_to_json(const TableConfig& table);

TableConfig load_table_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Build a named example table; `params` uses the family's parameter names
/// (lemon: L; ellipse: b; asymmetric-lemon: r, B, R; half-ellipses: b0, b1;
/// eh-lens-shift: a, s; eh-lens-deform: a, p, q).
TableConfig example_table(const std::string& name,
                          const std::vector<std::pair<std::string, double>>& params);

struct AnalysisReport {
    nlohmann::json json;
    bool refused = false;  // stability/resonance/pole refusal (CLI exit code 2)
};

/// Full analyze report: pipeline + closed-form values + agreement residuals.
AnalysisReport build_analysis_report(const TableConfig& table, const NormalFormOptions& opts = {});

}  // namespace billiards
