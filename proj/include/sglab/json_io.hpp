#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "sglab/operator_core.hpp"

namespace sglab {

/// {"dim": n, "re": [...], "im": [...]}, row-major.
nlohmann::json operator_to_json(const DenseOperator& m);
DenseOperator operator_from_json(const nlohmann::json& j);

DenseOperator load_operator(const std::filesystem::path& path);

}  // namespace sglab
