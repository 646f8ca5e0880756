#pragma once

#include <json.hpp>

#include "wslm/channel.hpp"
#include "wslm/solver.hpp"

namespace wslm {

nlohmann::json config_to_json(const SystemConfig& c);
SystemConfig config_from_json(const nlohmann::json& j);
nlohmann::json solution_to_json(const IASolution& sol);

}  // namespace wslm
