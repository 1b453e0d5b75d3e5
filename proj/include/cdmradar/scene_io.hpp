#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "cdmradar/params.hpp"

namespace cdmradar {

/// A scene document: radar config plus the scene it observes.
struct SceneDocument {
  RadarConfig config;
  Scene scene;
};

void to_json(nlohmann::json& j, const RadarConfig& cfg);
void from_json(const nlohmann::json& j, RadarConfig& cfg);
void to_json(nlohmann::json& j, const Target& t);
void from_json(const nlohmann::json& j, Target& t);
void to_json(nlohmann::json& j, const SceneDocument& doc);
void from_json(const nlohmann::json& j, SceneDocument& doc);

/// Parses and validates (config and scene) a scene document.
/// Throws std::invalid_argument with the offending field on bad input.
SceneDocument parse_scene(const std::string& text);
SceneDocument load_scene(const std::filesystem::path& path);

}  // namespace cdmradar
