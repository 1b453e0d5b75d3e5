#include "cdmradar/scene_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cdmradar {

using nlohmann::json;

void to_json(json& j, const RadarConfig& cfg) {
  j = json{{"f_c", cfg.f_c}, {"b", cfg.b},     {"T", cfg.T},     {"f_s", cfg.f_s}, {"D", cfg.D},
           {"M", cfg.M},     {"N", cfg.N},     {"N_c", cfg.N_c}, {"d_r", cfg.d_r}, {"d_t", cfg.d_t},
           {"r_max", cfg.r_max}};
}

void from_json(const json& j, RadarConfig& cfg) {
  j.at("f_c").get_to(cfg.f_c);
  j.at("b").get_to(cfg.b);
  j.at("T").get_to(cfg.T);
  j.at("f_s").get_to(cfg.f_s);
  j.at("D").get_to(cfg.D);
  j.at("M").get_to(cfg.M);
  j.at("N").get_to(cfg.N);
  j.at("N_c").get_to(cfg.N_c);
  j.at("d_r").get_to(cfg.d_r);
  j.at("d_t").get_to(cfg.d_t);
  j.at("r_max").get_to(cfg.r_max);
}

void to_json(json& j, const Target& t) { j = json{{"r", t.r}, {"theta", t.theta}, {"sigma", t.sigma}}; }

void from_json(const json& j, Target& t) {
  j.at("r").get_to(t.r);
  j.at("theta").get_to(t.theta);
  t.sigma = j.value("sigma", 1.0);
}

void to_json(json& j, const SceneDocument& doc) {
  j = json{{"config", doc.config}, {"targets", doc.scene.targets}, {"seed", doc.scene.seed}};
  if (doc.scene.snr_db) j["snr_db"] = *doc.scene.snr_db;
  if (doc.scene.channel_phase_errors) j["channel_phase_errors"] = *doc.scene.channel_phase_errors;
}

void from_json(const json& j, SceneDocument& doc) {
  j.at("config").get_to(doc.config);
  doc.scene = Scene{};
  if (j.contains("targets")) j.at("targets").get_to(doc.scene.targets);
  if (j.contains("snr_db") && !j.at("snr_db").is_null()) doc.scene.snr_db = j.at("snr_db").get<double>();
  if (j.contains("channel_phase_errors") && !j.at("channel_phase_errors").is_null())
    doc.scene.channel_phase_errors = j.at("channel_phase_errors").get<std::vector<double>>();
  doc.scene.seed = j.value("seed", std::uint64_t{0});
}

SceneDocument parse_scene(const std::string& text) {
  SceneDocument doc;
  try {
    doc = json::parse(text).get<SceneDocument>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scene document: ") + e.what());
  }
  require_valid_config(doc.config);
  if (const auto bad = validate_scene(doc.scene, doc.config); !bad.empty()) {
    std::string msg = "invalid scene:";
    for (const auto& v : bad) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  return doc;
}

SceneDocument load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scene file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

}  // namespace cdmradar
