#include "dcho/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

#include "dcho/errors.hpp"

namespace dcho {

namespace {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw ParseError(origin_ + ": field '" + field + "': " + msg);
  }

  void only_keys(const json& obj, const std::string& where,
                 std::initializer_list<std::string_view> allowed) const {
    if (!obj.is_object()) fail(where, "expected an object");
    for (const auto& [key, _] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(join(where, key), "unknown field");
      }
    }
  }

  static std::string join(const std::string& where, std::string_view key) {
    return where.empty() ? std::string(key) : where + "." + std::string(key);
  }

  void number(const json& obj, const std::string& where, std::string_view key, double& out) const {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number()) fail(join(where, key), "expected a number");
    out = it->get<double>();
  }

  void unsigned_int(const json& obj, const std::string& where, std::string_view key,
                    std::uint64_t& out) const {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number_unsigned()) fail(join(where, key), "expected a non-negative integer");
    out = it->get<std::uint64_t>();
  }

  Point3 point(const json& v, const std::string& field) const {
    if (!v.is_array() || v.size() != 3) fail(field, "expected [x, y, z]");
    Point3 p;
    for (int i = 0; i < 3; ++i) {
      if (!v[static_cast<std::size_t>(i)].is_number()) fail(field, "coordinates must be numbers");
      p(i) = v[static_cast<std::size_t>(i)].get<double>();
    }
    return p;
  }

  void point(const json& obj, const std::string& where, std::string_view key, Point3& out) const {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    out = point(*it, join(where, key));
  }

  const json& required(const json& obj, const std::string& where, std::string_view key) const {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(join(where, key), "missing");
    return *it;
  }

 private:
  std::string origin_;
};

GnbConfig read_gnb(const Reader& r, const json& j, const std::string& where) {
  r.only_keys(j, where,
              {"ncgi", "tier", "position", "carrier_hz", "tx_power_dbm", "bandwidth_hz",
               "resource_share", "pl_exponent_los", "pl_exponent_nlos", "shadow_sigma_db",
               "blockage_penalty_db"});
  const auto& tier_j = r.required(j, where, "tier");
  if (!tier_j.is_string()) r.fail(Reader::join(where, "tier"), "expected a string");
  GnbType tier;
  try {
    tier = parse_tier(tier_j.get<std::string>());
  } catch (const ParseError& e) {
    r.fail(Reader::join(where, "tier"), e.what());
  }
  GnbConfig g = default_gnb_config(tier);

  const auto& ncgi_j = r.required(j, where, "ncgi");
  if (!ncgi_j.is_string()) r.fail(Reader::join(where, "ncgi"), "expected a string");
  try {
    g.ncgi = parse_ncgi(ncgi_j.get<std::string>());
  } catch (const ParseError& e) {
    r.fail(Reader::join(where, "ncgi"), e.what());
  }
  g.position = r.point(r.required(j, where, "position"), Reader::join(where, "position"));
  r.number(j, where, "carrier_hz", g.carrier_hz);
  r.number(j, where, "tx_power_dbm", g.tx_power_dbm);
  r.number(j, where, "bandwidth_hz", g.bandwidth_hz);
  r.number(j, where, "resource_share", g.resource_share);
  r.number(j, where, "pl_exponent_los", g.pl_exponent_los);
  r.number(j, where, "pl_exponent_nlos", g.pl_exponent_nlos);
  r.number(j, where, "shadow_sigma_db", g.shadow_sigma_db);
  r.number(j, where, "blockage_penalty_db", g.blockage_penalty_db);
  return g;
}

}  // namespace

GnbType parse_tier(std::string_view name) {
  if (name == "macro") return GnbType::Macro;
  if (name == "small") return GnbType::SmallSub6;
  if (name == "mmwave") return GnbType::MmWave;
  throw ParseError("unknown tier '" + std::string(name) + "' (expected macro, small or mmwave)");
}

ScenarioConfig parse_config_text(std::string_view text, const std::string& origin) {
  Reader r(origin);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": invalid JSON: " + e.what(), e.byte);
  }
  r.only_keys(root, "",
              {"duration_s", "tick_ms", "seed", "sn_interruption_ms", "shadowing", "ue", "hdma",
               "gnbs", "obstacles"});

  ScenarioConfig cfg;
  r.number(root, "", "duration_s", cfg.duration_s);
  r.number(root, "", "tick_ms", cfg.tick_ms);
  r.unsigned_int(root, "", "seed", cfg.seed);
  r.number(root, "", "sn_interruption_ms", cfg.sn_interruption_ms);

  if (const auto it = root.find("shadowing"); it != root.end()) {
    r.only_keys(*it, "shadowing", {"decorrelation_m"});
    r.number(*it, "shadowing", "decorrelation_m", cfg.shadow_decorrelation_m);
  }
  if (const auto it = root.find("ue"); it != root.end()) {
    r.only_keys(*it, "ue", {"start", "direction", "speed_kmh"});
    r.point(*it, "ue", "start", cfg.ue.start);
    r.point(*it, "ue", "direction", cfg.ue.direction);
    r.number(*it, "ue", "speed_kmh", cfg.ue.speed_kmh);
  }
  if (const auto it = root.find("hdma"); it != root.end()) {
    r.only_keys(*it, "hdma", {"speed_threshold_kmh", "hom_db", "ttt_ms"});
    r.number(*it, "hdma", "speed_threshold_kmh", cfg.hdma.speed_threshold_kmh);
    r.number(*it, "hdma", "hom_db", cfg.hdma.hom_db);
    r.number(*it, "hdma", "ttt_ms", cfg.hdma.ttt_ms);
  }

  const auto& gnbs = r.required(root, "", "gnbs");
  if (!gnbs.is_array()) r.fail("gnbs", "expected an array");
  for (std::size_t i = 0; i < gnbs.size(); ++i) {
    cfg.gnbs.push_back(read_gnb(r, gnbs[i], "gnbs[" + std::to_string(i) + "]"));
  }

  if (const auto it = root.find("obstacles"); it != root.end()) {
    if (!it->is_array()) r.fail("obstacles", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "obstacles[" + std::to_string(i) + "]";
      const auto& o = (*it)[i];
      r.only_keys(o, where, {"min", "max"});
      const Point3 lo = r.point(r.required(o, where, "min"), where + ".min");
      const Point3 hi = r.point(r.required(o, where, "max"), where + ".max");
      cfg.obstacles.emplace_back(lo, hi);
    }
  }

  try {
    validate(cfg);
  } catch (const ValidationError& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  return cfg;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(path.string() + ": cannot open config file");
  std::ostringstream text;
  text << f.rdbuf();
  return parse_config_text(text.str(), path.string());
}

}  // namespace dcho
