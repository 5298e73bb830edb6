#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "tbw/atmosphere.hpp"
#include "tbw/dataset.hpp"
#include "tbw/environment.hpp"
#include "tbw/faa.hpp"
#include "tbw/pid.hpp"
#include "tbw/qlearning.hpp"

namespace tbw {

// Flat key-value configuration with [section] headers; keys address as
// "section.key". Every model/reward/schedule constant lives here with its
// default, so sensitivity studies need no code changes.
class Config {
  public:
    static Config defaults();
    // defaults overlaid with the file's values
    static Config from_file(const std::string& path);

    void parse_overlay(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    // canonical text form, embedded into run manifests
    std::string serialize() const;

  private:
    std::map<std::string, std::string> kv_;
};

// Typed view of a resolved Config.
struct Settings {
    AircraftDataset dataset;
    std::string phase = "cruise";
    double trim_speed = 160.0; // m/s
    RewardConfig reward;
    EpisodeConfig episode;
    Schedule schedule;
    DrydenConfig dryden;
    FaaOptions faa;
    bool faa_in_training = false;
    PidGains pid;
    std::uint64_t seed = 1;
    std::string variable_profile; // "t:deg;t:deg;..."
};

Settings resolve_settings(const Config& cfg);

} // namespace tbw
