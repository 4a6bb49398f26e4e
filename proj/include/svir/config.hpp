#pragma once

#include "svir/integrator.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace svir {

/// Raw `key = value` entries with where each came from (for error messages).
class ConfigMap {
public:
    struct Entry {
        std::string value;
        std::string origin; ///< "file.cfg:12", "preset table1_low", "--set", ...
    };

    void set(const std::string& key, std::string value, std::string origin);
    bool contains(const std::string& key) const { return entries_.count(key) != 0; }
    const Entry* find(const std::string& key) const;
    const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, Entry> entries_;
};

/// Every key the format accepts, in manifest order.
const std::vector<std::string>& known_keys();
/// Keys without a default; they must come from a preset or the file.
const std::vector<std::string>& required_keys();

/// Base values of a named preset (`table1_low`, `table1_high`). Throws ConfigError otherwise.
ConfigMap preset_values(std::string_view name);
bool is_preset(std::string_view name);

/// Parses the flat `key = value` format (`#` starts a comment). A `preset` line
/// seeds the map with that preset; other lines override it regardless of order.
/// Unknown keys, duplicates and malformed lines raise ConfigError with the line number.
ConfigMap parse_config_text(std::string_view text, std::string_view source);
ConfigMap load_config_file(const std::filesystem::path& path);

/// Applies one `key=value` override.
void apply_override(ConfigMap& map, std::string_view assignment, std::string_view origin = "--set");

enum class PerturbMode { cosine, random };

/// Fully resolved scenario: the RunConfig plus CLI-level settings.
struct ScenarioConfig {
    std::string preset;
    RunConfig run;
    double perturb_amp = 0.0;
    PerturbMode perturb_mode = PerturbMode::cosine;
    std::uint64_t seed = 0;
    double hypothesis_I_max = 1e3;
    std::size_t hypothesis_samples = 10000;
    /// Every known key with its resolved text value (defaults filled in).
    std::map<std::string, std::string> resolved;
};

/// Validates the map and builds a ScenarioConfig; missing required keys are listed together.
ScenarioConfig resolve(const ConfigMap& map);

/// File path if it exists, otherwise a preset name.
ScenarioConfig parse_config(std::string_view path_or_preset);

/// `key = value` lines for every known key, in known_keys() order.
std::string render_config(const ScenarioConfig& cfg);

/// Splits "a,b,c" into trimmed items; empty input gives an empty list.
std::vector<std::string> split_list(std::string_view text);

} // namespace svir
