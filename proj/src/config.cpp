#include "svir/config.hpp"

#include "svir/errors.hpp"
#include "svir/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace svir {

namespace {

struct KeySpec {
    const char* name;
    const char* fallback; ///< nullptr: required
};

// Manifest order. Shape parameters of incidence families default to empty and are
// demanded only by the family that uses them.
const KeySpec key_table[] = {
    {"preset", ""},
    {"Lambda", nullptr},
    {"mu", nullptr},
    {"alpha", nullptr},
    {"gamma1", nullptr},
    {"gamma", nullptr},
    {"c", nullptr},
    {"dS", nullptr},
    {"dV", nullptr},
    {"dI", nullptr},
    {"dR", nullptr},
    {"incidence_f", "bilinear"},
    {"beta1", nullptr},
    {"f_m", ""},
    {"f_a1", ""},
    {"f_omega1", ""},
    {"f_omega2", ""},
    {"incidence_h", "bilinear"},
    {"beta2", nullptr},
    {"h_m", ""},
    {"h_a1", ""},
    {"h_omega1", ""},
    {"h_omega2", ""},
    {"kernel", "dirac"},
    {"k", "0"},
    {"tau0", "0"},
    {"kernel_nodes", ""},
    {"kernel_densities", ""},
    {"n_nodes", "32"},
    {"N", "100"},
    {"dt", "2.5e-4"},
    {"t_end", nullptr},
    {"steady_tol", "1e-8"},
    {"record_stride", "1"},
    {"snapshot_times", ""},
    {"S_init", nullptr},
    {"V_init", nullptr},
    {"I_init", nullptr},
    {"R_init", nullptr},
    {"perturb_amp", "0"},
    {"perturb_mode", "cosine"},
    {"seed", "0"},
    {"hyp_I_max", "1000"},
    {"hyp_samples", "10000"},
};

const KeySpec* spec_for(std::string_view key)
{
    for (const auto& k : key_table) {
        if (key == k.name) {
            return &k;
        }
    }
    return nullptr;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

void store(ConfigMap& map, std::string_view key, std::string_view value, const std::string& origin)
{
    if (!spec_for(key)) {
        throw ConfigError(origin + ": unknown key '" + std::string(key) + "'");
    }
    if (key == "preset" && !value.empty()) {
        // the preset seeds values but never overrides explicit ones
        const ConfigMap preset = preset_values(value);
        for (const auto& [k, e] : preset.entries()) {
            if (!map.contains(k)) {
                map.set(k, e.value, e.origin);
            }
        }
    }
    map.set(std::string(key), std::string(value), origin);
}

/// Typed access to a ConfigMap with defaults and origin-tagged errors.
class Reader {
public:
    explicit Reader(const ConfigMap& map) : map_(map) {}

    std::string text(const std::string& key) const
    {
        if (const auto* e = map_.find(key)) {
            return e->value;
        }
        const KeySpec* spec = spec_for(key);
        return spec && spec->fallback ? spec->fallback : "";
    }

    std::string origin(const std::string& key) const
    {
        const auto* e = map_.find(key);
        return e ? e->origin : "default";
    }

    double number(const std::string& key) const
    {
        const std::string s = text(key);
        if (s.empty()) {
            throw ConfigError(origin(key) + ": key '" + key + "' needs a value");
        }
        return to_double(key, s);
    }

    std::size_t count(const std::string& key) const
    {
        const double v = number(key);
        if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) {
            throw ConfigError(origin(key) + ": key '" + key + "' must be a nonnegative integer, got '" +
                              text(key) + "'");
        }
        return static_cast<std::size_t>(v);
    }

    std::vector<double> numbers(const std::string& key) const
    {
        std::vector<double> out;
        for (const auto& item : split_list(text(key))) {
            out.push_back(to_double(key, item));
        }
        return out;
    }

private:
    double to_double(const std::string& key, std::string_view s) const
    {
        double v = 0.0;
        const auto* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
            throw ConfigError(origin(key) + ": key '" + key + "' expects a number, got '" +
                              std::string(s) + "'");
        }
        return v;
    }

    const ConfigMap& map_;
};

IncidenceFunction make_incidence(const Reader& r, const std::string& family_key, const std::string& beta_key,
                                 const std::string& prefix)
{
    const double beta = r.number(beta_key);
    switch (parse_incidence_family(r.text(family_key))) {
    case IncidenceFamily::bilinear:
        return IncidenceFunction::bilinear(beta);
    case IncidenceFamily::exponential_damped:
        return IncidenceFunction::exponential_damped(beta, r.number(prefix + "m"));
    case IncidenceFamily::saturated:
        return IncidenceFunction::saturated(beta, r.number(prefix + "a1"));
    case IncidenceFamily::rational_quadratic:
        return IncidenceFunction::rational_quadratic(beta, r.number(prefix + "omega1"),
                                                     r.number(prefix + "omega2"));
    }
    throw ConfigError("unreachable incidence family");
}

/// Uniform in [0, 1) from the top 53 bits; identical on every platform.
double unit_draw(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

void ConfigMap::set(const std::string& key, std::string value, std::string origin)
{
    entries_[key] = Entry{std::move(value), std::move(origin)};
}

const ConfigMap::Entry* ConfigMap::find(const std::string& key) const
{
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

const std::vector<std::string>& known_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& k : key_table) {
            out.emplace_back(k.name);
        }
        return out;
    }();
    return keys;
}

const std::vector<std::string>& required_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& k : key_table) {
            if (!k.fallback) {
                out.emplace_back(k.name);
            }
        }
        return out;
    }();
    return keys;
}

bool is_preset(std::string_view name)
{
    return name == "table1_low" || name == "table1_high";
}

ConfigMap preset_values(std::string_view name)
{
    if (!is_preset(name)) {
        throw ConfigError("unknown preset '" + std::string(name) + "' (expected table1_low or table1_high)");
    }
    const bool high = name == "table1_high";
    const std::string origin = "preset " + std::string(name);
    ConfigMap m;
    const std::pair<const char*, const char*> values[] = {
        {"Lambda", "0.392465"}, {"mu", "0.001"},       {"alpha", "0.005"},  {"gamma1", "0.005"},
        {"gamma", "0.009"},     {"c", "0.09"},         {"dS", "0.1"},       {"dV", "0.1"},
        {"dI", "0.1"},          {"dR", "0.1"},         {"incidence_f", "bilinear"},
        {"incidence_h", "bilinear"},
        {"N", "100"},           {"t_end", "1500"},     {"S_init", "30"},    {"V_init", "10"},
        {"I_init", "5"},        {"R_init", "0"},
    };
    for (const auto& [k, v] : values) {
        m.set(k, v, origin);
    }
    m.set("beta1", high ? "0.002" : "0.0008", origin);
    m.set("beta2", high ? "0.0016" : "0.00064", origin);
    m.set("preset", std::string(name), origin);
    return m;
}

ConfigMap parse_config_text(std::string_view text, std::string_view source)
{
    ConfigMap explicit_entries;
    std::string preset;
    std::string preset_origin;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        const std::string origin = std::string(source) + ":" + std::to_string(line_no);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(origin + ": expected 'key = value', got '" + std::string(line) + "'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw ConfigError(origin + ": missing key before '='");
        }
        if (!spec_for(key)) {
            throw ConfigError(origin + ": unknown key '" + key + "'");
        }
        if (explicit_entries.contains(key)) {
            throw ConfigError(origin + ": duplicate key '" + key + "' (first set at " +
                              explicit_entries.find(key)->origin + ")");
        }
        explicit_entries.set(key, value, origin);
    }

    ConfigMap out;
    if (const auto* p = explicit_entries.find("preset"); p && !p->value.empty()) {
        store(out, "preset", p->value, p->origin);
    }
    for (const auto& [k, e] : explicit_entries.entries()) {
        if (k != "preset") {
            out.set(k, e.value, e.origin);
        }
    }
    return out;
}

ConfigMap load_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

void apply_override(ConfigMap& map, std::string_view assignment, std::string_view origin)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(std::string(origin) + ": expected key=value, got '" + std::string(assignment) + "'");
    }
    const auto key = trim(assignment.substr(0, eq));
    const auto value = trim(assignment.substr(eq + 1));
    store(map, key, value, std::string(origin));
}

std::vector<std::string> split_list(std::string_view text)
{
    std::vector<std::string> out;
    if (trim(text).empty()) {
        return out;
    }
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        out.emplace_back(trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

ScenarioConfig resolve(const ConfigMap& map)
{
    std::vector<std::string> missing;
    for (const auto& key : required_keys()) {
        const auto* e = map.find(key);
        if (!e || e->value.empty()) {
            missing.push_back(key);
        }
    }
    if (!missing.empty()) {
        std::string msg = "missing required keys:";
        for (const auto& k : missing) {
            msg += " " + k;
        }
        msg += " (or set 'preset = table1_low|table1_high')";
        throw ConfigError(msg);
    }

    const Reader r(map);
    ScenarioConfig sc;
    sc.preset = r.text("preset");
    for (const auto& key : known_keys()) {
        sc.resolved[key] = r.text(key);
    }

    RunConfig& run = sc.run;
    Parameters& p = run.params;
    p.Lambda = r.number("Lambda");
    p.mu = r.number("mu");
    p.alpha = r.number("alpha");
    p.gamma1 = r.number("gamma1");
    p.gamma = r.number("gamma");
    p.c = r.number("c");
    p.dS = r.number("dS");
    p.dV = r.number("dV");
    p.dI = r.number("dI");
    p.dR = r.number("dR");

    run.f = make_incidence(r, "incidence_f", "beta1", "f_");
    run.h = make_incidence(r, "incidence_h", "beta2", "h_");

    const KernelFamily family = parse_kernel_family(r.text("kernel"));
    switch (family) {
    case KernelFamily::dirac:
        p.k = r.number("k");
        run.kernel = DelayKernel::dirac(r.number("tau0"), p.k);
        break;
    case KernelFamily::uniform:
        p.k = r.number("k");
        run.kernel = DelayKernel::uniform(p.k);
        break;
    case KernelFamily::table: {
        run.kernel = DelayKernel::table(r.numbers("kernel_nodes"), r.numbers("kernel_densities"));
        p.k = run.kernel.horizon();
        if (map.contains("k") && std::fabs(r.number("k") - p.k) > 1e-12 * std::max(1.0, p.k)) {
            throw ConfigError(r.origin("k") + ": k must equal the last table kernel node (" +
                              std::to_string(p.k) + ")");
        }
        sc.resolved["k"] = format_number(p.k);
        break;
    }
    }
    run.quadrature_nodes = r.count("n_nodes");
    run.grid = Grid1D(r.count("N"));
    run.dt = r.number("dt");
    run.t_end = r.number("t_end");
    run.steady_tol = r.number("steady_tol");
    run.record_stride = r.number("record_stride");
    run.snapshot_times = r.numbers("snapshot_times");

    sc.perturb_amp = r.number("perturb_amp");
    const std::string mode = r.text("perturb_mode");
    if (mode == "cosine") {
        sc.perturb_mode = PerturbMode::cosine;
    } else if (mode == "random") {
        sc.perturb_mode = PerturbMode::random;
    } else {
        throw ConfigError(r.origin("perturb_mode") + ": perturb_mode must be cosine or random");
    }
    sc.seed = static_cast<std::uint64_t>(r.count("seed"));
    sc.hypothesis_I_max = r.number("hyp_I_max");
    sc.hypothesis_samples = r.count("hyp_samples");

    const std::size_t nodes = run.grid.nodes();
    const double i0 = r.number("I_init");
    run.initial = FieldState::homogeneous(nodes, r.number("S_init"), r.number("V_init"), i0, r.number("R_init"));
    if (sc.perturb_amp < 0.0 || sc.perturb_amp > i0) {
        throw ConfigError(r.origin("perturb_amp") + ": perturb_amp must lie in [0, I_init] to keep I >= 0");
    }
    if (sc.perturb_amp > 0.0) {
        std::mt19937_64 rng(sc.seed);
        for (std::size_t x = 0; x < nodes; ++x) {
            const double shape = sc.perturb_mode == PerturbMode::cosine
                                     ? std::cos(std::numbers::pi * run.grid.node(x))
                                     : 2.0 * unit_draw(rng) - 1.0;
            run.initial.I[x] = i0 + sc.perturb_amp * shape;
        }
    }

    run.validate();
    return sc;
}

ScenarioConfig parse_config(std::string_view path_or_preset)
{
    const std::filesystem::path path(path_or_preset);
    std::error_code ec;
    if (std::filesystem::is_regular_file(path, ec)) {
        return resolve(load_config_file(path));
    }
    if (is_preset(path_or_preset)) {
        return resolve(preset_values(path_or_preset));
    }
    throw ConfigError("'" + std::string(path_or_preset) + "' is neither a readable config file nor a preset");
}

std::string render_config(const ScenarioConfig& cfg)
{
    std::string out;
    for (const auto& key : known_keys()) {
        const auto it = cfg.resolved.find(key);
        out += key + " = " + (it == cfg.resolved.end() ? std::string() : it->second) + "\n";
    }
    return out;
}

} // namespace svir
