#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtr {

struct ConfigError : std::runtime_error {
    int line, col;
    ConfigError(const std::string& msg, int l, int c)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}
};

struct CurveConfig {
    std::string zsym = "z";
    std::string x, y, sigma;
    std::string a, b, c;  // empty when no relation is given
    // name -> rational text or "symbolic", in file order
    std::vector<std::pair<std::string, std::string>> params;
    struct PTilde {
        std::string point, mu;
    };
    std::vector<PTilde> ptilde_plus;
    std::map<std::string, std::string> options;

    bool has_relation() const { return !a.empty(); }
    std::optional<std::string> param(const std::string& name) const;
    void set_param(const std::string& name, const std::string& value);
    int option_int(const std::string& key, int def) const;
};

CurveConfig parse_curve_config(const std::string& text);
CurveConfig load_curve_config(const std::string& path);
std::string serialize_curve_config(const CurveConfig& cfg);

// "a=1/2,b=symbolic" overrides
void apply_param_overrides(CurveConfig& cfg, const std::string& spec);

// FNV-1a of the canonical serialization.
uint64_t config_hash(const CurveConfig& cfg);

bool is_reserved_symbol(const std::string& name);

}  // namespace rtr
