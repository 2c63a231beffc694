#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "rtr/config.hpp"
#include "rtr/recursion.hpp"

namespace rtr {

enum class DiffFormat { Canonical, PartialFractions, CoefficientTable };
DiffFormat parse_format(const std::string& s);

// Deterministic text for the coefficient of dz0...dz_{arity-1}.
std::string serialize_diff(const Frac& coeff, int arity, DiffFormat fmt = DiffFormat::Canonical);
// Inverse of the canonical format.
Frac deserialize_diff(const std::string& text, int arity);

// Entries on disk as <key>.diff plus manifest.json.  The directory is
// RTR_CACHE_DIR, else $HOME/.cache/rtr.
class DiskCache {
public:
    explicit DiskCache(std::filesystem::path dir);
    static std::filesystem::path default_dir();

    static std::string key(const CurveConfig& cfg, int two_g, int arity, Flavor fl);
    std::optional<Frac> load(const CurveConfig& cfg, int two_g, int arity, Flavor fl) const;
    void store(const CurveConfig& cfg, int two_g, int arity, Flavor fl, const Frac& f);

    // Preloads every cached entry with level <= max_level into e; returns the count.
    int restore(RecursionEngine& e, const CurveConfig& cfg, int max_level) const;
    // Writes every stable entry of e.
    void save(const RecursionEngine& e, const CurveConfig& cfg);

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

}  // namespace rtr
