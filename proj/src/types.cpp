#include "types.hpp"

#include "error.hpp"

namespace tikm {

const char* to_string(FilterMode m) {
    switch (m) {
        case FilterMode::none: return "none";
        case FilterMode::point: return "point";
        case FilterMode::point_group: return "group";
    }
    return "?";
}

const char* to_string(InitMode m) {
    switch (m) {
        case InitMode::random: return "random";
        case InitMode::kmeanspp: return "kmeanspp";
    }
    return "?";
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::stable: return "stable";
        case Termination::tol: return "tol";
        case Termination::max_iters: return "max_iters";
    }
    return "?";
}

FilterMode filter_mode_from_string(const std::string& s) {
    if (s == "none") return FilterMode::none;
    if (s == "point") return FilterMode::point;
    if (s == "group" || s == "point_group") return FilterMode::point_group;
    throw ConfigError("unknown filter mode '" + s + "' (expected none|point|group)");
}

InitMode init_mode_from_string(const std::string& s) {
    if (s == "random") return InitMode::random;
    if (s == "kmeanspp") return InitMode::kmeanspp;
    throw ConfigError("unknown init mode '" + s + "' (expected random|kmeanspp)");
}

std::size_t effective_groups(const EngineConfig& config) {
    if (config.filter_mode != FilterMode::point_group) return 1;
    if (config.groups == 0) return (config.k + 9) / 10;
    return config.groups;
}

} // namespace tikm
