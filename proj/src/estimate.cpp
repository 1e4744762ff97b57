#include "volent/estimate.hpp"

#include <cstdio>

namespace volent {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::UlamPressure: return "ulam_pressure";
        case Method::BallGrowth: return "ball_growth";
        case Method::GraphSpectral: return "graph_spectral";
    }
    return "unknown";
}

void EntropyEstimate::note(const std::string& key, const std::string& value) {
    diagnostics.emplace_back(key, value);
}

void EntropyEstimate::note(const std::string& key, double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    diagnostics.emplace_back(key, buf);
}

std::string EntropyEstimate::lookup(const std::string& key) const {
    for (const auto& [k, v] : diagnostics)
        if (k == key) return v;
    return {};
}

}  // namespace volent
