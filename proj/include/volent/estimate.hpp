#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace volent {

enum class Method { UlamPressure, BallGrowth, GraphSpectral };

std::string_view to_string(Method m);

struct EntropyEstimate {
    double value = 0;
    double err = 0;
    Method method = Method::UlamPressure;
    std::vector<std::pair<std::string, std::string>> diagnostics;

    void note(const std::string& key, const std::string& value);
    void note(const std::string& key, double value);
    // Empty when the key is absent.
    std::string lookup(const std::string& key) const;
};

}  // namespace volent
