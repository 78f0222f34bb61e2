#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "csvio.hpp"

namespace minpart {

// One checked statement inside a scenario. The description ends with the
// oracle that supplied the expected value: [analytic], [1D-radial], or
// [paper-exact].
struct Claim {
    std::string description;
    std::string expected;
    std::string measured;
    std::string tolerance;
    bool pass = false;
};

struct ScenarioReport {
    std::string id;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<Claim> claims;
    std::vector<std::string> artifacts;
    bool pass = false;       // all claims pass
    double wall_time_s = 0;  // display only

    // Persisted form. Excludes the wall time so identical configs give
    // identical bytes.
    std::string text() const;
};

// Knobs a caller may override; sentinel values keep the scenario default.
struct ScenarioOverrides {
    int ntheta = 0;
    int nt = 0;
    int restarts = -1;
    long long seed = -1;
    double tol = 0;
};

// (id, one line description) in fixed order.
const std::vector<std::pair<std::string, std::string>>& scenario_registry();

// Runs one named scenario deterministically; plot artifacts are written
// through `sink` when one is given. Unknown ids throw InvalidArgument.
ScenarioReport run_scenario(const std::string& id, const ScenarioOverrides& overrides,
                            ArtifactSink* sink);

} // namespace minpart
