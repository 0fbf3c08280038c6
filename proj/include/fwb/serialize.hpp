#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "fwb/charges.hpp"
#include "fwb/invariants.hpp"
#include "fwb/nimreps.hpp"

namespace fwb {

using Json = nlohmann::ordered_json;

Json cycToJson(const Cyc& v);
Json datumToJson(const ModularDatum& d, bool withFusion);
Json invariantsToJson(const ModularDatum& d, const std::vector<ModularInvariant>& zs);
Json nimrepToJson(const ModularDatum& d, const Nimrep& N, const std::vector<Int>& dims);
Json chargeToJson(const ChargeGroupResult& cg);

struct NimrepFile {
    Nimrep N;
    std::vector<Int> dims;
    std::vector<std::string> primaries;
};
NimrepFile nimrepFromJson(const Json& j);

/// Run configuration; unknown keys are rejected.
struct RunConfig {
    long long conductorCap = 6000;
    int searchSizeCap = 40;
    long long searchNodeCap = 200000000;
    int latticeCap = 4096;
    std::uint64_t seed = 12345;
    std::string outPath;
    std::string format = "json";
};

RunConfig configFromJson(const Json& j);

}  // namespace fwb
