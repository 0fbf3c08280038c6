#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "fwb/serialize.hpp"

using namespace fwb;

TEST_CASE("nimrep JSON round-trips through the verifier") {
    auto d = suDatum(2, 6);
    Nimrep N = adeNimrep(AdeDiagram::D, 5, 6);
    std::vector<Int> dims;
    for (const auto& w : d->su->weights) dims.push_back(weylDim(2, w));
    Json j = nimrepToJson(*d, N, dims);
    auto f = nimrepFromJson(j);
    CHECK(f.N.boundary == N.boundary);
    CHECK(f.N.mats == N.mats);
    CHECK(f.dims == dims);
    CHECK(verifyNimrep(*d, f.N).ok);
}

TEST_CASE("invariants JSON reloads into verified matrices") {
    auto d = suDatum(2, 10);
    auto zs = enumerateInvariants(*d);
    Json j = invariantsToJson(*d, zs);
    REQUIRE(j.at("matrices").size() == zs.size());
    for (size_t i = 0; i < zs.size(); ++i) {
        IMat Z;
        for (const auto& row : j["matrices"][i]["matrix"]) {
            std::vector<Int> r;
            for (const auto& v : row) r.push_back(Int(v.get<long long>()));
            Z.push_back(std::move(r));
        }
        CHECK(verifyInvariant(*d, Z).ok);
    }
}

TEST_CASE("datum JSON export is deterministic") {
    auto d1 = suDatum(3, 2);
    auto d2 = suDatum(3, 2);
    CHECK(datumToJson(*d1, true).dump() == datumToJson(*d2, true).dump());
}

TEST_CASE("cyc JSON uses the minimal conductor") {
    Cyc v = Cyc::rootOfUnity(12, 3);  // = i, conductor 4
    Json j = cycToJson(v);
    CHECK(j["conductor"] == 4);
    Json j2 = cycToJson(Cyc::fromInt(5).embedded(20));
    CHECK(j2["conductor"] == 1);
}

TEST_CASE("config rejects unknown keys and bad caps") {
    Json good = {{"conductor_cap", 1000}, {"seed", 7}};
    auto cfg = configFromJson(good);
    CHECK(cfg.conductorCap == 1000);
    CHECK(cfg.seed == 7);
    Json bad = {{"conductor_gap", 1000}};
    CHECK_THROWS_AS(configFromJson(bad), std::invalid_argument);
    Json neg = {{"conductor_cap", -5}};
    CHECK_THROWS_AS(configFromJson(neg), std::invalid_argument);
}
