#include "fwb/serialize.hpp"

#include <nlohmann/json.hpp>

namespace fwb {

namespace {

std::string ratStr(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace

Json cycToJson(const Cyc& v) {
    Cyc n = v.normalized();
    Json j;
    j["conductor"] = n.conductor();
    Json coeffs = Json::array();
    for (long long k = 0; k < cycPhi(n.conductor()); ++k) coeffs.push_back(ratStr(n.coeff(k)));
    j["coeffs"] = coeffs;
    return j;
}

Json datumToJson(const ModularDatum& d, bool withFusion) {
    Json j;
    j["primaries"] = d.labels;
    j["vacuum"] = d.vacuum;
    Json S = Json::array();
    for (int a = 0; a < d.size(); ++a) {
        Json row = Json::array();
        for (int b = 0; b < d.size(); ++b) row.push_back(cycToJson(d.S(a, b)));
        S.push_back(row);
    }
    j["S"] = S;
    Json T = Json::array();
    for (int a = 0; a < d.size(); ++a) T.push_back(cycToJson(d.tvec[a]));
    j["T"] = T;
    j["conj"] = d.conjPerm;
    if (withFusion) {
        Json F = Json::array();
        for (int a = 0; a < d.size(); ++a) {
            Json row = Json::array();
            for (int b = 0; b < d.size(); ++b) {
                Json cell = Json::array();
                for (const Int& c : d.fusion(a, b)) cell.push_back(c.convert_to<long long>());
                row.push_back(cell);
            }
            F.push_back(row);
        }
        j["fusion"] = F;
    }
    return j;
}

Json invariantsToJson(const ModularDatum& d, const std::vector<ModularInvariant>& zs) {
    Json j;
    j["primaries"] = d.labels;
    Json mats = Json::array();
    for (const auto& z : zs) {
        Json entry;
        Json rows = Json::array();
        for (const auto& row : z.Z) {
            Json r = Json::array();
            for (const Int& c : row) r.push_back(c.convert_to<long long>());
            rows.push_back(r);
        }
        entry["matrix"] = rows;
        Json tags;
        tags["automorphism"] = z.isAutomorphism();
        Json expo = Json::array();
        for (int e : z.exponents()) expo.push_back(d.labels[e]);
        tags["exponents"] = expo;
        entry["tags"] = tags;
        mats.push_back(entry);
    }
    j["matrices"] = mats;
    return j;
}

Json nimrepToJson(const ModularDatum& d, const Nimrep& N, const std::vector<Int>& dims) {
    Json j;
    j["primaries"] = d.labels;
    j["boundary"] = N.boundary;
    Json mats = Json::array();
    for (const auto& M : N.mats) {
        Json rows = Json::array();
        for (const auto& row : M) rows.push_back(row);
        mats.push_back(rows);
    }
    j["mats"] = mats;
    Json dd = Json::array();
    for (const Int& x : dims) dd.push_back(x.convert_to<long long>());
    j["dims"] = dd;
    return j;
}

Json chargeToJson(const ChargeGroupResult& cg) {
    Json j;
    Json f = Json::array();
    for (const Int& d : cg.group.invariantFactors) f.push_back(d.convert_to<long long>());
    j["invariant_factors"] = f;
    Json gens = Json::array();
    for (const auto& [mod, row] : cg.generators) {
        Json g;
        g["modulus"] = mod.convert_to<long long>();
        Json q = Json::array();
        for (const Int& x : row) q.push_back(x.convert_to<long long>());
        g["assignment"] = q;
        gens.push_back(g);
    }
    j["generators"] = gens;
    return j;
}

NimrepFile nimrepFromJson(const Json& j) {
    NimrepFile f;
    f.primaries = j.at("primaries").get<std::vector<std::string>>();
    f.N.boundary = j.at("boundary").get<std::vector<std::string>>();
    for (const auto& M : j.at("mats")) {
        NMat mat;
        for (const auto& row : M) mat.push_back(row.get<std::vector<long long>>());
        f.N.mats.push_back(std::move(mat));
    }
    for (const auto& v : j.at("dims")) f.dims.push_back(Int(v.get<long long>()));
    return f;
}

RunConfig configFromJson(const Json& j) {
    RunConfig c;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "conductor_cap") c.conductorCap = it->get<long long>();
        else if (key == "search_size_cap") c.searchSizeCap = it->get<int>();
        else if (key == "search_node_cap") c.searchNodeCap = it->get<long long>();
        else if (key == "lattice_cap") c.latticeCap = it->get<int>();
        else if (key == "seed") c.seed = it->get<std::uint64_t>();
        else if (key == "out") c.outPath = it->get<std::string>();
        else if (key == "format") c.format = it->get<std::string>();
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    if (c.conductorCap <= 0 || c.searchSizeCap <= 0 || c.searchNodeCap <= 0 || c.latticeCap <= 0)
        throw std::invalid_argument("config: caps must be positive");
    return c;
}

}  // namespace fwb
