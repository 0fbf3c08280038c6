// Command-line front end for the modular-data workbench: exact modular data,
// invariant enumeration, nimreps, charge groups, finite-group doubles, torus
// classification and representation-ring quotients.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "fwb/charges.hpp"
#include "fwb/doubles.hpp"
#include "fwb/invariants.hpp"
#include "fwb/lattice.hpp"
#include "fwb/nimreps.hpp"
#include "fwb/repring.hpp"
#include "fwb/serialize.hpp"

using namespace fwb;

namespace {

RunConfig loadConfig() {
    RunConfig cfg;
    if (const char* path = std::getenv("WORKBENCH_CONFIG")) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument(std::string("cannot open config ") + path);
        Json j = Json::parse(in);
        cfg = configFromJson(j);
    }
    return cfg;
}

void emit(const Json& j, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(outPath);
        out << j.dump(2) << "\n";
    }
}

void emitText(const std::string& s, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << s;
    } else {
        std::ofstream out(outPath);
        out << s;
    }
}

Nimrep verlindeNimrep(const ModularDatum& d) {
    Nimrep N;
    N.boundary = d.labels;
    int m = d.size();
    N.mats.assign(m, NMat(m, std::vector<long long>(m, 0)));
    for (int a = 0; a < m; ++a)
        for (int x = 0; x < m; ++x) {
            const auto& f = d.fusion(a, x);
            for (int y = 0; y < m; ++y) N.mats[a][x][y] = toLL(f[y]);
        }
    return N;
}

std::vector<Int> suDims(const ModularDatum& d) {
    std::vector<Int> dims;
    for (const auto& w : d.su->weights) dims.push_back(weylDim(d.su->n, w));
    return dims;
}

EvenLattice parseGram(const std::string& text) {
    Json j = Json::parse(text);
    EvenLattice L;
    for (const auto& row : j) {
        std::vector<Int> r;
        for (const auto& v : row) r.push_back(Int(v.get<long long>()));
        L.gram.push_back(std::move(r));
    }
    return L;
}

Json zpTableJson(long long p) {
    Json rows = Json::array();
    for (const auto& r : zpClassify(p)) {
        Json row;
        row["invariant"] = r.name;
        Json H = Json::array();
        for (auto& [a, b] : r.Hgens) H.push_back(Json::array({a, b}));
        row["H"] = H;
        row["psi"] = r.psi;
        row["E"] = r.E;
        row["D_plus"] = r.Dplus;
        row["D_minus"] = r.Dminus;
        row["nimrep_dim"] = r.nimrepDim;
        row["neutral_size"] = r.neutralSize;
        row["full_size"] = r.fullSize;
        rows.push_back(row);
    }
    Json j;
    j["p"] = p;
    j["rows"] = rows;
    return j;
}

Json dihedralTableJson(int n) {
    auto D = dihedralDouble(n);
    auto info = dihedralSectorTable(D, n);
    Json j;
    j["n"] = n;
    j["primaries"] = D.datum->labels;
    Json currents = Json::array();
    for (int code = 1; code < 8; ++code) {
        Json c;
        c["z"] = D.datum->labels[info.zIndex[code]];
        c["perm"] = info.perm[code];
        c["parity"] = info.parity[code];
        Json fixed = Json::array();
        for (int t = 0; t < D.size(); ++t)
            if (info.isFixed[code][t]) fixed.push_back(D.datum->labels[t]);
        c["fixed_points"] = fixed;
        currents.push_back(c);
    }
    j["simple_currents"] = currents;
    auto so = dihedralSoTheory(n);
    Json sot;
    sot["nimrep_dim"] = so.nimrep.dim();
    sot["full_system_size"] = so.fullSystemSize;
    auto z100 = dihedralScInvariant(D, n, 1, 0, 0);
    sot["matched_invariant_is_z100"] = so.matchedInvariant.Z == z100.Z;
    j["so_theory"] = sot;
    return j;
}

Json su2AdeJson(int k, const RunConfig& cfg) {
    auto d = suDatum(2, k, cfg.conductorCap);
    EnumerateOptions opt;
    opt.sizeCap = cfg.searchSizeCap;
    opt.nodeCap = cfg.searchNodeCap;
    auto zs = enumerateInvariants(*d, opt);
    Json j = invariantsToJson(*d, zs);
    j["level"] = k;
    return j;
}

Json torusRank1Json(int maxN) {
    Json rows = Json::array();
    for (int N = 1; N <= maxN; ++N) {
        EvenLattice L;
        L.gram = {{Int(2 * N)}};
        auto disc = discriminant(L);
        auto triples = classifyInvariants(disc);
        Json row;
        row["gram"] = 2 * N;
        row["invariants"] = triples.size();
        Json list = Json::array();
        for (const auto& t : triples) {
            auto r2 = theorem2Pipeline(disc, t);
            Json e;
            e["Dplus_size"] = t.Dplus.size();
            e["Dminus_size"] = t.Dminus.size();
            e["E_size"] = r2.E.size();
            e["nimrep_dim"] = r2.nimrep.dim();
            e["full_size"] = r2.fullSize;
            e["charge_group"] = r2.chargeGroup.toString();
            list.push_back(e);
        }
        row["pipeline"] = list;
        rows.push_back(row);
    }
    Json j;
    j["rank1"] = rows;
    return j;
}

int reproduceAll(bool update, const RunConfig& cfg) {
    std::map<std::string, Json> fixtures;
    Json ade;
    for (int k : {4, 10, 16}) ade["k" + std::to_string(k)] = su2AdeJson(k, cfg);
    fixtures["fixtures/su2_ade.json"] = ade;
    Json zp;
    for (long long p : {2, 3, 5}) zp["p" + std::to_string(p)] = zpTableJson(p);
    fixtures["fixtures/zp_table1.json"] = zp;
    Json dih;
    for (int n : {2, 3}) dih["n" + std::to_string(n)] = dihedralTableJson(n);
    fixtures["fixtures/dihedral_sector.json"] = dih;
    fixtures["fixtures/torus_rank1.json"] = torusRank1Json(8);

    bool allMatch = true;
    for (const auto& [path, j] : fixtures) {
        std::string fresh = j.dump(2) + "\n";
        if (update) {
            std::ofstream out(path);
            out << fresh;
            std::cout << "wrote " << path << "\n";
            continue;
        }
        std::ifstream in(path);
        if (!in) {
            std::cout << "MISSING " << path << "\n";
            allMatch = false;
            continue;
        }
        std::string have((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (have != fresh) {
            std::cout << "DIFFERS " << path << "\n";
            allMatch = false;
        } else {
            std::cout << "ok " << path << "\n";
        }
    }
    return allMatch ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modular-workbench: exact modular data, invariants, nimreps and charges"};
    app.require_subcommand(1);

    RunConfig cfg;
    try {
        cfg = loadConfig();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 64;
    }
    app.add_option("--seed", cfg.seed, "seed for sampled verifications");
    app.add_option("--cap-conductor", cfg.conductorCap, "conductor cap");
    app.add_option("--cap-search", cfg.searchSizeCap, "|Phi| cap for enumeration");

    auto* cDatum = app.add_subcommand("datum", "construct and export modular data");
    std::string algebra = "su";
    int n = 2, level = 1, dsub = 1, nn = 2;
    long long prime = 3;
    std::string outPath, format = "json", gramText = "[[2]]", dotPath, nimrepSpec = "verlinde";
    bool withFusion = false, doVerify = false, listInv = false;
    cDatum->add_option("--algebra", algebra, "su | double | torus | zp");
    cDatum->add_option("--n", n, "rank parameter");
    cDatum->add_option("--level", level, "level k");
    cDatum->add_option("--p", prime, "prime (zp)");
    cDatum->add_option("--gram", gramText, "Gram matrix (torus)");
    cDatum->add_option("--out", outPath, "output path");
    cDatum->add_option("--format", format, "json");
    cDatum->add_flag("--fusion", withFusion, "include fusion tables");
    cDatum->add_flag("--verify", doVerify, "run the exact modular-relation checks");

    auto* cInv = app.add_subcommand("invariants", "enumerate modular invariants");
    auto* cEnum = cInv->add_subcommand("enumerate", "complete commutant search");
    cEnum->add_option("--algebra", algebra);
    cEnum->add_option("--n", n);
    cEnum->add_option("--level", level);
    cEnum->add_option("--p", prime);
    cEnum->add_option("--gram", gramText);
    cEnum->add_option("--out", outPath);

    auto* cNim = app.add_subcommand("nimrep", "construct nimreps");
    auto* cT4 = cNim->add_subcommand("theorem4", "fixed-point-resolved simple-current nimrep");
    cT4->add_option("--n", n);
    cT4->add_option("--k", level);
    cT4->add_option("--d", dsub);
    cT4->add_option("--dot", dotPath);
    cT4->add_option("--out", outPath);
    auto* cT5 = cNim->add_subcommand("theorem5", "charge-conjugation tensor nimrep (d odd)");
    cT5->add_option("--n", n);
    cT5->add_option("--k", level);
    cT5->add_option("--d", dsub);
    cT5->add_option("--out", outPath);
    auto* cAde = cNim->add_subcommand("ade", "A-D-E diagram nimrep");
    std::string diagram = "a";
    cAde->add_option("--diagram", diagram, "a|d|e6|e7|e8");
    cAde->add_option("--nodes", nn);
    cAde->add_option("--k", level);
    cAde->add_option("--out", outPath);
    cAde->add_option("--dot", dotPath);
    auto* cVer = cNim->add_subcommand("verlinde", "regular (Verlinde) nimrep");
    cVer->add_option("--n", n);
    cVer->add_option("--k", level);
    cVer->add_option("--out", outPath);

    auto* cChg = app.add_subcommand("charges", "D-brane charge group via Smith normal form");
    cChg->add_option("--nimrep", nimrepSpec, "verlinde|a|d|e6|e7|e8|theorem4:<d>|<file.json>");
    cChg->add_option("--algebra", algebra);
    cChg->add_option("--n", n);
    cChg->add_option("--level", level);
    cChg->add_option("--out", outPath);

    auto* cDbl = app.add_subcommand("double", "finite-group doubles");
    std::string group = "dihedral";
    cDbl->add_option("--group", group, "dihedral | cyclic | zp");
    cDbl->add_option("--n", n);
    cDbl->add_option("--p", prime);
    cDbl->add_flag("--list-invariants", listInv, "list simple-current data / Table-1 rows");
    cDbl->add_option("--out", outPath);

    auto* cTor = app.add_subcommand("torus", "even-lattice sector");
    auto* cCls = cTor->add_subcommand("classify", "classify modular invariants");
    cCls->add_option("--gram", gramText);
    cCls->add_option("--out", outPath);

    auto* cRep = app.add_subcommand("repring", "character-ring quotients");
    std::string op = "so3nim";
    cRep->add_option("--op", op, "su2verl | so3nim | so3neutral | su3cc");
    cRep->add_option("--k", level);
    cRep->add_option("--dot", dotPath);
    cRep->add_option("--out", outPath);

    auto* cRepro = app.add_subcommand("reproduce", "regenerate golden fixtures and diff");
    std::string what = "all";
    bool update = false;
    cRepro->add_option("what", what, "all");
    cRepro->add_flag("--update", update, "rewrite fixtures instead of diffing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (cDatum->parsed()) {
            DatumPtr d;
            if (algebra == "su") d = suDatum(n, level, cfg.conductorCap);
            else if (algebra == "double") d = dihedralDouble(n).datum;
            else if (algebra == "torus") d = latticeDatum(discriminant(parseGram(gramText)));
            else if (algebra == "zp") d = zpnDatum(prime, 1);
            else throw std::invalid_argument("unknown algebra");
            if (doVerify) {
                auto rep = verifyModularRelations(*d, 50, cfg.seed);
                if (!rep.ok) {
                    for (auto& f : rep.failures) std::cerr << "FAIL: " << f << "\n";
                    return 1;
                }
                std::cout << "modular relations verified\n";
            }
            emit(datumToJson(*d, withFusion), outPath);
        } else if (cEnum->parsed()) {
            DatumPtr d;
            if (algebra == "su") d = suDatum(n, level, cfg.conductorCap);
            else if (algebra == "torus") d = latticeDatum(discriminant(parseGram(gramText)));
            else if (algebra == "zp") d = zpnDatum(prime, 1);
            else throw std::invalid_argument("unknown algebra");
            EnumerateOptions opt;
            opt.sizeCap = cfg.searchSizeCap;
            opt.nodeCap = cfg.searchNodeCap;
            auto zs = enumerateInvariants(*d, opt);
            emit(invariantsToJson(*d, zs), outPath);
        } else if (cT4->parsed() || cT5->parsed() || cAde->parsed() || cVer->parsed()) {
            DatumPtr d = suDatum(n, level, cfg.conductorCap);
            Nimrep N;
            if (cT4->parsed()) {
                N = theorem4Nimrep(*d, dsub);
            } else if (cT5->parsed()) {
                if (n != 3) throw std::invalid_argument("theorem5: charge-conjugation nimrep source is SU(3)");
                auto cc = su3CcNimrep(level);
                N = theorem5Nimrep(*d, dsub, cc.nimrep);
            } else if (cAde->parsed()) {
                AdeDiagram diag = AdeDiagram::A;
                if (diagram == "d") diag = AdeDiagram::D;
                else if (diagram == "e6") { diag = AdeDiagram::E6; nn = 6; }
                else if (diagram == "e7") { diag = AdeDiagram::E7; nn = 7; }
                else if (diagram == "e8") { diag = AdeDiagram::E8; nn = 8; }
                else if (diagram == "a") nn = level + 1;
                d = suDatum(2, level, cfg.conductorCap);
                N = adeNimrep(diag, nn, level);
            } else {
                N = verlindeNimrep(*d);
            }
            auto rep = verifyNimrep(*d, N, cfg.seed);
            if (!rep.ok) {
                for (auto& v : rep.violations) std::cerr << "FAIL: " << v << "\n";
                return 1;
            }
            if (!dotPath.empty()) {
                int gen = d->generators().empty() ? 0 : d->generators()[0];
                emitText(nimrepDot(N, gen, "nimrep"), dotPath);
            }
            emit(nimrepToJson(*d, N, d->su ? suDims(*d) : std::vector<Int>(d->size(), Int(1))), outPath);
        } else if (cChg->parsed()) {
            DatumPtr d = suDatum(n, level, cfg.conductorCap);
            Nimrep N;
            std::vector<Int> dims = suDims(*d);
            if (nimrepSpec == "verlinde") N = verlindeNimrep(*d);
            else if (nimrepSpec == "a") N = adeNimrep(AdeDiagram::A, level + 1, level);
            else if (nimrepSpec == "d") N = adeNimrep(AdeDiagram::D, level / 2 + 2, level);
            else if (nimrepSpec == "e6") N = adeNimrep(AdeDiagram::E6, 6, level);
            else if (nimrepSpec == "e7") N = adeNimrep(AdeDiagram::E7, 7, level);
            else if (nimrepSpec == "e8") N = adeNimrep(AdeDiagram::E8, 8, level);
            else if (nimrepSpec.rfind("theorem4:", 0) == 0)
                N = theorem4Nimrep(*d, std::stoi(nimrepSpec.substr(9)));
            else {
                std::ifstream in(nimrepSpec);
                if (!in) throw std::invalid_argument("cannot open nimrep file " + nimrepSpec);
                auto f = nimrepFromJson(Json::parse(in));
                N = f.N;
                dims = f.dims;
            }
            auto rep = verifyNimrep(*d, N, cfg.seed);
            if (!rep.ok) {
                for (auto& v : rep.violations) std::cerr << "FAIL: " << v << "\n";
                return 1;
            }
            emit(chargeToJson(chargeGroup(*d, N, dims)), outPath);
        } else if (cDbl->parsed()) {
            if (group == "zp") {
                emit(zpTableJson(prime), outPath);
            } else if (group == "dihedral") {
                if (listInv) emit(dihedralTableJson(n), outPath);
                else emit(datumToJson(*dihedralDouble(n).datum, false), outPath);
            } else if (group == "cyclic") {
                emit(datumToJson(*makeDouble(FiniteGroup::cyclic(n)).datum, false), outPath);
            } else {
                throw std::invalid_argument("unknown group tag");
            }
        } else if (cCls->parsed()) {
            auto disc = discriminant(parseGram(gramText));
            auto triples = classifyInvariants(disc, cfg.latticeCap);
            auto md = latticeDatum(disc);
            std::vector<ModularInvariant> zs;
            for (auto& t : triples) zs.push_back(t.Z);
            emit(invariantsToJson(*md, zs), outPath);
        } else if (cRep->parsed()) {
            Json j;
            if (op == "su2verl") {
                auto Q = su2VerlindePresentation(level);
                j["basis"] = Q.basisNames;
                j["sigma2_action"] = Q.actionMatrix(rtMonomial(1) + rtMonomial(-1));
            } else if (op == "so3nim") {
                auto so = so3Nimrep(level);
                j["basis"] = so.module.basisNames;
                j["kappa1_action"] = so.nimrep.mats[1];
                if (!dotPath.empty()) emitText(nimrepDot(so.nimrep, 1, "so3"), dotPath);
            } else if (op == "so3neutral") {
                auto ne = so3Neutral(level);
                j["basis"] = ne.module.basisNames;
                Json emb = Json::array();
                for (auto& row : ne.embed) {
                    Json r = Json::array();
                    for (auto& c : row) r.push_back(c.convert_to<long long>());
                    emb.push_back(r);
                }
                j["embedding"] = emb;
            } else if (op == "su3cc") {
                auto cc = su3CcNimrep(level);
                j["basis"] = cc.module.basisNames;
                int gen = cc.datum->generators()[0];
                j["generator_action"] = cc.nimrep.mats[gen];
                if (!dotPath.empty()) emitText(nimrepDot(cc.nimrep, gen, "su3cc"), dotPath);
            } else {
                throw std::invalid_argument("unknown repring op");
            }
            emit(j, outPath);
        } else if (cRepro->parsed()) {
            return reproduceAll(update, cfg);
        }
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
