// Acceptance suite: one pass/fail line per criterion, exact arithmetic
// throughout. Returns the number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "fwb/charges.hpp"
#include "fwb/doubles.hpp"
#include "fwb/invariants.hpp"
#include "fwb/lattice.hpp"
#include "fwb/nimreps.hpp"
#include "fwb/repring.hpp"

using namespace fwb;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, const std::function<std::string()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
        detail = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                  .count();
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << id << " (" << name << "): " << detail
              << " [" << ms << " ms]" << std::endl;
    if (!ok) ++failures;
}

struct Fail : std::runtime_error {
    explicit Fail(const std::string& m) : std::runtime_error(m) {}
};

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

// Prefetch fusion vectors fusion(a, rep) for all primaries against the orbit
// representatives, split over two threads (the cache is thread-safe).
void prefetchFusion(const ModularDatum& d, const std::vector<int>& targets) {
    auto worker = [&](int parity) {
        for (int a = parity; a < d.size(); a += 2)
            for (int t : targets) d.fusion(a, t);
    };
    std::thread t1(worker, 0), t2(worker, 1);
    t1.join();
    t2.join();
}

std::vector<std::array<int, 3>> caseATriples(int nMax, int kMax) {
    std::vector<std::array<int, 3>> out;
    for (int n = 2; n <= nMax; ++n)
        for (int d = 2; d <= n; ++d) {
            if (n % d != 0) continue;
            for (int k = 1; k <= kMax; ++k) {
                int np = n / d;
                if ((static_cast<long long>(np) * (n + 1) * k) % 2 != 0) continue;  // no invariant
                if (!caseA(n, k, d)) continue;
                out.push_back({n, k, d});
            }
        }
    return out;
}

}  // namespace

int main() {
    std::cout << "== acceptance suite ==" << std::endl;

    criterion(1, "SU(2) A-D-E reproduction", [] {
        std::map<int, int> expected;
        for (int k : {3, 5, 7}) expected[k] = 1;
        for (int k : {4, 6, 8, 12, 14}) expected[k] = 2;
        for (int k : {10, 16, 28}) expected[k] = 3;
        for (auto [k, count] : expected) {
            auto d = suDatum(2, k);
            auto zs = enumerateInvariants(*d);
            if (static_cast<int>(zs.size()) != count)
                throw Fail("level " + std::to_string(k) + ": got " + std::to_string(zs.size()) +
                           " invariants, expected " + std::to_string(count));
            // Identify the members: diagonal always, Z_<J> for even k, one
            // further exceptional at 10, 16, 28.
            ModularInvariant I;
            I.Z.assign(d->size(), std::vector<Int>(d->size(), Int(0)));
            for (int i = 0; i < d->size(); ++i) I.Z[i][i] = 1;
            bool haveA = false;
            for (auto& z : zs) haveA |= z.Z == I.Z;
            if (!haveA) throw Fail("diagonal invariant missing at k=" + std::to_string(k));
            if (count >= 2) {
                auto sc = simpleCurrentInvariant(*d, d->simpleCurrents[0]);
                bool haveD = false;
                for (auto& z : zs) haveD |= z.Z == sc->Z;
                if (!haveD) throw Fail("simple-current invariant missing at k=" + std::to_string(k));
            }
        }
        return std::string("exact lists {A}, {A,D}, {A,D,E} reproduced for all 11 levels");
    });

    criterion(2, "charge groups of the A-D-E nimreps", [] {
        for (int k = 1; k <= 16; ++k) {
            auto d = suDatum(2, k);
            auto cg = chargeGroup(*d, verlindeNimrep(*d), suDims(*d));
            if (!(cg.group.invariantFactors == std::vector<Int>{Int(k + 2)}))
                throw Fail("A-series k=" + std::to_string(k) + ": " + cg.group.toString());
        }
        auto d6 = suDatum(2, 6);
        if (chargeGroup(*d6, adeNimrep(AdeDiagram::D, 5, 6), suDims(*d6)).group.toString() != "Z_4")
            throw Fail("D at k=6 is not Z_4");
        auto d8 = suDatum(2, 8);
        if (chargeGroup(*d8, adeNimrep(AdeDiagram::D, 6, 8), suDims(*d8)).group.toString() != "Z_2 x Z_2")
            throw Fail("D at k=8 is not Z_2 x Z_2");
        auto d10 = suDatum(2, 10);
        if (chargeGroup(*d10, adeNimrep(AdeDiagram::E6, 6, 10), suDims(*d10)).group.toString() != "Z_3")
            throw Fail("E6 is not Z_3");
        auto d16 = suDatum(2, 16);
        if (chargeGroup(*d16, adeNimrep(AdeDiagram::E7, 7, 16), suDims(*d16)).group.toString() != "Z_2")
            throw Fail("E7 is not Z_2");
        auto d28 = suDatum(2, 28);
        if (!chargeGroup(*d28, adeNimrep(AdeDiagram::E8, 8, 28), suDims(*d28)).group.invariantFactors.empty())
            throw Fail("E8 is not trivial");
        return std::string("Z_{k+2} (k<=16), Z_4, Z_2xZ_2, Z_3, Z_2, 0 all exact");
    });

    criterion(3, "Theorem 4 end-to-end (Case A, n<=4, k<=8)", [] {
        auto triples = caseATriples(4, 8);
        int done = 0;
        for (auto [n, k, dd] : triples) {
            auto dat = suDatum(n, k);
            int np = n / dd;
            auto states = orbitStates(*dat, dd);
            std::vector<int> reps;
            for (auto& s : states)
                if (s.resolver == 0) reps.push_back(s.orbit[0]);
            prefetchFusion(*dat, reps);
            auto N = theorem4Nimrep(*dat, dd);
            auto rep = verifyNimrep(*dat, N);
            if (!rep.ok)
                throw Fail("verify failed at (" + std::to_string(n) + "," + std::to_string(k) + "," +
                           std::to_string(dd) + "): " + rep.violations[0]);
            auto sc = simpleCurrentInvariant(*dat, dat->simpleCurrents[np - 1]);
            if (!sc) throw Fail("missing simple-current invariant");
            if (!compatible(*dat, N, *sc))
                throw Fail("incompatible at (" + std::to_string(n) + "," + std::to_string(k) + "," +
                           std::to_string(dd) + ")");
            if (n == 2) {
                auto ade = adeNimrep(AdeDiagram::D, k / 2 + 2, k);
                if (!nimrepIsomorphism(N, ade, 1)) throw Fail("not the D diagram at k=" + std::to_string(k));
                auto so = so3Nimrep(k);
                if (!nimrepIsomorphism(N, so.nimrep, 1))
                    throw Fail("does not match so3Nimrep at k=" + std::to_string(k));
            }
            ++done;
        }
        return std::to_string(done) + " Case-A triples verified and compatible with Z_<J^{n'}>";
    });

    criterion(4, "torus completeness for gram [2N], N<=12", [] {
        for (long long N = 1; N <= 12; ++N) {
            EvenLattice L;
            L.gram = {{Int(2 * N)}};
            auto disc = discriminant(L);
            auto md = latticeDatum(disc);
            auto glue = classifyInvariants(disc);
            auto brute = enumerateInvariants(*md);
            if (brute.size() != glue.size())
                throw Fail("count mismatch at 2N=" + std::to_string(2 * N) + ": " +
                           std::to_string(glue.size()) + " vs brute " + std::to_string(brute.size()));
            for (auto& z : brute) {
                bool found = false;
                for (auto& t : glue) found |= t.Z.Z == z.Z;
                if (!found) throw Fail("brute-force invariant missing from the classification");
                for (auto& row : z.Z)
                    for (auto& e : row)
                        if (e > 1) throw Fail("entry above 1 in a torus invariant");
            }
            for (auto& t : glue) {
                auto r = theorem2Pipeline(disc, t);  // throws if <a+,a-> != Z
                if (!(r.chargeGroup.invariantFactors == std::vector<Int>{Int(0)}))
                    throw Fail("charge group is not Z at 2N=" + std::to_string(2 * N));
            }
        }
        return std::string("gluing classification == brute force; Z recovered; charge group Z");
    });

    criterion(5, "Z_p sector: classification and pair counts", [] {
        for (long long p : {2, 3, 5, 7}) {
            auto rows = zpClassify(p);
            if (static_cast<long long>(rows.size()) != 2 * p + 2)
                throw Fail("p=" + std::to_string(p) + ": got " + std::to_string(rows.size()));
            // Table-1 columns, field by field.
            auto subgroupAll = [&](const std::vector<long long>& v) {
                return static_cast<long long>(v.size()) == p * p;
            };
            for (auto& r : rows) {
                bool ok = true;
                if (r.name == "Z^(1)")
                    ok = subgroupAll(r.E) && r.Dplus.size() == 1 && r.Dminus.size() == 1 &&
                         r.nimrepDim == p * p && r.neutralSize == p * p && r.fullSize == p * p;
                else if (r.name.rfind("Z^(", 0) == 0)
                    ok = r.E.size() == 1 && r.Dplus.size() == 1 && r.nimrepDim == 1 &&
                         r.neutralSize == p * p && r.fullSize == p * p;
                else if (r.name.rfind("Z'^(", 0) == 0) {
                    long long l = std::stoll(r.name.substr(4));
                    std::vector<long long> expectE;
                    for (long long b = 0; b < p; ++b) expectE.push_back(((l * b) % p) * p + b);
                    std::sort(expectE.begin(), expectE.end());
                    ok = r.E == expectE && r.Dplus.size() == 1 && r.nimrepDim == p &&
                         r.neutralSize == p * p && r.fullSize == p * p && r.psi == l;
                } else if (r.name == "Z^{0,0}") {
                    std::vector<long long> gx0;
                    for (long long a = 0; a < p; ++a) gx0.push_back(a * p);
                    ok = r.E == gx0 && r.Dplus == gx0 && r.Dminus == gx0 && r.nimrepDim == p &&
                         r.neutralSize == 1 && r.fullSize == p * p;
                } else if (r.name == "Z^{1,1}") {
                    std::vector<long long> x0g;
                    for (long long b = 0; b < p; ++b) x0g.push_back(b);
                    ok = r.E == x0g && r.Dplus == x0g && r.Dminus == x0g && r.nimrepDim == p &&
                         r.neutralSize == 1;
                } else if (r.name == "Z^{0,1}" || r.name == "Z^{1,0}") {
                    ok = r.E.size() == 1 && r.Dplus.size() == p && r.Dminus.size() == p &&
                         r.Dplus != r.Dminus && r.nimrepDim == 1 && r.neutralSize == 1;
                }
                if (!ok) throw Fail("Table-1 column mismatch for " + r.name + " at p=" + std::to_string(p));
            }
        }
        for (auto [p, nu] : std::vector<std::pair<long long, int>>{{2, 2}, {2, 3}, {3, 2}}) {
            auto c = zpnPairCount(p, nu);
            if (c.closedForm != c.enumerated)
                throw Fail("pair count mismatch at (" + std::to_string(p) + "," + std::to_string(nu) + ")");
            Int autosExpect = Int(2) * Int(p);
            for (int i = 1; i < nu; ++i) autosExpect *= p;
            autosExpect -= autosExpect / p;  // 2 p^nu - 2 p^{nu-1}
            if (Int(c.automorphismInvariants) != autosExpect)
                throw Fail("automorphism count mismatch at (" + std::to_string(p) + "," +
                           std::to_string(nu) + ")");
        }
        return std::string("2p+2 invariants with Table-1 columns for p in {2,3,5,7}; closed-form pair counts match");
    });

    criterion(6, "dihedral sector for n in {2,3,4}", [] {
        for (int n : {2, 3, 4}) {
            auto D = dihedralDouble(n);
            auto rel = verifyModularRelations(*D.datum, 50);
            if (!rel.ok) throw Fail("modular relations fail at n=" + std::to_string(n) + ": " + rel.failures[0]);
            auto info = dihedralSectorTable(D, n);
            for (int code = 1; code < 8; ++code) {
                const SimpleCurrent* sc = nullptr;
                for (auto& s : D.datum->simpleCurrents)
                    if (s.perm[0] == info.zIndex[code]) sc = &s;
                if (!sc) throw Fail("missing simple current");
                for (int t = 0; t < D.size(); ++t) {
                    if (sc->perm[t] != info.perm[code][t])
                        throw Fail("permutation mismatch at n=" + std::to_string(n));
                    Rat twoQ = 2 * sc->Q[t];
                    if (!isInteger(twoQ) ||
                        static_cast<int>(modNorm(ratNum(twoQ).convert_to<long long>(), 2)) !=
                            info.parity[code][t])
                        throw Fail("parity mismatch at n=" + std::to_string(n));
                    if ((sc->perm[t] == t) != static_cast<bool>(info.isFixed[code][t]))
                        throw Fail("fixed-point mismatch at n=" + std::to_string(n));
                }
            }
            auto so = dihedralSoTheory(n);
            auto z100 = dihedralScInvariant(D, n, 1, 0, 0);
            if (!(so.matchedInvariant.Z == z100.Z))
                throw Fail("so-theory invariant is not Z^(100) at n=" + std::to_string(n));
            if (!(so.viaBranching.Z == z100.Z))
                throw Fail("branching route disagrees at n=" + std::to_string(n));
            auto nrep = verifyNimrep(*D.datum, so.nimrep);
            if (!nrep.ok) throw Fail("so-theory nimrep fails at n=" + std::to_string(n));
        }
        return std::string("(ST)^3 = S^2, all parities/permutations/fixed points re-derived, Z^(100) matched");
    });

    criterion(7, "fusion oracle equivalence (Verlinde vs Kac-Walton)", [] {
        long long comparisons = 0;
        auto sweep = [&](int n, int kMax) {
            for (int k = 1; k <= kMax; ++k) {
                auto d = suDatum(n, k);
                d->srawConj(0, 0);  // build the conjugate cache up front
                int m = d->size();
                std::atomic<long long> cnt{0};
                std::atomic<bool> bad{false};
                auto worker = [&](int parity) {
                    for (int a = parity; a < m; a += 2) {
                        if (bad) return;
                        for (int b = a; b < m; ++b) {
                            auto v = fusionVerlinde(*d, a, b);
                            auto w = fusionKacWalton(*d, a, b);
                            auto w2 = fusionKacWalton(*d, b, a);
                            if (v != w || v != w2) {
                                bad = true;
                                return;
                            }
                            cnt += 2 * m;
                        }
                    }
                };
                std::thread t1(worker, 0), t2(worker, 1);
                t1.join();
                t2.join();
                if (bad) throw Fail("mismatch at SU(" + std::to_string(n) + ") k=" + std::to_string(k));
                comparisons += cnt;
            }
        };
        sweep(2, 20);
        sweep(3, 6);
        sweep(4, 4);
        return std::to_string(comparisons) + " exact integer comparisons, all equal";
    });

    criterion(8, "Eq.-(chgpsc) validation against the SNF oracle", [] {
        auto triples = caseATriples(4, 8);
        int matches = 0, mismatches = 0;
        std::ostringstream report;
        for (auto [n, k, dd] : triples) {
            auto dat = suDatum(n, k);
            auto states = orbitStates(*dat, dd);
            std::vector<int> reps;
            for (auto& s : states)
                if (s.resolver == 0) reps.push_back(s.orbit[0]);
            prefetchFusion(*dat, reps);
            auto N = theorem4Nimrep(*dat, dd);
            auto rep = verifyNimrep(*dat, N);
            if (!rep.ok) throw Fail("SNF side unverified at (" + std::to_string(n) + "," +
                                    std::to_string(k) + "," + std::to_string(dd) + ")");
            auto snf = chargeGroup(*dat, N, suDims(*dat)).group;
            auto pred = chgpscPredict(n, k, dd);
            if (snf == pred) {
                ++matches;
            } else {
                ++mismatches;
                report << "\n  MISMATCH (n=" << n << ",k=" << k << ",d=" << dd
                       << "): verified SNF = " << snf.toString() << ", predicted = " << pred.toString();
            }
        }
        std::ostringstream out;
        out << matches << " matches, " << mismatches
            << " reported mismatches (formula conjectural; SNF verified on every triple)";
        out << report.str();
        return out.str();
    });

    criterion(9, "repring fidelity", [] {
        for (int k : {4, 8, 16}) {
            auto so = so3Nimrep(k);
            auto ade = adeNimrep(AdeDiagram::D, k / 2 + 2, k);
            if (!nimrepIsomorphism(so.nimrep, ade, 1))
                throw Fail("so3Nimrep(" + std::to_string(k) + ") is not the D_{k/2+2} adjacency");
        }
        for (int k = 1; k <= 6; ++k) {
            auto cc = su3CcNimrep(k);
            int selfConj = 0;
            for (int i = 0; i < cc.datum->size(); ++i)
                if (cc.datum->conjPerm[i] == i) ++selfConj;
            if (cc.nimrep.dim() != selfConj)
                throw Fail("su3cc boundary count mismatch at k=" + std::to_string(k));
            auto C = permutationInvariant(cc.datum->conjPerm);
            if (!compatible(*cc.datum, cc.nimrep, C))
                throw Fail("su3cc exponents are not the diagonal of C at k=" + std::to_string(k));
        }
        return std::string("D_{k/2+2} adjacency for k in {4,8,16}; su3cc boundary = #self-conjugate, exponents = diag C");
    });

    std::cout << "== " << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED")
              << " ==" << std::endl;
    return failures;
}
