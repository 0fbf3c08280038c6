#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fwb/cyclotomic.hpp"
#include "fwb/weights.hpp"

namespace fwb {

struct SimpleCurrent {
    std::vector<int> perm;   // permutation of primary indices
    std::vector<Rat> Q;      // Q_j(mu) per primary, mod 1
    Rat h;                   // h_j with T_{jj}/T_{11} = exp(2 pi i h)
    int order = 1;           // order of the permutation
};

struct SuInfo {
    int n = 0, k = 0;
    std::vector<Weight> weights;        // lex order, finite Dynkin labels
    std::map<Weight, int> index;
    long long kappa() const { return k + n; }
};

/// Universal container for exact modular data: primaries, S = snorm * sraw
/// with sraw a matrix of cyclotomic integers and snorm an exact scalar,
/// diagonal T, simple currents, charge conjugation. Immutable after
/// construction; the fusion cache is write-once per cell behind a mutex.
class ModularDatum {
public:
    std::vector<std::string> labels;
    std::vector<std::vector<Cyc>> sraw;
    Cyc snorm;
    Rat snormAbs2;  // snorm * conj(snorm), exact
    std::vector<Cyc> tvec;
    std::vector<int> conjPerm;
    std::vector<SimpleCurrent> simpleCurrents;
    int vacuum = 0;
    std::shared_ptr<const SuInfo> su;  // set for loop-group data
    /// Optional fast fusion backend (e.g. the group law for group-like data);
    /// cross-checked against the Verlinde formula in tests.
    std::function<std::vector<Int>(int, int)> fusionOverride;
    /// Optional generating set of the fusion ring (defaults: fundamentals for
    /// SU data, all non-vacuum primaries otherwise).
    std::vector<int> genOverride;

    int size() const { return static_cast<int>(labels.size()); }
    Cyc S(int a, int b) const { return sraw[a][b] * snorm; }
    const Cyc& srawConj(int a, int b) const;

    /// Quantum dimension S_{a,1}/S_{1,1} as an exact cyclotomic number.
    Cyc qdim(int a) const;

    /// Fusion coefficients N_{a,b}^* as a vector over the primaries, via the
    /// fast backend (Kac-Walton for SU data, exact Verlinde otherwise), cached.
    const std::vector<Int>& fusion(int a, int b) const;

    /// Indices of the fundamental-weight generators (all non-vacuum primaries
    /// for non-Lie data).
    std::vector<int> generators() const;

private:
    mutable std::mutex cacheMutex_;
    mutable std::map<std::pair<int, int>, std::vector<Int>> fusionCache_;
    mutable std::vector<std::vector<Cyc>> srawConj_;
    mutable std::vector<Cyc> invVacRow_;
    friend std::vector<Int> fusionVerlinde(const ModularDatum&, int, int);
    void ensureConjCache() const;
};

using DatumPtr = std::shared_ptr<const ModularDatum>;

/// SU(n) level k modular datum via the Kac-Peterson Weyl sum.
DatumPtr suDatum(int n, int k, long long conductorCap = 0);

/// Verlinde formula, exact; certifies integrality and nonnegativity.
std::vector<Int> fusionVerlinde(const ModularDatum& d, int a, int b);

/// Kac-Walton fusion for SU(n) level k as a vector over the datum's primaries.
std::vector<Int> fusionKacWalton(const ModularDatum& d, int a, int b);

struct IdealGenerator {
    Weight weight;                 // weight outside the level-k alcove
    std::optional<Weight> folded;  // alcove image when the fold sign is nonzero
    int sign = 0;
    Int dimValue;                  // dim(weight) - sign * dim(folded)
};

struct DimsAndIdeal {
    std::vector<Int> dims;  // classical Weyl dimensions per primary
    std::vector<IdealGenerator> ideal;
};

/// Classical dimensions on the alcove plus a truncated generating family of
/// the fusion ideal (first-wall weights and their translates up to `depth`
/// above the wall; default depth 2*kappa).
DimsAndIdeal dimsAndIdeal(int n, int k, int depth = 0);

struct RelationReport {
    bool ok = true;
    std::vector<std::string> failures;
    void fail(const std::string& m) {
        ok = false;
        failures.push_back(m);
    }
};

/// Exact checks of S symmetry, unitarity, S^2 = C, (ST)^3 = S^2, conjugation
/// and simple-current phase relations. Matrix identities are checked in full
/// for size <= fullCheckLimit and on seeded exact random vectors above it.
RelationReport verifyModularRelations(const ModularDatum& d, int fullCheckLimit = 40,
                                      std::uint64_t seed = 12345);

}  // namespace fwb
