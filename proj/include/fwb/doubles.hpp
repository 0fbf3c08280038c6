#pragma once

#include <map>
#include <string>
#include <vector>

#include "fwb/groups.hpp"
#include "fwb/invariants.hpp"
#include "fwb/nimreps.hpp"

namespace fwb {

/// Primary (g, chi) of the (untwisted) double of a finite group: a conjugacy
/// class representative and an irreducible character of its centralizer
/// (values stored over parent elements).
struct DoublePrimary {
    int classRep;
    std::vector<int> centralizer;
    Character chi;
    std::string label;
};

class GroupDouble {
public:
    FiniteGroup G;
    std::vector<DoublePrimary> primaries;
    DatumPtr datum;

    int size() const { return static_cast<int>(primaries.size()); }

    /// Transport (element, character on its centralizer) to the canonical
    /// primary index.
    int primaryIndex(int element, const Character& chiParentValues) const;

    /// Fusion by the commuting-pairs convolution product; independent of S.
    std::vector<Int> fusionConvolution(int a, int b) const;
};

/// Double of an arbitrary small group (class order as enumerated, characters
/// trivial-first).
GroupDouble makeDouble(const FiniteGroup& G);

/// Double of D_{2n} = <r,s : r^2 = s^{2n} = rsrs = 1> with the census labels
/// (s^{hn}, psi_ij), (s^{hn}, chi_k), (s^a, phi_l), (rs^h, psi'_ij).
GroupDouble dihedralDouble(int n);

/// Hard-coded permutation/parity/fixed-point table for the 8 simple currents
/// z_{hij} of the dihedral double, straight from the closed formulas.
struct DihedralSectorInfo {
    std::vector<int> zIndex;                 // primary index of z_{hij} at bit code 4h+2i+j
    std::vector<std::vector<int>> perm;      // [code][primary] -> primary
    std::vector<std::vector<int>> parity;    // [code][primary] -> 2 Q mod 2
    std::vector<std::vector<char>> isFixed;  // [code][primary]
};
DihedralSectorInfo dihedralSectorTable(const GroupDouble& D, int n);

/// Simple-current invariant Z^{(hij)} with its structural checks.
ModularInvariant dihedralScInvariant(const GroupDouble& D, int n, int h, int i, int j);

/// Branching (sigma-restriction in stages) from the double of K/N to the
/// double of G, for K <= G and N normal in K.
struct SigmaStagesResult {
    GroupDouble quotientDouble;              // double of K/N
    std::vector<std::map<int, Int>> images;  // per D(K/N) primary -> D(G) multiset
};
SigmaStagesResult sigmaRestrictStages(const GroupDouble& DG, const std::vector<int>& Kelems,
                                      const std::vector<int>& Nelems);

/// The H = Z x G theory of the dihedral double: nimrep on Z-cosets, full
/// system R_Z (x) nimrep, alpha-induction, and the recovered invariant.
struct SoTheoryResult {
    Nimrep nimrep;
    int fullSystemSize = 0;
    // Per primary: multiplicities over (grading slot, nimrep basis element).
    std::vector<std::vector<Int>> alphaPlus;
    std::vector<std::vector<Int>> alphaMinus;
    ModularInvariant matchedInvariant;  // <alpha+_l, alpha-_m>
    ModularInvariant viaBranching;      // sum_tau b_{tau l} b_{tau m}
};
SoTheoryResult dihedralSoTheory(int n);

/// omega-twisted diagonal nimrep: basis from twisted conjugacy classes with
/// twisted-stabilizer irreps, module structure by convolution push-forward.
Nimrep twistedDiagonalNimrep(const GroupDouble& D, const std::vector<int>& omega);

/// Permutation of double primaries induced by a group automorphism.
std::vector<int> doubleAutomorphismPermutation(const GroupDouble& D, const std::vector<int>& omega);

/// Z_{p^nu} pair data with S = exp(2 pi i (ab'+a'b)/q)/q, T = exp(2 pi i ab/q).
DatumPtr zpnDatum(long long p, int nu = 1);

struct ZpRecord {
    std::string name;
    ModularInvariant Z;
    std::vector<std::pair<long long, long long>> Hgens;
    long long psi = 0;
    std::vector<long long> E, Dplus, Dminus;  // encoded elements a*q+b
    int nimrepDim = 0;
    int neutralSize = 0;
    int fullSize = 0;
    Nimrep nimrep;
};

/// The 2p+2 modular invariants of the Z_p data with Table-1 columns and
/// verified alpha-induction recovery.
std::vector<ZpRecord> zpClassify(long long p);

struct ZpnCountResult {
    Int closedForm;
    Int enumerated;
    int automorphismInvariants = 0;  // verified count, expected 2 p^nu - 2 p^{nu-1}
    std::vector<std::pair<std::vector<long long>, long long>> pairs;  // (H element set, psi)
};
ZpnCountResult zpnPairCount(long long p, int nu);

}  // namespace fwb
