#pragma once

#include <vector>

#include "fwb/charges.hpp"
#include "fwb/invariants.hpp"
#include "fwb/nimreps.hpp"

namespace fwb {

/// Positive-definite even lattice given by its Gram matrix.
struct EvenLattice {
    IMat gram;
    int rank() const { return static_cast<int>(gram.size()); }
};

/// Finite quadratic form on L*/L: elements as coefficient tuples over cyclic
/// generators, q with values in Q/2Z and b in Q/Z.
struct DiscriminantForm {
    EvenLattice L;
    std::vector<Int> orders;                  // cyclic factors d_1 | d_2 | ... (1s dropped)
    std::vector<std::vector<Rat>> gens;       // generator vectors in L-basis coords
    std::vector<std::vector<Rat>> elements;   // all coset representatives
    std::vector<std::vector<int>> elemCoord;  // coordinates over the generators
    int size() const { return static_cast<int>(elements.size()); }

    int indexOf(const std::vector<int>& coord) const;
    int add(int a, int b) const;
    int neg(int a) const;
    Rat qValue(int a) const;         // u.u mod 2
    Rat bValue(int a, int b) const;  // u.v mod 1
};

DiscriminantForm discriminant(const EvenLattice& L);

/// Modular datum of the torus sector: S = |L*/L|^{-1/2} e^{2 pi i u.v},
/// T = e^{pi i u.u - pi i n/12}.
DatumPtr latticeDatum(const DiscriminantForm& D);

struct GluingTriple {
    std::vector<int> Dplus, Dminus;  // subgroups of L*/L (element indices)
    std::vector<int> beta;           // map D_+^*-element -> D_-^*-element (coset-level on quotients)
    ModularInvariant Z;
};

/// Complete Prop-1(a) classification: even intermediate lattices D_+/D_- and
/// q-preserving isomorphisms beta of their discriminant quotients. Every
/// output is verified against S and T.
std::vector<GluingTriple> classifyInvariants(const DiscriminantForm& D, int cap = 4096);

struct LatticeNimrep {
    std::vector<int> E;  // subgroup of L*/L
    Nimrep N;
};

/// Prop-1(b): one nimrep per intermediate lattice E, boundary L*/E*.
std::vector<LatticeNimrep> classifyNimreps(const DiscriminantForm& D);

struct Theorem2Result {
    std::vector<int> E;
    Nimrep nimrep;
    int fullSize = 0;
    // alpha values per primary: pair of coset ids (first defined on D_+^* only,
    // -1 outside).
    std::vector<std::pair<int, int>> alphaPlus;
    std::vector<std::pair<int, int>> alphaMinus;
    ModularInvariant recovered;              // <alpha+, alpha->
    std::vector<std::vector<int>> neutral;   // D_-^*/D_- cosets as element lists
    std::vector<std::vector<int>> sigmaRestriction;  // per neutral coset: L-cosets inside
    AbelianGroup chargeGroup;
};

Theorem2Result theorem2Pipeline(const DiscriminantForm& D, const GluingTriple& t);

}  // namespace fwb
