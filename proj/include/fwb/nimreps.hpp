#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fwb/invariants.hpp"
#include "fwb/modular_data.hpp"

namespace fwb {

using NMat = std::vector<std::vector<long long>>;

/// Nonnegative-integer matrix representation of the fusion ring over a
/// boundary set B, one matrix per primary.
struct Nimrep {
    std::vector<std::string> boundary;
    std::vector<NMat> mats;  // indexed by primary
    int dim() const { return static_cast<int>(boundary.size()); }
};

struct NimrepReport {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(const std::string& m) {
        ok = false;
        violations.push_back(m);
    }
};

/// Definition-2 check: nonnegative integer entries, N_1 = I, the module
/// homomorphism property on fundamental generators plus seeded random pairs,
/// N_{C a} = N_a^t, and irreducibility (connectivity).
NimrepReport verifyNimrep(const ModularDatum& d, const Nimrep& N, std::uint64_t seed = 12345);

/// Exponent multiplicities m_mu = S_{1,mu} sum_a tr(N_a) conj(S_{a,mu}),
/// evaluated exactly; certifies integrality, nonnegativity, total |B| and
/// vacuum multiplicity 1.
std::vector<Int> nimrepExponents(const ModularDatum& d, const Nimrep& N);

/// Compatibility: exponents equal the diagonal of Z as multisets.
bool compatible(const ModularDatum& d, const Nimrep& N, const ModularInvariant& Z);

enum class AdeDiagram { A, D, E6, E7, E8 };

/// The A-D-E nimrep at the level with matching Coxeter number: N_{sigma_2} is
/// the diagram adjacency and the rest follow by the Chebyshev recursion.
Nimrep adeNimrep(AdeDiagram diagram, int nodes, int k);

/// Adjacency matrix of an A-D-E diagram with the given number of nodes.
NMat adeAdjacency(AdeDiagram diagram, int nodes);

/// Case-A predicate: n'(n+1) even, or the 2-adic valuation of k exceeds that
/// of n. Requires existence (n'(n+1)k even).
bool caseA(int n, int k, int d);

/// Fixed-point-resolved simple-current nimrep for Z_<J^{n'}> (Case A);
/// boundary states are orbit-resolver pairs ([nu]_d, l).
Nimrep theorem4Nimrep(const ModularDatum& dat, int d);

/// Orbit bookkeeping for theorem4Nimrep boundaries.
struct OrbitState {
    std::vector<int> orbit;  // primary indices, starting at the minimal rep
    int od = 1;              // largest o | d with J^{n/o} nu = nu
    int resolver = 0;        // l in Z_od
};
std::vector<OrbitState> orbitStates(const ModularDatum& dat, int d);

/// Tensor nimrep of the charge-conjugation twist with R_{Z_d}, d odd:
/// N_{a,(x,l)}^{(y,l')} = Nc_{a,x}^y delta^d_{l', l + sum_j j a_j}.
Nimrep theorem5Nimrep(const ModularDatum& dat, int d, const Nimrep& Nc);

/// Backtracking graph isomorphism on N_{sigma_2} (degree-refined), then full
/// family equality under the found relabeling. Returns the permutation when
/// the nimreps are equivalent.
std::optional<std::vector<int>> nimrepIsomorphism(const Nimrep& A, const Nimrep& B,
                                                  int generatorIndex);

/// Checks that the S-built Perron-Frobenius candidate vector is an exact
/// eigenvector of N_a with eigenvalue qdim(a).
bool checkPerronFrobenius(const ModularDatum& d, const Nimrep& N,
                          const std::vector<Cyc>& candidate, int a);

/// DOT export of the multiplication graph of one nimrep matrix.
std::string nimrepDot(const Nimrep& N, int a, const std::string& name);

}  // namespace fwb
