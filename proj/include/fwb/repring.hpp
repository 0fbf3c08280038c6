#pragma once

#include <map>
#include <string>
#include <vector>

#include "fwb/nimreps.hpp"

namespace fwb {

enum class RingTag { RT, RSU2, RSO3, RO2 };

/// Integer combination of ring symbols with the normal-form conventions
/// sigma_0 = 0, kappa_0 = 1 + delta, sigma_{-n} = -sigma_n, kappa_{-n} = kappa_n.
/// Symbols: RT exponents a^i (key i); RSU2/RSO3 sigma_i (key i >= 1);
/// RO2 keys: 0 -> 1, -1 -> delta, i >= 1 -> kappa_i.
struct CharacterElement {
    RingTag ring = RingTag::RT;
    std::map<long long, Int> coeffs;

    CharacterElement() = default;
    explicit CharacterElement(RingTag t) : ring(t) {}
    void addSymbol(long long key, const Int& c);
    CharacterElement operator+(const CharacterElement& o) const;
    CharacterElement operator-(const CharacterElement& o) const;
    CharacterElement operator*(const CharacterElement& o) const;
    bool operator==(const CharacterElement& o) const { return ring == o.ring && coeffs == o.coeffs; }
    std::string toString() const;
};

CharacterElement rtMonomial(long long i, const Int& c = Int(1));
CharacterElement su2Sigma(long long i, const Int& c = Int(1));
CharacterElement o2Kappa(long long i, const Int& c = Int(1));
CharacterElement o2Delta(const Int& c = Int(1));
CharacterElement o2One(const Int& c = Int(1));

enum class InductionKind { DiracTtoSU2, TtoO2 };

/// Dirac induction a^i -> sigma_i resp. induction a^i -> kappa_i, linearly.
CharacterElement induct(InductionKind kind, const CharacterElement& x);

/// Finite-rank quotient module of a character ring: a chosen basis of symbols
/// and a rewriting map sending every symbol into the basis span.
struct QuotientModule {
    RingTag ring;
    std::vector<long long> basis;            // symbol keys
    std::vector<std::string> basisNames;
    std::map<long long, int> basisIndex;
    /// Rewrites a symbol key into basis coordinates.
    std::function<std::vector<Int>(long long)> rewrite;

    std::vector<Int> reduce(const CharacterElement& x) const;
    /// Action matrix of multiplication by a ring element.
    NMat actionMatrix(const CharacterElement& mult) const;
};

/// Eq.-(su2verl)-style presentation of Ver_k(SU(2)) on the basis
/// a^{-k/2-...}: requires even kappa = k+2.
QuotientModule su2VerlindePresentation(int k);

/// Eq.-(so3nim) quotient with basis {1, delta, kappa_1..kappa_{k/2}} and the
/// full nimrep via the Chebyshev extension (k even).
struct So3NimrepResult {
    QuotientModule module;
    Nimrep nimrep;
};
So3NimrepResult so3Nimrep(int k);

/// SO(3) neutral-system quotient for 4 | k, with the doubling embedding into
/// so3Nimrep(k).
struct So3NeutralResult {
    QuotientModule module;                 // basis {1bar, deltabar, kappabar_1..}
    std::vector<std::vector<Int>> embed;   // basis -> so3Nimrep(k).module coords
};
So3NeutralResult so3Neutral(int k);

/// SU(3) charge-conjugation nimrep from the sigma-parity quotient; boundary
/// count equals the number of self-conjugate primaries.
struct Su3CcResult {
    QuotientModule module;  // over sigma symbols of one parity
    Nimrep nimrep;          // over the SU(3) level-k datum
    DatumPtr datum;
};
Su3CcResult su3CcNimrep(int k);

/// Restriction of the SU(3) irrep with highest weight w to SO(3) inside SU(3),
/// as a sum of sigma_{2j+1}.
CharacterElement su3RestrictToSo3(const Weight& w);

}  // namespace fwb
