#pragma once

#include <vector>

#include "fwb/nimreps.hpp"

namespace fwb {

/// Finitely generated abelian group in canonical invariant-factor form
/// d_1 | d_2 | ... (0 encodes a free Z summand).
struct AbelianGroup {
    std::vector<Int> invariantFactors;
    bool operator==(const AbelianGroup& o) const { return invariantFactors == o.invariantFactors; }
    std::string toString() const;
};

AbelianGroup abelianFromFactors(std::vector<Int> factors);

struct SmithResult {
    std::vector<Int> diag;  // d_1 | d_2 | ...
    IMat U;                 // row transform: U A V = D
    IMat V;
};

/// Smith normal form over Z with divisibility chain; U and V are unimodular.
SmithResult smithNormalForm(IMat A);

struct ChargeGroupResult {
    AbelianGroup group;
    /// One generating charge assignment (a row functional on Z^B) per
    /// nontrivial invariant factor, reduced mod that factor.
    std::vector<std::pair<Int, std::vector<Int>>> generators;
};

/// Charge group of a nimrep: Z^B modulo the sublattice spanned by the columns
/// of (N_a^T - dim(a) I) over the fundamental-weight generators.
ChargeGroupResult chargeGroup(const ModularDatum& d, const Nimrep& N, const std::vector<Int>& dims);

/// kappa / gcd(kappa, lcm(1..n-1)).
Int mkSu(int n, int k);

/// gcd of dimensions over the truncated fusion-ideal family; asserted equal to
/// mkSu (proved for SU(n)).
Int verlindeChargeGcd(int n, int k);

/// Closed-form Case-A prediction: Z_M plus p-power summands over p | gcd(d,M).
AbelianGroup chgpscPredict(int n, int k, int d);

/// Canonical generator of the cyclic charge group for the Verlinde nimrep:
/// q_lambda = dim(lambda) mod mkSu(n,k).
struct ForgetAssignment {
    Int modulus;
    std::vector<Int> q;  // per primary
};
ForgetAssignment forgetEquivarianceAssignment(int n, int k);

}  // namespace fwb
