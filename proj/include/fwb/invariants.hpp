#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fwb/modular_data.hpp"

namespace fwb {

using IMat = std::vector<std::vector<Int>>;

struct ModularInvariant {
    IMat Z;
    bool isAutomorphism() const;
    std::vector<Int> diagonal() const;
    /// Exponent multiset: primary index repeated Z_{mu,mu} times.
    std::vector<int> exponents() const;
};

struct InvariantReport {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(const std::string& m) {
        ok = false;
        violations.push_back(m);
    }
};

/// Definition-1 check in exact arithmetic: nonnegative integer entries,
/// Z_{1,1} = 1, ZS = SZ and ZT = TZ.
InvariantReport verifyInvariant(const ModularDatum& d, const IMat& Z);

/// Simple-current invariant of Eq.-(scinv) type; absent when the T-ratio
/// existence condition fails (e.g. SU(2) at odd level).
std::optional<ModularInvariant> simpleCurrentInvariant(const ModularDatum& d,
                                                       const SimpleCurrent& j);

struct EnumerateOptions {
    Int entryBoundCap = 512;        // per-entry cap guard
    long long nodeCap = 200000000;  // DFS node cap
    int sizeCap = 40;               // |Phi| cap
};

/// Complete list of Definition-1 invariants: exact rational commutant basis,
/// then integer points under the quantum-dimension entry bound. Sorted
/// lexicographically by flattened matrix.
std::vector<ModularInvariant> enumerateInvariants(const ModularDatum& d,
                                                  const EnumerateOptions& opt = {});

/// Z^omega with (Z^omega)_{a,b} = Z_{a, omega(b)}; omega must itself be a
/// verified automorphism invariant of d.
ModularInvariant twistByAutomorphism(const ModularDatum& d, const ModularInvariant& Z,
                                     const std::vector<int>& omega);

/// Matrix product of invariants (used for closure checks).
ModularInvariant productInvariant(const ModularInvariant& A, const ModularInvariant& B);

/// Permutation matrix of a primary permutation.
ModularInvariant permutationInvariant(const std::vector<int>& perm);

}  // namespace fwb
