#pragma once

#include <map>
#include <vector>

#include "fwb/numeric.hpp"

namespace fwb {

/// Finite SU(n) dominant weight in Dynkin labels (lambda_1, ..., lambda_{n-1}).
using Weight = std::vector<int>;

/// All level-k affine SU(n) weights as finite parts, ordered lexicographically
/// by (lambda_1, ..., lambda_{n-1}). The affine label lambda_0 = k - sum.
std::vector<Weight> levelWeights(int n, int k);

/// Classical Weyl dimension of the SU(n) irrep with highest weight w.
Int weylDim(int n, const Weight& w);

/// Simple-current rotation J: (l0; l1..l_{n-1}) -> (l_{n-1}; l0..l_{n-2}).
Weight rotateJ(int n, int k, const Weight& w, int times = 1);

/// Charge conjugation: reverse the Dynkin labels.
Weight conjWeight(const Weight& w);

/// Littlewood-Richardson decomposition of the SU(n) tensor product a (x) b,
/// returned as partition-normalized weights with multiplicities.
std::map<Weight, Int> tensorLR(int n, const Weight& a, const Weight& b);

/// Kac-Walton fusion: LR tensor followed by level-k affine Weyl folding.
std::map<Weight, Int> fuseKW(int n, int k, const Weight& a, const Weight& b);

/// Folds a (possibly non-dominant) affine weight into the level-k alcove with
/// the shifted affine Weyl action. Returns sign in {-1,0,+1} and the image.
std::pair<int, Weight> affineFold(int n, int k, const Weight& w);

/// Weight system of the irrep with highest weight w: map from weights (in
/// Dynkin labels, possibly non-dominant) to multiplicities, via Freudenthal.
std::map<std::vector<int>, Int> weightSystem(int n, const Weight& w);

}  // namespace fwb
