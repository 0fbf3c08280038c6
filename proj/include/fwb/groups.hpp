#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fwb/cyclotomic.hpp"

namespace fwb {

/// Concrete finite group: elements 0..order-1 with a multiplication table.
/// Identity is element 0.
class FiniteGroup {
public:
    std::vector<std::vector<int>> table;
    std::vector<std::string> names;

    int order() const { return static_cast<int>(table.size()); }
    int mult(int a, int b) const { return table[a][b]; }
    int inverse(int a) const;
    int conj(int g, int x) const { return mult(mult(g, x), inverse(g)); }
    int elementOrder(int a) const;

    /// Dihedral group <r,s : r^2 = s^{2n} = rsrs = 1> of order 4n; element
    /// (eps, j) = r^eps s^j has index eps*2n + j.
    static FiniteGroup dihedral(int n);
    static FiniteGroup cyclic(int m);

    std::vector<std::vector<int>> conjugacyClasses() const;
    std::vector<int> centralizer(int g) const;
    std::vector<int> closure(std::vector<int> gens) const;
    /// A small generating set found greedily.
    std::vector<int> generatingSet() const;
};

/// Subgroup presented as its own group plus the embedding into the parent.
struct SubgroupView {
    FiniteGroup group;
    std::vector<int> embed;           // subgroup element -> parent element
    std::map<int, int> indexOfParent;  // parent element -> subgroup element
};

SubgroupView subgroupView(const FiniteGroup& G, const std::vector<int>& elements);

/// Quotient by a normal subgroup: the quotient group and the projection map.
struct QuotientView {
    FiniteGroup group;
    std::vector<int> proj;  // parent element -> quotient element
    std::vector<int> lift;  // quotient element -> one parent preimage
};

QuotientView quotientView(const FiniteGroup& G, const std::vector<int>& normalElements);

/// Character as its value vector over all group elements.
struct Character {
    std::vector<Cyc> values;
    Rat dim() const { return *values[0].asRational(); }
};

/// Irreducible characters, computed from the presentation: linear characters
/// by hom enumeration over a generating set, the rest induced from an
/// abelian index-2 subgroup. Throws for groups outside this (cyclic,
/// Klein, dihedral) range.
std::vector<Character> characterTable(const FiniteGroup& G);

/// Induction of a character from a subgroup (values given on parent elements
/// of H, zero-extended implicitly) to G.
Character induceCharacter(const FiniteGroup& G, const std::vector<int>& subgroupElements,
                          const Character& chiOnParent);

/// <a, b> = (1/|G|) sum_g a(g) conj(b(g)); must be rational.
Rat innerProduct(const FiniteGroup& G, const Character& a, const Character& b);

/// Decompose a (virtual) character into the irreducible basis; entries are
/// certified integers.
std::vector<Int> decomposeCharacter(const FiniteGroup& G, const std::vector<Character>& irreps,
                                    const Character& f);

/// Group automorphism from generator images; throws if the assignment does
/// not extend to an automorphism.
std::vector<int> automorphismFromImages(const FiniteGroup& G, const std::vector<int>& gens,
                                        const std::vector<int>& images);

}  // namespace fwb
