#include "fwb/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace fwb {

int FiniteGroup::inverse(int a) const {
    for (int b = 0; b < order(); ++b)
        if (mult(a, b) == 0) return b;
    throw std::logic_error("group element has no inverse");
}

int FiniteGroup::elementOrder(int a) const {
    int cur = a, ord = 1;
    while (cur != 0) {
        cur = mult(cur, a);
        ++ord;
    }
    return ord;
}

FiniteGroup FiniteGroup::dihedral(int n) {
    int m = 2 * n;  // order of s
    FiniteGroup G;
    int N = 2 * m;
    G.table.assign(N, std::vector<int>(N, 0));
    G.names.resize(N);
    auto idx = [m](int eps, long long j) { return eps * m + static_cast<int>(modNorm(j, m)); };
    for (int e1 = 0; e1 < 2; ++e1)
        for (int j1 = 0; j1 < m; ++j1)
            for (int e2 = 0; e2 < 2; ++e2)
                for (int j2 = 0; j2 < m; ++j2) {
                    // (r^e1 s^j1)(r^e2 s^j2) = r^{e1+e2} s^{(-1)^{e2} j1 + j2}
                    int e = (e1 + e2) % 2;
                    G.table[idx(e1, j1)][idx(e2, j2)] = idx(e, (e2 ? -j1 : j1) + j2);
                }
    for (int e = 0; e < 2; ++e)
        for (int j = 0; j < m; ++j) {
            std::ostringstream os;
            if (e == 0 && j == 0) os << "1";
            else {
                if (e) os << "r";
                if (j) os << (e ? "s^" : "s^") << j;
            }
            G.names[idx(e, j)] = os.str();
        }
    return G;
}

FiniteGroup FiniteGroup::cyclic(int m) {
    FiniteGroup G;
    G.table.assign(m, std::vector<int>(m, 0));
    G.names.resize(m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) G.table[a][b] = (a + b) % m;
        G.names[a] = a == 0 ? "1" : ("g^" + std::to_string(a));
    }
    return G;
}

std::vector<std::vector<int>> FiniteGroup::conjugacyClasses() const {
    std::vector<int> cls(order(), -1);
    std::vector<std::vector<int>> classes;
    for (int x = 0; x < order(); ++x) {
        if (cls[x] >= 0) continue;
        std::vector<int> c;
        for (int g = 0; g < order(); ++g) {
            int y = conj(g, x);
            if (cls[y] < 0) {
                cls[y] = static_cast<int>(classes.size());
                c.push_back(y);
            }
        }
        std::sort(c.begin(), c.end());
        classes.push_back(std::move(c));
    }
    return classes;
}

std::vector<int> FiniteGroup::centralizer(int g) const {
    std::vector<int> out;
    for (int h = 0; h < order(); ++h)
        if (mult(h, g) == mult(g, h)) out.push_back(h);
    return out;
}

std::vector<int> FiniteGroup::closure(std::vector<int> gens) const {
    std::set<int> seen{0};
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int g : gens) {
                int y = mult(x, g);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return std::vector<int>(seen.begin(), seen.end());
}

std::vector<int> FiniteGroup::generatingSet() const {
    std::vector<int> gens;
    std::vector<int> have{0};
    while (static_cast<int>(have.size()) < order()) {
        int best = -1;
        size_t bestSize = have.size();
        for (int g = 1; g < order(); ++g) {
            if (std::binary_search(have.begin(), have.end(), g)) continue;
            auto trial = gens;
            trial.push_back(g);
            auto cl = closure(trial);
            if (cl.size() > bestSize) {
                bestSize = cl.size();
                best = g;
                if (static_cast<int>(cl.size()) == order()) break;
            }
        }
        gens.push_back(best);
        have = closure(gens);
        std::sort(have.begin(), have.end());
    }
    return gens;
}

SubgroupView subgroupView(const FiniteGroup& G, const std::vector<int>& elements) {
    SubgroupView v;
    std::vector<int> elems = elements;
    std::sort(elems.begin(), elems.end());
    auto it = std::find(elems.begin(), elems.end(), 0);
    if (it == elems.end()) throw std::invalid_argument("subgroupView: identity missing");
    std::swap(*elems.begin(), *it);
    v.embed = elems;
    for (size_t i = 0; i < elems.size(); ++i) v.indexOfParent[elems[i]] = static_cast<int>(i);
    int m = static_cast<int>(elems.size());
    v.group.table.assign(m, std::vector<int>(m, 0));
    v.group.names.resize(m);
    for (int a = 0; a < m; ++a) {
        v.group.names[a] = G.names.empty() ? std::to_string(elems[a]) : G.names[elems[a]];
        for (int b = 0; b < m; ++b) {
            int p = G.mult(elems[a], elems[b]);
            auto f = v.indexOfParent.find(p);
            if (f == v.indexOfParent.end()) throw std::invalid_argument("subgroupView: not closed");
            v.group.table[a][b] = f->second;
        }
    }
    return v;
}

QuotientView quotientView(const FiniteGroup& G, const std::vector<int>& normalElements) {
    std::set<int> N(normalElements.begin(), normalElements.end());
    for (int g = 0; g < G.order(); ++g)
        for (int n : N)
            if (!N.count(G.conj(g, n))) throw std::invalid_argument("quotientView: subgroup not normal");
    QuotientView q;
    q.proj.assign(G.order(), -1);
    for (int x = 0; x < G.order(); ++x) {
        if (q.proj[x] >= 0) continue;
        int id = static_cast<int>(q.lift.size());
        q.lift.push_back(x);
        for (int n : N) q.proj[G.mult(x, n)] = id;
    }
    int m = static_cast<int>(q.lift.size());
    if (q.proj[0] != 0) {
        int idc = q.proj[0];
        for (auto& p : q.proj) {
            if (p == idc) p = 0;
            else if (p == 0) p = idc;
        }
        std::swap(q.lift[0], q.lift[idc]);
    }
    q.group.table.assign(m, std::vector<int>(m, 0));
    q.group.names.resize(m);
    for (int a = 0; a < m; ++a) {
        q.group.names[a] = (G.names.empty() ? std::to_string(q.lift[a]) : G.names[q.lift[a]]) + "N";
        for (int b = 0; b < m; ++b) q.group.table[a][b] = q.proj[G.mult(q.lift[a], q.lift[b])];
    }
    return q;
}

namespace {

std::vector<Character> linearCharacters(const FiniteGroup& G) {
    auto gens = G.generatingSet();
    int ng = static_cast<int>(gens.size());
    std::vector<int> ords(ng);
    for (int i = 0; i < ng; ++i) ords[i] = G.elementOrder(gens[i]);
    std::vector<std::vector<int>> word(G.order());
    std::vector<bool> seen(G.order(), false);
    seen[0] = true;
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int i = 0; i < ng; ++i) {
                int y = G.mult(x, gens[i]);
                if (!seen[y]) {
                    seen[y] = true;
                    word[y] = word[x];
                    word[y].push_back(i);
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    std::vector<Character> out;
    std::vector<int> t(ng, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == ng) {
            std::vector<Cyc> vals(G.order());
            for (int x = 0; x < G.order(); ++x) {
                Cyc v = Cyc::one();
                for (int i : word[x]) v = v * Cyc::rootOfUnity(ords[i], t[i]);
                vals[x] = v;
            }
            for (int a = 0; a < G.order(); ++a)
                for (int b = 0; b < G.order(); ++b)
                    if (!(vals[G.mult(a, b)] == vals[a] * vals[b])) return;
            out.push_back(Character{std::move(vals)});
            return;
        }
        for (int v = 0; v < ords[pos]; ++v) {
            t[pos] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace

Character induceCharacter(const FiniteGroup& G, const std::vector<int>& subgroupElements,
                          const Character& chiOnParent) {
    std::set<int> H(subgroupElements.begin(), subgroupElements.end());
    Character out;
    out.values.assign(G.order(), Cyc::zero());
    Rat invH(1, static_cast<long long>(H.size()));
    for (int g = 0; g < G.order(); ++g) {
        Cyc acc;
        for (int x = 0; x < G.order(); ++x) {
            int y = G.conj(G.inverse(x), g);
            if (H.count(y)) acc += chiOnParent.values[y];
        }
        out.values[g] = acc.scaledBy(invH);
    }
    return out;
}

Rat innerProduct(const FiniteGroup& G, const Character& a, const Character& b) {
    Cyc acc;
    for (int g = 0; g < G.order(); ++g) acc += a.values[g] * b.values[g].conj();
    auto r = acc.scaledBy(Rat(1, G.order())).asRational();
    if (!r) throw std::logic_error("character inner product is not rational");
    return *r;
}

std::vector<Character> characterTable(const FiniteGroup& G) {
    std::vector<Character> irreps = linearCharacters(G);
    Rat total(static_cast<long long>(irreps.size()));
    if (total == G.order()) return irreps;

    for (size_t li = 0, ln = irreps.size(); li < ln; ++li) {
        const auto& lin = irreps[li];
        std::vector<int> ker;
        for (int g = 0; g < G.order(); ++g)
            if (lin.values[g] == Cyc::one()) ker.push_back(g);
        if (static_cast<int>(ker.size()) * 2 != G.order()) continue;
        auto sub = subgroupView(G, ker);
        auto subLinear = linearCharacters(sub.group);
        if (static_cast<int>(subLinear.size()) != sub.group.order()) continue;  // not abelian
        for (const auto& sc : subLinear) {
            Character onParent;
            onParent.values.assign(G.order(), Cyc::zero());
            for (int i = 0; i < sub.group.order(); ++i) onParent.values[sub.embed[i]] = sc.values[i];
            Character ind = induceCharacter(G, sub.embed, onParent);
            if (innerProduct(G, ind, ind) != 1) continue;
            bool dup = false;
            for (const auto& have : irreps)
                if (innerProduct(G, have, ind) != 0) dup = true;
            if (!dup) {
                Rat d = ind.dim();
                irreps.push_back(std::move(ind));
                total += d * d;
                if (total == G.order()) return irreps;
            }
        }
    }
    if (total != G.order())
        throw std::invalid_argument("characterTable: unsupported group (outside the cyclic/Klein/dihedral range)");
    return irreps;
}

std::vector<Int> decomposeCharacter(const FiniteGroup& G, const std::vector<Character>& irreps,
                                    const Character& f) {
    std::vector<Int> out;
    for (const auto& chi : irreps) {
        Rat c = innerProduct(G, f, chi);
        if (!isInteger(c)) throw VerificationError("character decomposition is not integral");
        out.push_back(ratNum(c));
    }
    return out;
}

std::vector<int> automorphismFromImages(const FiniteGroup& G, const std::vector<int>& gens,
                                        const std::vector<int>& images) {
    std::vector<int> phi(G.order(), -1);
    phi[0] = 0;
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (size_t i = 0; i < gens.size(); ++i) {
                int y = G.mult(x, gens[i]);
                int fy = G.mult(phi[x], images[i]);
                if (phi[y] < 0) {
                    phi[y] = fy;
                    next.push_back(y);
                } else if (phi[y] != fy) {
                    throw std::invalid_argument("automorphismFromImages: inconsistent images");
                }
            }
        frontier = std::move(next);
    }
    for (int x = 0; x < G.order(); ++x)
        if (phi[x] < 0) throw std::invalid_argument("automorphismFromImages: generators do not generate");
    std::vector<bool> hit(G.order(), false);
    for (int x = 0; x < G.order(); ++x) {
        if (hit[phi[x]]) throw std::invalid_argument("automorphismFromImages: not a bijection");
        hit[phi[x]] = true;
    }
    for (int a = 0; a < G.order(); ++a)
        for (int b = 0; b < G.order(); ++b)
            if (phi[G.mult(a, b)] != G.mult(phi[a], phi[b]))
                throw std::invalid_argument("automorphismFromImages: not a homomorphism");
    return phi;
}

}  // namespace fwb
