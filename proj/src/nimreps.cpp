#include "fwb/nimreps.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace fwb {

namespace {

NMat identityMat(int m) {
    NMat I(m, std::vector<long long>(m, 0));
    for (int i = 0; i < m; ++i) I[i][i] = 1;
    return I;
}

NMat mul(const NMat& A, const NMat& B) {
    int m = static_cast<int>(A.size());
    NMat C(m, std::vector<long long>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int t = 0; t < m; ++t) {
            if (A[i][t] == 0) continue;
            long long a = A[i][t];
            for (int j = 0; j < m; ++j) C[i][j] += a * B[t][j];
        }
    return C;
}

NMat transpose(const NMat& A) {
    int m = static_cast<int>(A.size());
    NMat T(m, std::vector<long long>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) T[j][i] = A[i][j];
    return T;
}

}  // namespace

NimrepReport verifyNimrep(const ModularDatum& d, const Nimrep& N, std::uint64_t seed) {
    NimrepReport rep;
    int nb = N.dim();
    if (static_cast<int>(N.mats.size()) != d.size()) {
        rep.fail("nimrep family size does not match the primary count");
        return rep;
    }
    for (const auto& M : N.mats)
        if (static_cast<int>(M.size()) != nb) {
            rep.fail("dimension mismatch");
            return rep;
        }
    for (int a = 0; a < d.size(); ++a)
        for (int x = 0; x < nb; ++x)
            for (int y = 0; y < nb; ++y)
                if (N.mats[a][x][y] < 0) {
                    rep.fail("negative entry in N_" + d.labels[a]);
                    x = nb;
                    break;
                }
    if (!(N.mats[d.vacuum] == identityMat(nb))) rep.fail("N_1 != identity");

    for (int a = 0; a < d.size(); ++a)
        if (!(N.mats[d.conjPerm[a]] == transpose(N.mats[a]))) {
            rep.fail("N_{C a} != N_a^t at a=" + d.labels[a]);
            break;
        }

    // Homomorphism on fundamental generators against every primary, plus
    // seeded random pairs.
    auto checkPair = [&](int a, int b) {
        NMat lhs = mul(N.mats[a], N.mats[b]);
        NMat rhs(nb, std::vector<long long>(nb, 0));
        const auto& f = d.fusion(a, b);
        for (int c = 0; c < d.size(); ++c) {
            if (f[c] == 0) continue;
            long long m = toLL(f[c]);
            for (int x = 0; x < nb; ++x)
                for (int y = 0; y < nb; ++y) rhs[x][y] += m * N.mats[c][x][y];
        }
        return lhs == rhs;
    };
    for (int g : d.generators()) {
        for (int b = 0; b < d.size(); ++b)
            if (!checkPair(g, b)) {
                rep.fail("homomorphism fails at (" + d.labels[g] + ", " + d.labels[b] + ")");
                return rep;
            }
    }
    Rng rng(seed);
    for (int t = 0; t < 8; ++t) {
        int a = static_cast<int>(rng.below(d.size()));
        int b = static_cast<int>(rng.below(d.size()));
        if (!checkPair(a, b)) {
            rep.fail("homomorphism fails at random pair (" + d.labels[a] + ", " + d.labels[b] + ")");
            return rep;
        }
    }

    // Irreducibility: the union of supports must connect the boundary.
    std::vector<int> comp(nb, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int a = 0; a < d.size(); ++a)
            for (int y = 0; y < nb; ++y)
                if (comp[y] < 0 && (N.mats[a][x][y] != 0 || N.mats[a][y][x] != 0)) {
                    comp[y] = 0;
                    stack.push_back(y);
                }
    }
    for (int x = 0; x < nb; ++x)
        if (comp[x] < 0) {
            rep.fail("nimrep is not irreducible");
            break;
        }
    return rep;
}

std::vector<Int> nimrepExponents(const ModularDatum& d, const Nimrep& N) {
    int m = d.size();
    int nb = N.dim();
    std::vector<long long> traces(m, 0);
    for (int a = 0; a < m; ++a)
        for (int x = 0; x < nb; ++x) traces[a] += N.mats[a][x][x];
    std::vector<Int> out(m);
    Int total = 0;
    for (int mu = 0; mu < m; ++mu) {
        Cyc acc;
        for (int a = 0; a < m; ++a) {
            if (traces[a] == 0) continue;
            acc += d.srawConj(a, mu).scaledBy(Rat(traces[a]));
        }
        acc = acc * d.sraw[d.vacuum][mu];
        auto r = acc.scaledBy(d.snormAbs2).asRational();
        if (!r || !isInteger(*r) || *r < 0)
            throw VerificationError("exponent multiplicity is not a nonnegative integer");
        out[mu] = ratNum(*r);
        total += out[mu];
    }
    if (total != nb) throw VerificationError("exponent multiplicities do not sum to |B|");
    if (out[d.vacuum] != 1) throw VerificationError("vacuum exponent multiplicity != 1");
    return out;
}

bool compatible(const ModularDatum& d, const Nimrep& N, const ModularInvariant& Z) {
    auto m = nimrepExponents(d, N);
    auto diag = Z.diagonal();
    for (int i = 0; i < d.size(); ++i)
        if (m[i] != diag[i]) return false;
    return true;
}

NMat adeAdjacency(AdeDiagram diagram, int nodes) {
    NMat A(nodes, std::vector<long long>(nodes, 0));
    auto link = [&](int x, int y) { A[x][y] = A[y][x] = 1; };
    switch (diagram) {
        case AdeDiagram::A:
            for (int i = 0; i + 1 < nodes; ++i) link(i, i + 1);
            break;
        case AdeDiagram::D:
            for (int i = 0; i + 1 < nodes - 2; ++i) link(i, i + 1);
            link(nodes - 3, nodes - 2);
            link(nodes - 3, nodes - 1);
            break;
        case AdeDiagram::E6:
        case AdeDiagram::E7:
        case AdeDiagram::E8: {
            // Star with arms of 1, 2 and nodes-4 edges around a central node.
            int node = 1;
            for (int armLen : {1, 2, nodes - 4}) {
                int prev = 0;
                for (int i = 0; i < armLen; ++i) {
                    link(prev, node);
                    prev = node++;
                }
            }
            break;
        }
    }
    return A;
}

namespace {

int coxeterNumber(AdeDiagram diagram, int nodes) {
    switch (diagram) {
        case AdeDiagram::A: return nodes + 1;
        case AdeDiagram::D: return 2 * nodes - 2;
        case AdeDiagram::E6: return 12;
        case AdeDiagram::E7: return 18;
        case AdeDiagram::E8: return 30;
    }
    return 0;
}

}  // namespace

Nimrep adeNimrep(AdeDiagram diagram, int nodes, int k) {
    if ((diagram == AdeDiagram::E6 && nodes != 6) || (diagram == AdeDiagram::E7 && nodes != 7) ||
        (diagram == AdeDiagram::E8 && nodes != 8))
        throw std::invalid_argument("adeNimrep: node count does not match the diagram");
    if (coxeterNumber(diagram, nodes) != k + 2)
        throw std::invalid_argument("adeNimrep: Coxeter number must equal k+2");
    Nimrep N;
    for (int i = 0; i < nodes; ++i) N.boundary.push_back("b" + std::to_string(i));
    N.mats.resize(k + 1);
    N.mats[0] = identityMat(nodes);
    if (k >= 1) N.mats[1] = adeAdjacency(diagram, nodes);
    for (int l = 2; l <= k; ++l) {
        NMat next = mul(N.mats[1], N.mats[l - 1]);
        for (int x = 0; x < nodes; ++x)
            for (int y = 0; y < nodes; ++y) next[x][y] -= N.mats[l - 2][x][y];
        N.mats[l] = std::move(next);
    }
    return N;
}

bool caseA(int n, int k, int d) {
    int nprime = n / d;
    long long existence = static_cast<long long>(nprime) * (n + 1) * k;
    if (existence % 2 != 0)
        throw std::invalid_argument("caseA: simple-current invariant does not exist (n'(n+1)k odd)");
    if ((static_cast<long long>(nprime) * (n + 1)) % 2 == 0) return true;
    auto v2 = [](long long x) {
        int v = 0;
        while (x > 0 && x % 2 == 0) { x /= 2; ++v; }
        return v;
    };
    return k > 0 && v2(k) > v2(n);
}

std::vector<OrbitState> orbitStates(const ModularDatum& dat, int d) {
    if (!dat.su) throw std::invalid_argument("orbitStates: SU datum required");
    int n = dat.su->n;
    if (n % d != 0) throw std::invalid_argument("orbitStates: d must divide n");
    int nprime = n / d;
    std::vector<OrbitState> out;
    if (d == 1) {
        for (int i = 0; i < dat.size(); ++i) {
            OrbitState s;
            s.orbit = {i};
            out.push_back(s);
        }
        return out;
    }
    const auto& perm = dat.simpleCurrents[nprime - 1].perm;
    std::vector<bool> seen(dat.size(), false);
    for (int i = 0; i < dat.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> orbit;
        int cur = i;
        do {
            orbit.push_back(cur);
            seen[cur] = true;
            cur = perm[cur];
        } while (cur != i);
        int od = d / static_cast<int>(orbit.size());
        for (int l = 0; l < od; ++l) {
            OrbitState s;
            s.orbit = orbit;
            s.od = od;
            s.resolver = l;
            out.push_back(s);
        }
    }
    return out;
}

Nimrep theorem4Nimrep(const ModularDatum& dat, int d) {
    if (!dat.su) throw std::invalid_argument("theorem4Nimrep: SU datum required");
    int n = dat.su->n, k = dat.su->k;
    if (n % d != 0) throw std::invalid_argument("theorem4Nimrep: d must divide n");
    if (!caseA(n, k, d)) throw std::invalid_argument("theorem4Nimrep: Case A required");
    int nprime = n / d;
    auto states = orbitStates(dat, d);
    int nb = static_cast<int>(states.size());

    Nimrep N;
    for (const auto& s : states) {
        std::ostringstream os;
        os << "([" << dat.labels[s.orbit[0]] << "]," << s.resolver << ")";
        N.boundary.push_back(os.str());
    }

    // Affine labels of a primary, and the period-(n/delta) truncation of a
    // J^{n/delta}-fixed weight into P_+^{k/delta}(SU(n/delta)).
    auto affineLabels = [&](int idx) {
        const auto& w = dat.su->weights[idx];
        std::vector<int> lab(n);
        int sum = 0;
        for (int i = 0; i < n - 1; ++i) {
            lab[i + 1] = w[i];
            sum += w[i];
        }
        lab[0] = k - sum;
        return lab;
    };
    auto reducedWeight = [&](int idx, int delta) {
        auto lab = affineLabels(idx);
        int nr = n / delta;
        for (int i = 0; i + nr < n; ++i)
            if (lab[i] != lab[i + nr]) throw std::logic_error("reducedWeight: weight not periodic");
        return Weight(lab.begin() + 1, lab.begin() + nr);
    };

    // Fundamental matrices from the fixed-point-factorised coefficients:
    // N_{Lambda_m, ([nu],l)}^{([nu'],l')} = sum_{j=1}^{d/lcm(o,o')}
    //   delta^{g}_{l,l'} N^{(g)}_{J^{n'j} Lambda_{m/g}, nu^{(g)}}^{nu'^{(g)}},
    // with g = gcd(o,o') and N^{(g)} the fusion of SU(n/g) at level k/g.
    N.mats.assign(dat.size(), NMat(nb, std::vector<long long>(nb, 0)));
    N.mats[dat.vacuum] = identityMat(nb);
    auto fundamentals = dat.generators();
    for (int m = 1; m <= n - 1; ++m) {
        int a = fundamentals[m - 1];
        for (int xi = 0; xi < nb; ++xi) {
            const auto& sx = states[xi];
            int nu = sx.orbit[0];
            for (int yi = 0; yi < nb; ++yi) {
                const auto& sy = states[yi];
                int g = std::gcd(sx.od, sy.od);
                if ((sx.resolver - sy.resolver) % g != 0) continue;
                if (m % g != 0) continue;
                int l = std::lcm(sx.od, sy.od);
                int nr = n / g, kr = k / std::max(1, g);
                if (g > 1 && k % g != 0) throw std::logic_error("theorem4Nimrep: k not divisible by gcd");
                Weight lamRed(nr - 1, 0);
                if (nr > 1) lamRed[m / g - 1] = 1;
                Weight nuRed = g == 1 ? dat.su->weights[nu] : reducedWeight(nu, g);
                Weight nupRed = g == 1 ? dat.su->weights[sy.orbit[0]] : reducedWeight(sy.orbit[0], g);
                long long total = 0;
                for (int j = 1; j <= d / l; ++j) {
                    if (nr == 1) {
                        // SU(1): everything is the vacuum; fusion is trivial.
                        total += 1;
                        continue;
                    }
                    Weight shifted = rotateJ(nr, kr, lamRed, nprime * j);
                    auto prod = fuseKW(nr, kr, shifted, nuRed);
                    auto it = prod.find(nupRed);
                    if (it != prod.end()) total += toLL(it->second);
                }
                N.mats[a][xi][yi] = total;
            }
        }
    }

    // All other matrices by fusion-recursion closure: whenever a product of a
    // fundamental with a known primary contains exactly one unknown, solve
    // for it.
    std::vector<bool> known(dat.size(), false);
    known[dat.vacuum] = true;
    int knownCount = 1;
    for (int a : fundamentals) {
        if (!known[a]) ++knownCount;
        known[a] = true;
    }
    bool progress = true;
    while (knownCount < dat.size() && progress) {
        progress = false;
        for (int g : fundamentals) {
            for (int mu = 0; mu < dat.size(); ++mu) {
                if (!known[mu]) continue;
                const auto& f = dat.fusion(g, mu);
                int unknown = -1;
                bool single = true;
                for (int c = 0; c < dat.size(); ++c)
                    if (f[c] != 0 && !known[c]) {
                        if (unknown >= 0) { single = false; break; }
                        unknown = c;
                    }
                if (unknown < 0 || !single) continue;
                NMat P = mul(N.mats[g], N.mats[mu]);
                for (int c = 0; c < dat.size(); ++c) {
                    if (f[c] == 0 || c == unknown) continue;
                    long long cc = toLL(f[c]);
                    for (int x = 0; x < nb; ++x)
                        for (int y = 0; y < nb; ++y) P[x][y] -= cc * N.mats[c][x][y];
                }
                long long cu = toLL(f[unknown]);
                for (int x = 0; x < nb; ++x)
                    for (int y = 0; y < nb; ++y) {
                        if (P[x][y] % cu != 0)
                            throw VerificationError("theorem4Nimrep: closure division failed");
                        P[x][y] /= cu;
                    }
                N.mats[unknown] = std::move(P);
                known[unknown] = true;
                ++knownCount;
                progress = true;
            }
        }
    }
    if (knownCount < dat.size())
        throw std::logic_error("theorem4Nimrep: fusion closure stalled");
    return N;
}

Nimrep theorem5Nimrep(const ModularDatum& dat, int d, const Nimrep& Nc) {
    if (!dat.su) throw std::invalid_argument("theorem5Nimrep: SU datum required");
    if (d % 2 == 0) throw std::invalid_argument("theorem5Nimrep: d must be odd");
    int n = dat.su->n;
    if (n % d != 0) throw std::invalid_argument("theorem5Nimrep: d must divide n");
    int nbC = Nc.dim();
    int nb = nbC * d;
    Nimrep N;
    for (int x = 0; x < nbC; ++x)
        for (int l = 0; l < d; ++l)
            N.boundary.push_back("(" + Nc.boundary[x] + "," + std::to_string(l) + ")");
    N.mats.assign(dat.size(), NMat(nb, std::vector<long long>(nb, 0)));
    for (int a = 0; a < dat.size(); ++a) {
        const auto& w = dat.su->weights[a];
        long long shift = 0;
        for (size_t j = 0; j < w.size(); ++j) shift += static_cast<long long>(j + 1) * w[j];
        int sh = static_cast<int>(modNorm(shift, d));
        for (int x = 0; x < nbC; ++x)
            for (int y = 0; y < nbC; ++y) {
                long long c = Nc.mats[a][x][y];
                if (c == 0) continue;
                for (int l = 0; l < d; ++l) N.mats[a][x * d + l][y * d + (l + sh) % d] = c;
            }
    }
    return N;
}

std::optional<std::vector<int>> nimrepIsomorphism(const Nimrep& A, const Nimrep& B,
                                                  int generatorIndex) {
    if (A.dim() != B.dim() || A.mats.size() != B.mats.size()) return std::nullopt;
    int nb = A.dim();
    const NMat& GA = A.mats[generatorIndex];
    const NMat& GB = B.mats[generatorIndex];

    auto refine = [&](const NMat& G) {
        std::vector<long long> color(nb, 0);
        for (int it = 0; it < nb; ++it) {
            std::vector<std::string> sig(nb);
            for (int x = 0; x < nb; ++x) {
                std::vector<std::pair<long long, long long>> prof;
                for (int y = 0; y < nb; ++y)
                    if (G[x][y] != 0) prof.push_back({G[x][y], color[y]});
                std::sort(prof.begin(), prof.end());
                std::ostringstream os;
                os << color[x] << "|" << G[x][x] << "|";
                for (auto& [e, c] : prof) os << e << "," << c << ";";
                sig[x] = os.str();
            }
            // Canonical ids: sorted by signature so the two graphs agree.
            std::map<std::string, long long> remap;
            for (auto& s : sig) remap[s] = 0;
            long long next = 0;
            for (auto& [s, id] : remap) id = next++;
            std::vector<long long> nc(nb);
            for (int x = 0; x < nb; ++x) nc[x] = remap[sig[x]];
            if (nc == color) break;
            color = nc;
        }
        return color;
    };
    auto ca = refine(GA), cb = refine(GB);
    {
        auto sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }

    std::vector<int> mapTo(nb, -1);
    std::vector<int> used(nb, 0);
    auto fullMatch = [&]() {
        for (size_t a = 0; a < A.mats.size(); ++a)
            for (int x = 0; x < nb; ++x)
                for (int y = 0; y < nb; ++y)
                    if (A.mats[a][x][y] != B.mats[a][mapTo[x]][mapTo[y]]) return false;
        return true;
    };
    // Explore every generator-graph isomorphism until one extends to the full
    // family (inequivalent leg matchings on forked diagrams differ only there).
    std::function<bool(int)> place = [&](int x) {
        if (x == nb) return fullMatch();
        for (int y = 0; y < nb; ++y) {
            if (used[y] || ca[x] != cb[y]) continue;
            bool fine = GA[x][x] == GB[y][y];
            for (int z = 0; z < x && fine; ++z)
                if (GA[x][z] != GB[y][mapTo[z]] || GA[z][x] != GB[mapTo[z]][y]) fine = false;
            if (!fine) continue;
            mapTo[x] = y;
            used[y] = 1;
            if (place(x + 1)) return true;
            used[y] = 0;
            mapTo[x] = -1;
        }
        return false;
    };
    if (!place(0)) return std::nullopt;
    return mapTo;
}

bool checkPerronFrobenius(const ModularDatum& d, const Nimrep& N, const std::vector<Cyc>& candidate,
                          int a) {
    int nb = N.dim();
    if (static_cast<int>(candidate.size()) != nb) return false;
    for (int x = 0; x < nb; ++x)
        if (!candidate[x].isReal()) return false;
    // (N_a v)_x K_{vac,vac} == v_x K_{a,vac}, so the eigenvalue is exactly the
    // quantum dimension.
    for (int x = 0; x < nb; ++x) {
        Cyc lhs;
        for (int y = 0; y < nb; ++y)
            if (N.mats[a][x][y] != 0) lhs += candidate[y].scaledBy(Rat(N.mats[a][x][y]));
        if (!(lhs * d.sraw[d.vacuum][d.vacuum] == candidate[x] * d.sraw[a][d.vacuum])) return false;
    }
    return true;
}

std::string nimrepDot(const Nimrep& N, int a, const std::string& name) {
    std::ostringstream os;
    os << "graph \"" << name << "\" {\n";
    int nb = N.dim();
    for (int x = 0; x < nb; ++x) os << "  n" << x << " [label=\"" << N.boundary[x] << "\"];\n";
    for (int x = 0; x < nb; ++x) {
        if (N.mats[a][x][x] != 0)
            os << "  n" << x << " -- n" << x << " [label=\"" << N.mats[a][x][x] << "\"];\n";
        for (int y = x + 1; y < nb; ++y) {
            long long up = N.mats[a][x][y], dn = N.mats[a][y][x];
            if (up == 0 && dn == 0) continue;
            if (up == dn) {
                os << "  n" << x << " -- n" << y;
                if (up > 1) os << " [label=\"" << up << "\"]";
                os << ";\n";
            } else {
                if (up != 0) os << "  n" << x << " -- n" << y << " [label=\"" << up << ">\"];\n";
                if (dn != 0) os << "  n" << y << " -- n" << x << " [label=\"" << dn << ">\"];\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace fwb
