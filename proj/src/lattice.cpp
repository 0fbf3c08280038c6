#include "fwb/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fwb/charges.hpp"

namespace fwb {

namespace {

Rat mod1(const Rat& x) {
    Rat r = x - Rat(ratFloor(x));
    return r;
}

Rat mod2(const Rat& x) {
    Rat half = x / 2;
    return x - 2 * Rat(ratFloor(half));
}

Cyc rootFromTurn(const Rat& t) {
    Rat r = mod1(t);
    Int den = ratDen(r), num = ratNum(r);
    return Cyc::rootOfUnity(den.convert_to<long long>(),
                            modNorm(num.convert_to<long long>(), den.convert_to<long long>()));
}

}  // namespace

int DiscriminantForm::indexOf(const std::vector<int>& coord) const {
    int idx = 0;
    for (size_t i = 0; i < orders.size(); ++i) {
        long long d = orders[i].convert_to<long long>();
        idx = idx * static_cast<int>(d) + static_cast<int>(modNorm(coord[i], d));
    }
    return idx;
}

int DiscriminantForm::add(int a, int b) const {
    std::vector<int> c(orders.size());
    for (size_t i = 0; i < orders.size(); ++i) c[i] = elemCoord[a][i] + elemCoord[b][i];
    return indexOf(c);
}

int DiscriminantForm::neg(int a) const {
    std::vector<int> c(orders.size());
    for (size_t i = 0; i < orders.size(); ++i) c[i] = -elemCoord[a][i];
    return indexOf(c);
}

Rat DiscriminantForm::qValue(int a) const {
    const auto& v = elements[a];
    int n = L.rank();
    Rat acc(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += v[i] * Rat(L.gram[i][j]) * v[j];
    return mod2(acc);
}

Rat DiscriminantForm::bValue(int a, int b) const {
    const auto& u = elements[a];
    const auto& v = elements[b];
    int n = L.rank();
    Rat acc(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += u[i] * Rat(L.gram[i][j]) * v[j];
    return mod1(acc);
}

DiscriminantForm discriminant(const EvenLattice& L) {
    int n = L.rank();
    for (int i = 0; i < n; ++i) {
        if (L.gram[i][i] % 2 != 0) throw std::invalid_argument("discriminant: Gram diagonal must be even");
        for (int j = 0; j < n; ++j)
            if (L.gram[i][j] != L.gram[j][i]) throw std::invalid_argument("discriminant: Gram not symmetric");
    }
    auto snf = smithNormalForm(L.gram);
    Int det = 1;
    for (const Int& d : snf.diag) det *= d;
    if (det <= 0) throw std::invalid_argument("discriminant: Gram must be nondegenerate positive");

    DiscriminantForm D;
    D.L = L;
    // Generators: column i of V divided by d_i (dual vectors in basis coords).
    for (int i = 0; i < n; ++i) {
        if (snf.diag[i] == 1) continue;
        D.orders.push_back(snf.diag[i]);
        std::vector<Rat> g(n);
        for (int r = 0; r < n; ++r) g[r] = Rat(snf.V[r][i], snf.diag[i]);
        D.gens.push_back(std::move(g));
    }
    // Enumerate all elements.
    std::vector<int> coord(D.orders.size(), 0);
    std::function<void(size_t)> rec = [&](size_t pos) {
        if (pos == D.orders.size()) {
            std::vector<Rat> v(n, Rat(0));
            for (size_t i = 0; i < D.orders.size(); ++i)
                for (int r = 0; r < n; ++r) v[r] += Rat(coord[i]) * D.gens[i][r];
            for (int r = 0; r < n; ++r) v[r] = mod1(v[r]);
            D.elements.push_back(std::move(v));
            D.elemCoord.push_back(coord);
            return;
        }
        long long d = D.orders[pos].convert_to<long long>();
        for (long long c = 0; c < d; ++c) {
            coord[pos] = static_cast<int>(c);
            rec(pos + 1);
        }
    };
    rec(0);
    Int sz = 1;
    for (const Int& d : D.orders) sz *= d;
    if (sz != det || static_cast<Int>(D.elements.size()) != det)
        throw std::logic_error("discriminant: group size mismatch");
    return D;
}

DatumPtr latticeDatum(const DiscriminantForm& D) {
    auto md = std::make_shared<ModularDatum>();
    int m = D.size();
    long long M = static_cast<long long>(m);
    int n = D.L.rank();
    for (int i = 0; i < m; ++i) {
        std::ostringstream os;
        os << "[";
        for (size_t c = 0; c < D.elemCoord[i].size(); ++c) {
            if (c) os << ",";
            os << D.elemCoord[i][c];
        }
        os << "]";
        md->labels.push_back(os.str());
    }
    md->vacuum = D.indexOf(std::vector<int>(D.orders.size(), 0));
    md->snorm = Cyc::sqrtOfInt(M).scaledBy(Rat(1, M));
    md->snormAbs2 = Rat(1, M);
    md->sraw.assign(m, std::vector<Cyc>(m));
    md->tvec.resize(m);
    md->conjPerm.resize(m);
    for (int a = 0; a < m; ++a) {
        md->conjPerm[a] = D.neg(a);
        md->tvec[a] = rootFromTurn(D.qValue(a) / 2 - Rat(n, 24));
        // S carries e^{-2 pi i u.v}: the sign that satisfies (ST)^3 = S^2
        // together with the -pi i n/12 phase in T.
        for (int b = 0; b < m; ++b) md->sraw[a][b] = rootFromTurn(-D.bValue(a, b));
    }
    auto* Dp = new DiscriminantForm(D);  // owned by the closures below
    std::shared_ptr<DiscriminantForm> hold(Dp);
    md->fusionOverride = [hold, m](int a, int b) {
        std::vector<Int> out(m, Int(0));
        out[hold->add(a, b)] = 1;
        return out;
    };
    for (size_t i = 0; i < D.orders.size(); ++i) {
        std::vector<int> c(D.orders.size(), 0);
        c[i] = 1;
        md->genOverride.push_back(D.indexOf(c));
    }
    if (md->genOverride.empty()) md->genOverride.push_back(md->vacuum);
    // Every primary is a simple current.
    for (int j = 0; j < m; ++j) {
        if (j == md->vacuum) continue;
        SimpleCurrent sc;
        sc.perm.resize(m);
        sc.Q.resize(m);
        for (int x = 0; x < m; ++x) {
            sc.perm[x] = D.add(j, x);
            sc.Q[x] = mod1(-D.bValue(j, x));
        }
        sc.h = mod1(D.qValue(j) / 2);
        int ord = 1, cur = j;
        while (cur != md->vacuum) {
            cur = D.add(cur, j);
            ++ord;
        }
        sc.order = ord;
        md->simpleCurrents.push_back(std::move(sc));
    }
    return md;
}

namespace {

std::vector<std::vector<int>> allSubgroups(const DiscriminantForm& D) {
    int m = D.size();
    int zero = D.indexOf(std::vector<int>(D.orders.size(), 0));
    auto closure = [&](std::vector<int> gens) {
        std::set<int> S{zero};
        std::vector<int> frontier{zero};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int e : frontier)
                for (int g : gens) {
                    int f = D.add(e, g);
                    if (S.insert(f).second) next.push_back(f);
                }
            frontier = std::move(next);
        }
        return std::vector<int>(S.begin(), S.end());
    };
    std::set<std::vector<int>> subs;
    subs.insert({zero});
    int r = static_cast<int>(D.orders.size());
    // Closures of up to min(r,3) generators cover all subgroups for rank <= 3.
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    for (int a = 0; a < m; ++a) {
        subs.insert(closure({a}));
        if (r >= 2)
            for (int b = a + 1; b < m; ++b) {
                subs.insert(closure({a, b}));
                if (r >= 3)
                    for (int c = b + 1; c < m; ++c) subs.insert(closure({a, b, c}));
            }
    }
    return std::vector<std::vector<int>>(subs.begin(), subs.end());
}

std::vector<int> annihilatorOf(const DiscriminantForm& D, const std::vector<int>& sub) {
    std::vector<int> out;
    for (int x = 0; x < D.size(); ++x) {
        bool ok = true;
        for (int s : sub)
            if (D.bValue(x, s) != 0) { ok = false; break; }
        if (ok) out.push_back(x);
    }
    return out;
}

// Quotient structure A/B for subgroups B <= A of the discriminant group.
struct QuotientGroup {
    std::vector<std::vector<int>> cosets;  // element lists; coset 0 contains zero
    std::vector<int> cosetOf;              // discriminant element -> coset id (-1 outside A)
};

QuotientGroup quotientOf(const DiscriminantForm& D, const std::vector<int>& A,
                         const std::vector<int>& B) {
    QuotientGroup q;
    q.cosetOf.assign(D.size(), -1);
    int zero = D.indexOf(std::vector<int>(D.orders.size(), 0));
    for (int a : A) {
        if (q.cosetOf[a] >= 0) continue;
        int id = static_cast<int>(q.cosets.size());
        std::vector<int> coset;
        for (int b : B) {
            int e = D.add(a, b);
            q.cosetOf[e] = id;
            coset.push_back(e);
        }
        std::sort(coset.begin(), coset.end());
        q.cosets.push_back(std::move(coset));
    }
    // Put the zero coset first.
    int zc = q.cosetOf[zero];
    if (zc != 0) {
        std::swap(q.cosets[0], q.cosets[zc]);
        for (auto& c : q.cosetOf)
            if (c == 0) c = zc;
            else if (c == zc) c = 0;
    }
    return q;
}

}  // namespace

std::vector<GluingTriple> classifyInvariants(const DiscriminantForm& D, int cap) {
    if (D.size() > cap) throw CapExceeded("classifyInvariants: discriminant too large");
    auto md = latticeDatum(D);
    int m = D.size();
    int zero = md->vacuum;

    auto subs = allSubgroups(D);
    std::vector<std::vector<int>> evenSubs;
    for (auto& s : subs) {
        bool even = true;
        for (int e : s)
            if (D.qValue(e) != 0) { even = false; break; }
        if (even) evenSubs.push_back(s);
    }

    std::vector<GluingTriple> out;
    for (const auto& Dp : evenSubs)
        for (const auto& Dm : evenSubs) {
            if (Dp.size() != Dm.size()) continue;
            auto DpStar = annihilatorOf(D, Dp);
            auto DmStar = annihilatorOf(D, Dm);
            auto Qp = quotientOf(D, DpStar, Dp);
            auto Qm = quotientOf(D, DmStar, Dm);
            int nq = static_cast<int>(Qp.cosets.size());
            if (static_cast<int>(Qm.cosets.size()) != nq) continue;
            // q-values on the quotients.
            auto qOn = [&](const QuotientGroup& Q, int c) { return D.qValue(Q.cosets[c][0]); };
            // Enumerate isomorphisms beta by generator images.
            // Generators of Qp greedily.
            std::vector<int> gens;
            {
                std::set<int> have{0};
                while (static_cast<int>(have.size()) < nq) {
                    int best = -1;
                    size_t bestSz = have.size();
                    for (int c = 1; c < nq; ++c) {
                        if (have.count(c)) continue;
                        // closure of have + c under addition
                        std::set<int> cl = have;
                        std::vector<int> fr(cl.begin(), cl.end());
                        fr.push_back(c);
                        cl.insert(c);
                        bool grew = true;
                        while (grew) {
                            grew = false;
                            std::vector<int> cur(cl.begin(), cl.end());
                            for (int x : cur)
                                for (int y : cur) {
                                    int z = Qp.cosetOf[D.add(Qp.cosets[x][0], Qp.cosets[y][0])];
                                    if (cl.insert(z).second) grew = true;
                                }
                        }
                        if (cl.size() > bestSz) {
                            bestSz = cl.size();
                            best = c;
                            if (static_cast<int>(cl.size()) == nq) break;
                        }
                    }
                    gens.push_back(best);
                    std::set<int> cl{0};
                    bool grew = true;
                    cl.insert(gens.begin(), gens.end());
                    while (grew) {
                        grew = false;
                        std::vector<int> cur(cl.begin(), cl.end());
                        for (int x : cur)
                            for (int y : cur) {
                                int z = Qp.cosetOf[D.add(Qp.cosets[x][0], Qp.cosets[y][0])];
                                if (cl.insert(z).second) grew = true;
                            }
                    }
                    have = cl;
                }
            }
            // Orders of quotient elements.
            auto qAdd = [&](const QuotientGroup& Q, int a, int b) {
                return Q.cosetOf[D.add(Q.cosets[a][0], Q.cosets[b][0])];
            };
            auto qOrder = [&](const QuotientGroup& Q, int a) {
                int cur = a, ord = 1;
                while (cur != 0) {
                    cur = qAdd(Q, cur, a);
                    ++ord;
                }
                return ord;
            };
            std::vector<int> images(gens.size(), 0);
            std::function<void(size_t)> tryImages = [&](size_t pos) {
                if (pos == gens.size()) {
                    // Extend to a full map by words; check bijection + q.
                    std::vector<int> beta(nq, -1);
                    beta[0] = 0;
                    std::vector<int> frontier{0};
                    while (!frontier.empty()) {
                        std::vector<int> next;
                        for (int x : frontier)
                            for (size_t i = 0; i < gens.size(); ++i) {
                                int y = qAdd(Qp, x, gens[i]);
                                int fy = qAdd(Qm, beta[x], images[i]);
                                if (beta[y] < 0) {
                                    beta[y] = fy;
                                    next.push_back(y);
                                } else if (beta[y] != fy) {
                                    return;
                                }
                            }
                        frontier = std::move(next);
                    }
                    std::vector<bool> hit(nq, false);
                    for (int x = 0; x < nq; ++x) {
                        if (beta[x] < 0 || hit[beta[x]]) return;
                        hit[beta[x]] = true;
                    }
                    for (int x = 0; x < nq; ++x)
                        if (mod2(qOn(Qp, x) - qOn(Qm, beta[x])) != 0) return;
                    // Build and verify the invariant.
                    GluingTriple t;
                    t.Dplus = Dp;
                    t.Dminus = Dm;
                    t.beta = beta;
                    t.Z.Z.assign(m, std::vector<Int>(m, Int(0)));
                    for (int u : DpStar) {
                        int target = beta[Qp.cosetOf[u]];
                        for (int v : Qm.cosets[target]) t.Z.Z[u][v] = 1;
                    }
                    auto rep = verifyInvariant(*md, t.Z.Z);
                    if (!rep.ok)
                        throw VerificationError("classifyInvariants: " + rep.violations[0]);
                    out.push_back(std::move(t));
                    return;
                }
                int ordG = qOrder(Qp, gens[pos]);
                for (int c = 0; c < nq; ++c) {
                    if (qOrder(Qm, c) != ordG) continue;
                    if (mod2(qOn(Qp, gens[pos]) - qOn(Qm, c)) != 0) continue;
                    images[pos] = c;
                    tryImages(pos + 1);
                }
            };
            if (nq == 1) {
                GluingTriple t;
                t.Dplus = Dp;
                t.Dminus = Dm;
                t.beta = {0};
                t.Z.Z.assign(m, std::vector<Int>(m, Int(0)));
                for (int u : DpStar)
                    for (int v : Qm.cosets[0]) t.Z.Z[u][v] = 1;
                auto rep = verifyInvariant(*md, t.Z.Z);
                if (!rep.ok) throw VerificationError("classifyInvariants: " + rep.violations[0]);
                out.push_back(std::move(t));
            } else {
                tryImages(0);
            }
        }
    // Distinctness of the parametrization.
    std::set<IMat> seen;
    for (auto& t : out)
        if (!seen.insert(t.Z.Z).second)
            throw VerificationError("classifyInvariants: duplicate invariant from distinct triples");
    std::sort(out.begin(), out.end(),
              [](const GluingTriple& a, const GluingTriple& b) { return a.Z.Z < b.Z.Z; });
    (void)zero;
    return out;
}

std::vector<LatticeNimrep> classifyNimreps(const DiscriminantForm& D) {
    auto md = latticeDatum(D);
    int m = D.size();
    std::vector<LatticeNimrep> out;
    for (const auto& E : allSubgroups(D)) {
        auto Estar = annihilatorOf(D, E);
        std::vector<int> all(m);
        std::iota(all.begin(), all.end(), 0);
        auto Q = quotientOf(D, all, Estar);
        LatticeNimrep ln;
        ln.E = E;
        int nb = static_cast<int>(Q.cosets.size());
        for (int x = 0; x < nb; ++x)
            ln.N.boundary.push_back("[" + md->labels[Q.cosets[x][0]] + "]_{E*}");
        ln.N.mats.assign(m, NMat(nb, std::vector<long long>(nb, 0)));
        for (int a = 0; a < m; ++a)
            for (int x = 0; x < nb; ++x)
                ln.N.mats[a][x][Q.cosetOf[D.add(a, Q.cosets[x][0])]] = 1;
        auto rep = verifyNimrep(*md, ln.N);
        if (!rep.ok) throw VerificationError("classifyNimreps: " + rep.violations[0]);
        // Exponents: the L-cosets in E, all with multiplicity 1.
        auto ex = nimrepExponents(*md, ln.N);
        for (int i = 0; i < m; ++i) {
            bool inE = std::binary_search(E.begin(), E.end(), i);
            if (ex[i] != (inE ? 1 : 0))
                throw VerificationError("classifyNimreps: exponents are not E with multiplicity 1");
        }
        out.push_back(std::move(ln));
    }
    std::sort(out.begin(), out.end(),
              [](const LatticeNimrep& a, const LatticeNimrep& b) { return a.E < b.E; });
    return out;
}

Theorem2Result theorem2Pipeline(const DiscriminantForm& D, const GluingTriple& t) {
    auto md = latticeDatum(D);
    int m = D.size();
    Theorem2Result out;

    auto DpStar = annihilatorOf(D, t.Dplus);
    auto DmStar = annihilatorOf(D, t.Dminus);
    auto Qp = quotientOf(D, DpStar, t.Dplus);
    auto Qm = quotientOf(D, DmStar, t.Dminus);

    // E = union over [u]_+ of ([u]_+ intersect beta([u]_+)).
    for (int u : DpStar) {
        int cp = Qp.cosetOf[u];
        if (Qm.cosetOf[u] >= 0 && Qm.cosetOf[u] == t.beta[cp]) out.E.push_back(u);
    }
    std::sort(out.E.begin(), out.E.end());
    // Certify that E is a subgroup.
    for (int a : out.E)
        for (int b : out.E)
            if (!std::binary_search(out.E.begin(), out.E.end(), D.add(a, b)))
                throw VerificationError("theorem2: E is not a subgroup");

    // Nimrep on L*/E*.
    auto Estar = annihilatorOf(D, out.E);
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    auto QE = quotientOf(D, all, Estar);
    int nb = static_cast<int>(QE.cosets.size());
    for (int x = 0; x < nb; ++x)
        out.nimrep.boundary.push_back("[" + md->labels[QE.cosets[x][0]] + "]_{E*}");
    out.nimrep.mats.assign(m, NMat(nb, std::vector<long long>(nb, 0)));
    for (int a = 0; a < m; ++a)
        for (int x = 0; x < nb; ++x) out.nimrep.mats[a][x][QE.cosetOf[D.add(a, QE.cosets[x][0])]] = 1;
    auto rep = verifyNimrep(*md, out.nimrep);
    if (!rep.ok) throw VerificationError("theorem2: nimrep failed: " + rep.violations[0]);
    if (!compatible(*md, out.nimrep, t.Z))
        throw VerificationError("theorem2: nimrep is not compatible with Z");

    // Full system (L*/D_-) x (L*/D_+^*) and alpha-induction.
    auto QfullM = quotientOf(D, all, t.Dminus);
    auto QfullP = quotientOf(D, all, DpStar);
    out.fullSize = static_cast<int>(QfullM.cosets.size() * QfullP.cosets.size());
    out.alphaPlus.resize(m);
    out.alphaMinus.resize(m);
    for (int v = 0; v < m; ++v) {
        int first = -1;
        if (Qp.cosetOf[v] >= 0) {
            int img = t.beta[Qp.cosetOf[v]];
            first = QfullM.cosetOf[Qm.cosets[img][0]];
        }
        out.alphaPlus[v] = {first, QfullP.cosetOf[v]};
        out.alphaMinus[v] = {QfullM.cosetOf[v], QfullP.cosetOf[md->vacuum]};
    }
    out.recovered.Z.assign(m, std::vector<Int>(m, Int(0)));
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) {
            bool match = out.alphaPlus[u].second == out.alphaMinus[v].second &&
                         out.alphaPlus[u].first >= 0 && out.alphaPlus[u].first == out.alphaMinus[v].first;
            out.recovered.Z[u][v] = match ? 1 : 0;
        }
    if (!(out.recovered.Z == t.Z.Z))
        throw VerificationError("theorem2: <alpha+, alpha-> does not recover Z");

    // Neutral system D_-^*/D_- and sigma-restriction into L-cosets.
    out.neutral = Qm.cosets;
    for (const auto& coset : out.neutral) out.sigmaRestriction.push_back(coset);

    // Charge group with unit dimensions.
    std::vector<Int> ones(m, Int(1));
    out.chargeGroup = chargeGroup(*md, out.nimrep, ones).group;
    return out;
}

}  // namespace fwb
