#include "fwb/invariants.hpp"

#include <algorithm>
#include <functional>

#include "fwb/certificates.hpp"

namespace fwb {

bool ModularInvariant::isAutomorphism() const {
    int m = static_cast<int>(Z.size());
    for (int i = 0; i < m; ++i) {
        Int row = 0, col = 0;
        for (int j = 0; j < m; ++j) {
            if (Z[i][j] != 0 && Z[i][j] != 1) return false;
            row += Z[i][j];
            col += Z[j][i];
        }
        if (row != 1 || col != 1) return false;
    }
    return true;
}

std::vector<Int> ModularInvariant::diagonal() const {
    std::vector<Int> d(Z.size());
    for (size_t i = 0; i < Z.size(); ++i) d[i] = Z[i][i];
    return d;
}

std::vector<int> ModularInvariant::exponents() const {
    std::vector<int> e;
    for (size_t i = 0; i < Z.size(); ++i)
        for (Int c = 0; c < Z[i][i]; ++c) e.push_back(static_cast<int>(i));
    return e;
}

InvariantReport verifyInvariant(const ModularDatum& d, const IMat& Z) {
    InvariantReport rep;
    int m = d.size();
    if (static_cast<int>(Z.size()) != m) {
        rep.fail("dimension mismatch");
        return rep;
    }
    for (int i = 0; i < m; ++i)
        if (static_cast<int>(Z[i].size()) != m) {
            rep.fail("dimension mismatch");
            return rep;
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (Z[i][j] < 0) rep.fail("negative entry at " + d.labels[i] + "," + d.labels[j]);
    if (Z[d.vacuum][d.vacuum] != 1) rep.fail("Z_{1,1} != 1");

    // ZT = TZ: T is diagonal, so Z_{ab} != 0 forces T_a = T_b.
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (Z[a][b] != 0 && !(d.tvec[a] == d.tvec[b])) {
                rep.fail("ZT != TZ at " + d.labels[a] + "," + d.labels[b]);
                if (rep.violations.size() > 8) return rep;
            }

    // ZS = SZ using the raw S (the scalar normalization cancels); exploit the
    // sparsity of Z.
    std::vector<std::vector<std::pair<int, Int>>> rows(m), cols(m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (Z[a][b] != 0) {
                rows[a].push_back({b, Z[a][b]});
                cols[b].push_back({a, Z[a][b]});
            }
    for (int a = 0; a < m && rep.ok; ++a)
        for (int b = 0; b < m; ++b) {
            Cyc lhs, rhs;
            for (const auto& [s, c] : rows[a]) lhs += d.sraw[s][b].scaledBy(Rat(c));
            for (const auto& [s, c] : cols[b]) rhs += d.sraw[a][s].scaledBy(Rat(c));
            if (!(lhs == rhs)) {
                rep.fail("ZS != SZ at " + d.labels[a] + "," + d.labels[b]);
                break;
            }
        }
    return rep;
}

std::optional<ModularInvariant> simpleCurrentInvariant(const ModularDatum& d,
                                                       const SimpleCurrent& j) {
    int n = j.order;
    int m = d.size();
    // Existence: the T-ratio e^{2 pi i h_j} must be an n-th root of unity
    // (n h_j integral). Automorphism iff its order equals the permutation order.
    Rat nh = Rat(n) * j.h;
    if (!isInteger(nh)) return std::nullopt;
    ModularInvariant out;
    out.Z.assign(m, std::vector<Int>(m, Int(0)));
    for (int a = 0; a < m; ++a) {
        int target = a;
        for (int l = 1; l <= n; ++l) {
            target = j.perm[target];
            Rat x = j.Q[a] - Rat(l) * j.h;
            if (isInteger(x)) out.Z[a][target] += 1;
        }
    }
    auto rep = verifyInvariant(d, out.Z);
    if (!rep.ok) throw VerificationError("simple-current invariant failed verification: " + rep.violations[0]);
    return out;
}

namespace {

// Incremental RREF over Q for the commutant solve.
struct RrefQ {
    int cols;
    std::vector<std::vector<Rat>> rows;   // reduced rows
    std::vector<int> pivotCol;
    explicit RrefQ(int c) : cols(c) {}
    // Returns true if the row increased the rank.
    bool insert(std::vector<Rat> r) {
        for (size_t i = 0; i < rows.size(); ++i) {
            Rat c = r[pivotCol[i]];
            if (c != 0) {
                for (int j = 0; j < cols; ++j)
                    if (rows[i][j] != 0) r[j] -= c * rows[i][j];
            }
        }
        int p = -1;
        for (int j = 0; j < cols; ++j)
            if (r[j] != 0) { p = j; break; }
        if (p < 0) return false;
        Rat inv = Rat(1) / r[p];
        for (int j = 0; j < cols; ++j) r[j] *= inv;
        // Back-substitute into existing rows.
        for (size_t i = 0; i < rows.size(); ++i) {
            Rat c = rows[i][p];
            if (c != 0)
                for (int j = 0; j < cols; ++j) rows[i][j] -= c * r[j];
        }
        rows.push_back(std::move(r));
        pivotCol.push_back(p);
        return true;
    }
};

}  // namespace

std::vector<ModularInvariant> enumerateInvariants(const ModularDatum& d,
                                                  const EnumerateOptions& opt) {
    int m = d.size();
    if (m > opt.sizeCap) throw CapExceeded("enumerateInvariants: |Phi| exceeds the search cap");

    // Variables: pairs (a,b) with T_a = T_b (all other entries vanish).
    std::vector<std::pair<int, int>> vars;
    std::vector<std::vector<int>> varAt(m, std::vector<int>(m, -1));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (d.tvec[a] == d.tvec[b]) {
                varAt[a][b] = static_cast<int>(vars.size());
                vars.push_back({a, b});
            }
    int nv = static_cast<int>(vars.size());

    // Commutant equations (Z K)_{ab} = (K Z)_{ab}, expanded over the power basis.
    long long cond = 1;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) cond = lcmLL(cond, d.sraw[a][b].conductor());
    long long phi = cycPhi(cond);
    RrefQ solver(nv);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            // sum_s Z_{as} K_{sb} - sum_s K_{as} Z_{sb} = 0.
            std::vector<std::vector<Rat>> comp(phi, std::vector<Rat>(nv, Rat(0)));
            bool any = false;
            for (int s = 0; s < m; ++s) {
                int v1 = varAt[a][s];
                if (v1 >= 0) {
                    Cyc e = d.sraw[s][b].embedded(cond);
                    const auto& cf = e.rawCoeffs();
                    for (size_t t = 0; t < cf.size(); ++t)
                        if (cf[t] != 0) { comp[t][v1] += e.rawScale() * Rat(cf[t]); any = true; }
                }
                int v2 = varAt[s][b];
                if (v2 >= 0) {
                    Cyc e = d.sraw[a][s].embedded(cond);
                    const auto& cf = e.rawCoeffs();
                    for (size_t t = 0; t < cf.size(); ++t)
                        if (cf[t] != 0) { comp[t][v2] -= e.rawScale() * Rat(cf[t]); any = true; }
                }
            }
            if (!any) continue;
            for (auto& row : comp) solver.insert(std::move(row));
        }

    // Solution space: free variables parametrize the commutant.
    int rank = static_cast<int>(solver.rows.size());
    int dim = nv - rank;
    std::vector<bool> isPivot(nv, false);
    for (int p : solver.pivotCol) isPivot[p] = true;
    std::vector<int> freeVars;
    for (int v = 0; v < nv; ++v)
        if (!isPivot[v]) freeVars.push_back(v);

    // entryExpr[v] = expression of variable v over the free variables.
    std::vector<std::vector<Rat>> entryExpr(nv, std::vector<Rat>(dim, Rat(0)));
    for (int f = 0; f < dim; ++f) entryExpr[freeVars[f]][f] = 1;
    for (int i = 0; i < rank; ++i) {
        int pv = solver.pivotCol[i];
        for (int f = 0; f < dim; ++f) {
            Rat s(0);
            for (int j = 0; j < nv; ++j)
                if (j != pv && solver.rows[i][j] != 0) s -= solver.rows[i][j] * entryExpr[j][f];
            entryExpr[pv][f] = s;
        }
    }

    // Entry bounds floor(d_a d_b) from exact quantum dimensions.
    std::vector<Cyc> qd(m);
    for (int i = 0; i < m; ++i) qd[i] = d.qdim(i);
    std::vector<Int> bound(nv);
    for (int v = 0; v < nv; ++v) {
        Cyc prod = qd[vars[v].first] * qd[vars[v].second];
        Int b = floorOfReal(prod);
        if (b > opt.entryBoundCap) throw CapExceeded("entry bound exceeds cap");
        bound[v] = b;
    }

    // Choose dim coordinate entries with small bounds whose expressions are
    // independent; enumerate integer assignments over them.
    std::vector<int> order(nv);
    for (int v = 0; v < nv; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (bound[x] != bound[y]) return bound[x] < bound[y];
        return x < y;
    });
    RrefQ pick(dim);
    std::vector<int> chosen;
    for (int v : order) {
        if (static_cast<int>(chosen.size()) == dim) break;
        if (pick.insert(entryExpr[v])) chosen.push_back(v);
    }
    if (static_cast<int>(chosen.size()) != dim)
        throw std::logic_error("enumerateInvariants: could not select independent entries");

    // Invert the (dim x dim) matrix of chosen expressions.
    std::vector<std::vector<Rat>> Minv(dim, std::vector<Rat>(dim, Rat(0)));
    {
        std::vector<std::vector<Rat>> aug(dim, std::vector<Rat>(2 * dim, Rat(0)));
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) aug[i][j] = entryExpr[chosen[i]][j];
            aug[i][dim + i] = 1;
        }
        for (int c = 0; c < dim; ++c) {
            int sel = -1;
            for (int r = c; r < dim; ++r)
                if (aug[r][c] != 0) { sel = r; break; }
            std::swap(aug[sel], aug[c]);
            Rat inv = Rat(1) / aug[c][c];
            for (auto& x : aug[c]) x *= inv;
            for (int r = 0; r < dim; ++r) {
                if (r == c || aug[r][c] == 0) continue;
                Rat f = aug[r][c];
                for (int j = 0; j < 2 * dim; ++j) aug[r][j] -= f * aug[c][j];
            }
        }
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) Minv[i][j] = aug[i][dim + j];
    }

    // exprInChosen[v] = value of var v as a function of the chosen entries.
    std::vector<std::vector<Rat>> exprInChosen(nv, std::vector<Rat>(dim, Rat(0)));
    for (int v = 0; v < nv; ++v)
        for (int j = 0; j < dim; ++j) {
            Rat s(0);
            for (int t = 0; t < dim; ++t) s += entryExpr[v][t] * Minv[t][j];
            exprInChosen[v][j] = s;
        }

    int vacVar = varAt[d.vacuum][d.vacuum];
    std::vector<ModularInvariant> found;
    std::vector<Int> assign(dim, Int(0));
    long long nodes = 0;
    // Entries fully determined by a prefix of chosen assignments, for pruning.
    std::vector<std::vector<int>> determinedAfter(dim + 1);
    for (int v = 0; v < nv; ++v) {
        int lastDep = -1;
        for (int j = 0; j < dim; ++j)
            if (exprInChosen[v][j] != 0) lastDep = j;
        determinedAfter[lastDep + 1].push_back(v);
    }
    std::function<void(int)> dfs = [&](int pos) {
        if (++nodes > opt.nodeCap)
            throw CapExceeded("enumerateInvariants: node cap exceeded");
        for (int v : determinedAfter[pos]) {
            Rat s(0);
            for (int j = 0; j < pos; ++j)
                if (exprInChosen[v][j] != 0) s += exprInChosen[v][j] * Rat(assign[j]);
            if (!isInteger(s)) return;
            Int val = ratNum(s);
            if (val < 0 || val > bound[v]) return;
            if (v == vacVar && val != 1) return;
        }
        if (pos == dim) {
            ModularInvariant cand;
            cand.Z.assign(m, std::vector<Int>(m, Int(0)));
            for (int v = 0; v < nv; ++v) {
                Rat s(0);
                for (int j = 0; j < dim; ++j)
                    if (exprInChosen[v][j] != 0) s += exprInChosen[v][j] * Rat(assign[j]);
                cand.Z[vars[v].first][vars[v].second] = ratNum(s);
            }
            found.push_back(std::move(cand));
            return;
        }
        int v = chosen[pos];
        Int hi = bound[v];
        Int lo = 0;
        if (v == vacVar) { lo = 1; hi = 1; }
        for (Int x = lo; x <= hi; ++x) {
            assign[pos] = x;
            dfs(pos + 1);
        }
    };
    dfs(0);

    // Defensive re-verification and deterministic ordering.
    std::vector<ModularInvariant> out;
    for (auto& z : found)
        if (verifyInvariant(d, z.Z).ok) out.push_back(std::move(z));
    std::sort(out.begin(), out.end(), [](const ModularInvariant& A, const ModularInvariant& B) {
        return A.Z < B.Z;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const ModularInvariant& A, const ModularInvariant& B) { return A.Z == B.Z; }),
              out.end());
    return out;
}

ModularInvariant twistByAutomorphism(const ModularDatum& d, const ModularInvariant& Z,
                                     const std::vector<int>& omega) {
    ModularInvariant P = permutationInvariant(omega);
    if (!verifyInvariant(d, P.Z).ok)
        throw VerificationError("twistByAutomorphism: omega is not an automorphism invariant");
    int m = d.size();
    ModularInvariant out;
    out.Z.assign(m, std::vector<Int>(m, Int(0)));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) out.Z[a][b] = Z.Z[a][omega[b]];
    auto rep = verifyInvariant(d, out.Z);
    if (!rep.ok) throw VerificationError("twistByAutomorphism: result fails verification");
    return out;
}

ModularInvariant productInvariant(const ModularInvariant& A, const ModularInvariant& B) {
    int m = static_cast<int>(A.Z.size());
    ModularInvariant C;
    C.Z.assign(m, std::vector<Int>(m, Int(0)));
    for (int i = 0; i < m; ++i)
        for (int t = 0; t < m; ++t) {
            if (A.Z[i][t] == 0) continue;
            for (int j = 0; j < m; ++j) C.Z[i][j] += A.Z[i][t] * B.Z[t][j];
        }
    return C;
}

ModularInvariant permutationInvariant(const std::vector<int>& perm) {
    int m = static_cast<int>(perm.size());
    ModularInvariant P;
    P.Z.assign(m, std::vector<Int>(m, Int(0)));
    for (int i = 0; i < m; ++i) P.Z[i][perm[i]] = 1;
    return P;
}

}  // namespace fwb
