#include "fwb/charges.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace fwb {

std::string AbelianGroup::toString() const {
    if (invariantFactors.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < invariantFactors.size(); ++i) {
        if (i) os << " x ";
        if (invariantFactors[i] == 0) os << "Z";
        else os << "Z_" << invariantFactors[i];
    }
    return os.str();
}

AbelianGroup abelianFromFactors(std::vector<Int> factors) {
    // Canonicalize an arbitrary list of cyclic orders into a divisor chain via
    // prime-power redistribution.
    std::map<Int, std::vector<int>> ppow;
    int freeRank = 0;
    for (const Int& f : factors) {
        if (f == 0) { ++freeRank; continue; }
        Int m = f < 0 ? Int(-f) : f;
        if (m == 1) continue;
        for (Int p = 2; p * p <= m; ++p) {
            if (m % p != 0) continue;
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            ppow[p].push_back(e);
        }
        if (m > 1) ppow[m].push_back(1);
    }
    size_t maxLen = 0;
    for (auto& [p, es] : ppow) {
        std::sort(es.begin(), es.end(), std::greater<int>());
        maxLen = std::max(maxLen, es.size());
    }
    std::vector<Int> chain(maxLen, Int(1));
    for (auto& [p, es] : ppow)
        for (size_t i = 0; i < es.size(); ++i) {
            Int pe = 1;
            for (int t = 0; t < es[i]; ++t) pe *= p;
            chain[i] *= pe;
        }
    std::reverse(chain.begin(), chain.end());
    AbelianGroup g;
    for (const Int& c : chain)
        if (c != 1) g.invariantFactors.push_back(c);
    for (int i = 0; i < freeRank; ++i) g.invariantFactors.push_back(0);
    return g;
}

SmithResult smithNormalForm(IMat A) {
    int rows = static_cast<int>(A.size());
    int cols = rows ? static_cast<int>(A[0].size()) : 0;
    SmithResult out;
    out.U.assign(rows, std::vector<Int>(rows, Int(0)));
    out.V.assign(cols, std::vector<Int>(cols, Int(0)));
    for (int i = 0; i < rows; ++i) out.U[i][i] = 1;
    for (int i = 0; i < cols; ++i) out.V[i][i] = 1;

    auto swapRows = [&](int a, int b) {
        std::swap(A[a], A[b]);
        std::swap(out.U[a], out.U[b]);
    };
    auto swapCols = [&](int a, int b) {
        for (int i = 0; i < rows; ++i) std::swap(A[i][a], A[i][b]);
        for (int i = 0; i < cols; ++i) std::swap(out.V[i][a], out.V[i][b]);
    };
    auto addRow = [&](int dst, int src, const Int& f) {
        for (int j = 0; j < cols; ++j) A[dst][j] += f * A[src][j];
        for (int j = 0; j < rows; ++j) out.U[dst][j] += f * out.U[src][j];
    };
    auto addCol = [&](int dst, int src, const Int& f) {
        for (int i = 0; i < rows; ++i) A[i][dst] += f * A[i][src];
        for (int i = 0; i < cols; ++i) out.V[i][dst] += f * out.V[i][src];
    };
    auto negRow = [&](int r) {
        for (int j = 0; j < cols; ++j) A[r][j] = -A[r][j];
        for (int j = 0; j < rows; ++j) out.U[r][j] = -out.U[r][j];
    };

    int t = 0;
    while (t < rows && t < cols) {
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (A[i][j] == 0) continue;
                Int a = A[i][j] < 0 ? Int(-A[i][j]) : A[i][j];
                if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
            }
        if (pi < 0) break;
        swapRows(t, pi);
        swapCols(t, pj);
        if (A[t][t] < 0) negRow(t);
        bool clean = true;
        for (int i = t + 1; i < rows; ++i)
            if (A[i][t] != 0) {
                Int q = A[i][t] / A[t][t];
                addRow(i, t, -q);
                if (A[i][t] != 0) clean = false;
            }
        for (int j = t + 1; j < cols; ++j)
            if (A[t][j] != 0) {
                Int q = A[t][j] / A[t][t];
                addCol(j, t, -q);
                if (A[t][j] != 0) clean = false;
            }
        if (!clean) continue;
        bool redo = false;
        for (int i = t + 1; i < rows && !redo; ++i)
            for (int j = t + 1; j < cols; ++j)
                if (A[i][j] % A[t][t] != 0) {
                    addRow(t, i, Int(1));
                    redo = true;
                    break;
                }
        if (redo) continue;
        ++t;
    }
    for (int i = 0; i < std::min(rows, cols); ++i) out.diag.push_back(A[i][i]);
    return out;
}

ChargeGroupResult chargeGroup(const ModularDatum& d, const Nimrep& N, const std::vector<Int>& dims) {
    int nb = N.dim();
    std::vector<std::vector<Int>> relCols;
    for (int a : d.generators()) {
        for (int x = 0; x < nb; ++x) {
            // Column x of (N_a^T - dim(a) I): the relation dim(a) q_x = sum_y N_{a,x}^y q_y.
            std::vector<Int> col(nb, Int(0));
            for (int y = 0; y < nb; ++y) col[y] = Int(N.mats[a][x][y]);
            col[x] -= dims[a];
            relCols.push_back(std::move(col));
        }
    }
    IMat A(nb, std::vector<Int>(relCols.size(), Int(0)));
    for (size_t c = 0; c < relCols.size(); ++c)
        for (int r = 0; r < nb; ++r) A[r][c] = relCols[c][r];
    auto snf = smithNormalForm(A);

    ChargeGroupResult out;
    std::vector<Int> canon;
    for (int i = 0; i < nb; ++i) {
        Int di = i < static_cast<int>(snf.diag.size()) ? snf.diag[i] : Int(0);
        canon.push_back(di);
        if (di != 1) {
            std::vector<Int> row(nb);
            for (int j = 0; j < nb; ++j) {
                row[j] = snf.U[i][j];
                if (di != 0) {
                    row[j] %= di;
                    if (row[j] < 0) row[j] += di;
                }
            }
            out.generators.push_back({di, std::move(row)});
        }
    }
    out.group = abelianFromFactors(canon);
    std::sort(out.generators.begin(), out.generators.end(), [](const auto& a, const auto& b) {
        if ((a.first == 0) != (b.first == 0)) return b.first == 0;
        return a.first < b.first;
    });
    return out;
}

Int mkSu(int n, int k) {
    Int kappa = k + n;
    Int y = 1;
    for (int i = 2; i <= n - 1; ++i) y = lcmI(y, Int(i));
    return kappa / gcdI(kappa, y);
}

Int verlindeChargeGcd(int n, int k) {
    Int g = 0;
    for (const auto& gen : dimsAndIdeal(n, k).ideal) g = gcdI(g, gen.dimValue);
    if (g != mkSu(n, k))
        throw VerificationError("ideal-dimension gcd disagrees with the closed form");
    return g;
}

AbelianGroup chgpscPredict(int n, int k, int d) {
    Int M = mkSu(n, k);
    std::vector<Int> factors{M};
    Int gdm = gcdI(Int(d), M);
    for (long long pl : primeFactors(gdm.convert_to<long long>())) {
        Int p(pl);
        auto vp = [&](Int x) {
            int v = 0;
            while (x % p == 0) { x /= p; ++v; }
            return v;
        };
        int nu = vp(Int(n)), delta = vp(Int(d)), mu = vp(M);
        Int pim1 = 1;
        for (int i = 1; i <= delta; ++i) {
            Int pi = pim1 * p;
            Int copies = pi - pim1;
            int expn = std::min(mu, nu - i + 1);
            if (expn > 0) {
                Int ord = 1;
                for (int t = 0; t < expn; ++t) ord *= p;
                for (Int c = 0; c < copies; ++c) factors.push_back(ord);
            }
            pim1 = pi;
        }
    }
    return abelianFromFactors(std::move(factors));
}

ForgetAssignment forgetEquivarianceAssignment(int n, int k) {
    ForgetAssignment out;
    out.modulus = mkSu(n, k);
    for (const auto& w : levelWeights(n, k)) {
        Int q = weylDim(n, w) % out.modulus;
        if (q < 0) q += out.modulus;
        out.q.push_back(q);
    }
    return out;
}

}  // namespace fwb
