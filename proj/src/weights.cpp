#include "fwb/weights.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace fwb {

std::vector<Weight> levelWeights(int n, int k) {
    std::vector<Weight> out;
    Weight cur(n - 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
        cur[pos] = 0;
    };
    rec(0, k);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Partition coordinates p_i = sum_{j>=i} lambda_j, i = 1..n (p_n = 0).
std::vector<long long> partitionCoords(int n, const Weight& w) {
    std::vector<long long> p(n, 0);
    for (int i = n - 2; i >= 0; --i) p[i] = p[i + 1] + w[i];
    return p;
}

Weight weightFromPartition(int n, const std::vector<long long>& p) {
    Weight w(n - 1);
    for (int i = 0; i < n - 1; ++i) w[i] = static_cast<int>(p[i] - p[i + 1]);
    return w;
}

}  // namespace

Int weylDim(int n, const Weight& w) {
    auto p = partitionCoords(n, w);
    std::vector<long long> t(n);
    for (int i = 0; i < n; ++i) t[i] = p[i] + (n - 1 - i);
    Int num = 1, den = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            num *= Int(t[i] - t[j]);
            den *= Int(j - i);
        }
    return num / den;
}

Weight rotateJ(int n, int k, const Weight& w, int times) {
    times = static_cast<int>(modNorm(times, n));
    std::vector<int> full(n);
    int sum = 0;
    for (int i = 0; i < n - 1; ++i) sum += w[i];
    full[0] = k - sum;
    for (int i = 1; i < n; ++i) full[i] = w[i - 1];
    std::vector<int> rot(n);
    for (int i = 0; i < n; ++i) rot[(i + times) % n] = full[i];
    return Weight(rot.begin() + 1, rot.end());
}

Weight conjWeight(const Weight& w) { return Weight(w.rbegin(), w.rend()); }

std::map<Weight, Int> tensorLR(int n, const Weight& a, const Weight& b) {
    // Grow the partition of a by horizontal strips labelled by the rows of b,
    // subject to the lattice-word condition: after placing label j, the count
    // of j's in rows <= i may not exceed the count of (j-1)'s in rows <= i-1.
    auto pa = partitionCoords(n, a);
    auto pb = partitionCoords(n, b);  // rows of b's partition are the label contents
    std::vector<long long> mu(pb.begin(), pb.end());

    std::map<Weight, Int> result;
    struct Frame {
        std::vector<long long> shape;
        std::vector<long long> prevCounts;  // boxes of the previous label per row
    };
    std::function<void(int, const Frame&)> place = [&](int labelRow, const Frame& f) {
        if (labelRow == n) {
            result[weightFromPartition(n, f.shape)] += 1;
            return;
        }
        long long need = mu[labelRow];
        std::vector<long long> add(n, 0);
        // cumPrev tracks cumulative previous-label boxes through row-1;
        // cumCur tracks cumulative current-label boxes through the current row.
        std::function<void(int, long long, long long)> choose = [&](int row, long long remaining,
                                                                    long long cumPrevAbove) {
            if (row == n) {
                if (remaining != 0) return;
                Frame nf;
                nf.shape = f.shape;
                for (int r = 0; r < n; ++r) nf.shape[r] += add[r];
                nf.prevCounts = add;
                place(labelRow + 1, nf);
                return;
            }
            long long hi = remaining;
            if (row > 0) hi = std::min(hi, f.shape[row - 1] - f.shape[row]);  // horizontal strip
            long long placedSoFar = need - remaining;
            hi = std::min(hi, cumPrevAbove - placedSoFar);  // lattice condition
            if (hi < 0) hi = -1;
            for (long long c = hi; c >= 0; --c) {
                add[row] = c;
                choose(row + 1, remaining - c, cumPrevAbove + f.prevCounts[row]);
            }
            add[row] = 0;
        };
        choose(0, need, labelRow == 0 ? (1LL << 40) : 0);
    };

    Frame init;
    init.shape = pa;
    init.prevCounts.assign(n, 1LL << 40);  // label 0 has no predecessor
    place(0, init);
    return result;
}

std::pair<int, Weight> affineFold(int n, int k, const Weight& w) {
    std::vector<long long> lab(n);
    long long sum = 0;
    for (int i = 0; i < n - 1; ++i) {
        lab[i + 1] = w[i];
        sum += w[i];
    }
    lab[0] = k - sum;
    int sign = 1;
    auto applyRefl = [&](int i) {
        // Shifted reflection s_i . lambda for affine A_{n-1}.
        long long c = lab[i] + 1;
        if (n == 2) {
            int o = 1 - i;
            lab[i] -= 2 * c;
            lab[o] += 2 * c;
        } else {
            lab[i] -= 2 * c;
            lab[(i + 1) % n] += c;
            lab[(i + n - 1) % n] += c;
        }
        sign = -sign;
    };
    for (int steps = 0; steps < 1000000; ++steps) {
        int neg = -1;
        for (int i = 0; i < n; ++i)
            if (lab[i] < 0) { neg = i; break; }
        if (neg < 0) {
            Weight out(n - 1);
            for (int i = 0; i < n - 1; ++i) out[i] = static_cast<int>(lab[i + 1]);
            return {sign, out};
        }
        if (lab[neg] == -1) return {0, Weight(n - 1, 0)};
        applyRefl(neg);
    }
    throw std::logic_error("affineFold: did not terminate");
}

std::map<Weight, Int> fuseKW(int n, int k, const Weight& a, const Weight& b) {
    std::map<Weight, Int> out;
    for (const auto& [nu, mult] : tensorLR(n, a, b)) {
        auto [sign, img] = affineFold(n, k, nu);
        if (sign == 0) continue;
        Int& slot = out[img];
        slot += Int(sign) * mult;
        if (slot == 0) out.erase(img);
    }
    for (const auto& [nu, mult] : out)
        if (mult < 0) throw VerificationError("fuseKW produced a negative coefficient");
    return out;
}

std::map<std::vector<int>, Int> weightSystem(int n, const Weight& w) {
    int r = n - 1;
    std::vector<std::vector<int>> posRoots;
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            std::vector<int> root(r, 0);
            for (int t = i; t <= j; ++t) {
                root[t] += 2;
                if (t - 1 >= 0) root[t - 1] -= 1;
                if (t + 1 < r) root[t + 1] -= 1;
            }
            posRoots.push_back(root);
        }
    auto epsCoords = [&](const std::vector<int>& lam) {
        std::vector<Rat> p(n, Rat(0));
        for (int i = n - 2; i >= 0; --i) p[i] = p[i + 1] + Rat(lam[i]);
        Rat avg(0);
        for (auto& v : p) avg += v;
        avg /= n;
        for (auto& v : p) v = v - avg;
        return p;
    };
    auto inner = [&](const std::vector<int>& x, const std::vector<int>& y) {
        auto a = epsCoords(x), b = epsCoords(y);
        Rat s(0);
        for (int i = 0; i < n; ++i) s += a[i] * b[i];
        return s;
    };

    // Weight set: mu is a weight of V(w) iff its dominant Weyl conjugate mu+
    // satisfies w - mu+ in the nonnegative root cone. Enumerate by BFS under
    // mu -> mu - alpha_i with that validity filter (weight sets are saturated
    // and connected, so this reaches everything).
    auto epsInt = [&](const std::vector<int>& lam) {
        std::vector<long long> p(n, 0);
        for (int i = n - 2; i >= 0; --i) p[i] = p[i + 1] + lam[i];
        return p;
    };
    auto isWeight = [&](const std::vector<int>& lam) {
        auto e = epsInt(lam);
        std::sort(e.begin(), e.end(), std::greater<long long>());
        auto ew = epsInt(w);
        // Align totals: shift e so sums match (eps-coords are defined mod (1,..,1)).
        long long se = 0, sw = 0;
        for (auto v : e) se += v;
        for (auto v : ew) sw += v;
        if ((sw - se) % n != 0) return false;
        long long shift = (sw - se) / n;
        long long run = 0;
        for (int i = 0; i < n; ++i) {
            run += ew[i] - (e[i] + shift);
            if (run < 0) return false;
        }
        return run == 0;
    };
    std::map<std::vector<int>, int> depth;
    std::vector<std::vector<int>> order{w};
    depth[w] = 0;
    size_t head = 0;
    while (head < order.size()) {
        auto lam = order[head];
        int d = depth[lam];
        ++head;
        for (int i = 0; i < r; ++i) {
            std::vector<int> nxt = lam;
            nxt[i] -= 2;
            if (i - 1 >= 0) nxt[i - 1] += 1;
            if (i + 1 < r) nxt[i + 1] += 1;
            if (!depth.count(nxt) && isWeight(nxt)) {
                depth[nxt] = d + 1;
                order.push_back(nxt);
            }
        }
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](const auto& x, const auto& y) { return depth[x] < depth[y]; });

    std::vector<int> rho(r, 1);
    Rat norm_wrho = inner(w, w) + 2 * inner(w, rho);
    std::map<std::vector<int>, Int> mult;
    mult[w] = 1;
    for (size_t idx = 1; idx < order.size(); ++idx) {
        const auto& lam = order[idx];
        Rat denom = norm_wrho - (inner(lam, lam) + 2 * inner(lam, rho));
        Rat rhs(0);
        for (const auto& alpha : posRoots) {
            for (int t = 1;; ++t) {
                std::vector<int> cur(r);
                for (int c = 0; c < r; ++c) cur[c] = lam[c] + t * alpha[c];
                if (!depth.count(cur)) break;
                auto it = mult.find(cur);
                if (it == mult.end()) continue;
                rhs += inner(cur, alpha) * Rat(it->second);
            }
        }
        rhs *= 2;
        if (denom == 0) continue;
        Rat m = rhs / denom;
        if (!isInteger(m)) throw std::logic_error("Freudenthal produced a non-integer multiplicity");
        if (m != 0) mult[lam] = ratNum(m);
    }
    return mult;
}

}  // namespace fwb
