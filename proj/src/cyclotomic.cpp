#include "fwb/cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace fwb {

namespace {

// Reduction data for a fixed conductor: phi(N), Phi_N, and x^j mod Phi_N for
// phi(N) <= j < N.
struct FieldData {
    long long N = 1;
    long long phi = 1;
    std::vector<Int> poly;                    // Phi_N, length phi+1, monic
    std::vector<std::vector<Int>> powTable;   // powTable[j - phi] = x^j mod Phi_N
};

// x^n - 1 divided exactly by d(x); both monic.
std::vector<Int> divideExact(std::vector<Int> num, const std::vector<Int>& den) {
    long long dn = static_cast<long long>(num.size()) - 1;
    long long dd = static_cast<long long>(den.size()) - 1;
    std::vector<Int> q(dn - dd + 1);
    for (long long i = dn; i >= dd; --i) {
        Int c = num[i];
        if (c == 0) continue;
        q[i - dd] = c;
        for (long long j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    for (const Int& c : num)
        if (c != 0) throw std::logic_error("cyclotomic polynomial division not exact");
    return q;
}

std::vector<Int> computeCycPoly(long long N, const std::function<const std::vector<Int>&(long long)>& get) {
    if (N == 1) return {Int(-1), Int(1)};
    std::vector<Int> num(N + 1);
    num[0] = -1;
    num[N] = 1;
    for (long long d = 1; d < N; ++d)
        if (N % d == 0) num = divideExact(std::move(num), get(d));
    return num;
}

std::mutex g_fieldsMutex;
std::unordered_map<long long, std::shared_ptr<const FieldData>> g_fields;
std::unordered_map<long long, std::vector<Int>> g_polys;

const std::vector<Int>& cycPolyLocked(long long N) {
    auto it = g_polys.find(N);
    if (it != g_polys.end()) return it->second;
    std::function<const std::vector<Int>&(long long)> get = [&](long long d) -> const std::vector<Int>& {
        return cycPolyLocked(d);
    };
    auto poly = computeCycPoly(N, get);
    return g_polys.emplace(N, std::move(poly)).first->second;
}

std::shared_ptr<const FieldData> fieldData(long long N) {
    std::lock_guard<std::mutex> lock(g_fieldsMutex);
    auto it = g_fields.find(N);
    if (it != g_fields.end()) return it->second;
    auto fd = std::make_shared<FieldData>();
    fd->N = N;
    fd->poly = cycPolyLocked(N);
    fd->phi = static_cast<long long>(fd->poly.size()) - 1;
    fd->powTable.resize(N - fd->phi);
    // x^phi = -(low part of Phi); then x^{j+1} = shift(x^j) reduced once.
    std::vector<Int> cur(fd->phi);
    for (long long i = 0; i < fd->phi; ++i) cur[i] = -fd->poly[i];
    for (long long j = fd->phi; j < N; ++j) {
        fd->powTable[j - fd->phi] = cur;
        if (j + 1 == N) break;
        std::vector<Int> nxt(fd->phi);
        Int top = cur[fd->phi - 1];
        for (long long i = fd->phi - 1; i >= 1; --i) nxt[i] = cur[i - 1];
        nxt[0] = 0;
        if (top != 0)
            for (long long i = 0; i < fd->phi; ++i) nxt[i] -= top * fd->poly[i];
        cur = std::move(nxt);
    }
    g_fields.emplace(N, fd);
    return fd;
}

}  // namespace

long long cycPhi(long long N) { return eulerPhi(N); }

const std::vector<Int>& cyclotomicPolynomial(long long N) {
    std::lock_guard<std::mutex> lock(g_fieldsMutex);
    return cycPolyLocked(N);
}

void Cyc::canonicalize() {
    if (scale_ == 0) {
        cond_ = 1;
        coef_.clear();
        scale_ = 0;
        return;
    }
    Int g = 0;
    bool allZero = true;
    for (const Int& c : coef_) {
        if (c != 0) allZero = false;
        g = gcdI(g, c);
    }
    if (allZero) {
        cond_ = 1;
        coef_.clear();
        scale_ = 0;
        return;
    }
    // Make the vector primitive with positive leading (lowest-index) entry.
    long long lead = 0;
    while (coef_[lead] == 0) ++lead;
    if (coef_[lead] < 0) g = -g;
    if (g != 1) {
        for (Int& c : coef_) c /= g;
        scale_ *= Rat(g);
    }
    if (scale_ == 0) {
        cond_ = 1;
        coef_.clear();
        return;
    }
    // Cheap descent: purely rational values drop to conductor 1.
    bool rationalOnly = true;
    for (size_t i = 1; i < coef_.size(); ++i)
        if (coef_[i] != 0) { rationalOnly = false; break; }
    if (rationalOnly && cond_ != 1) {
        scale_ *= Rat(coef_[0]);
        cond_ = 1;
        coef_.assign(1, Int(1));
    }
}

Cyc Cyc::fromDense(long long N, std::vector<Int> full, const Rat& scale) {
    auto fd = fieldData(N);
    std::vector<Int> red(fd->phi);
    for (long long j = 0; j < std::min<long long>(fd->phi, N); ++j) red[j] = full[j];
    for (long long j = fd->phi; j < N; ++j) {
        if (full[j] == 0) continue;
        const auto& row = fd->powTable[j - fd->phi];
        for (long long i = 0; i < fd->phi; ++i) red[i] += full[j] * row[i];
    }
    Cyc out;
    out.cond_ = N;
    out.scale_ = scale;
    out.coef_ = std::move(red);
    out.canonicalize();
    return out;
}

Cyc Cyc::fromRational(const Rat& r) {
    Cyc out;
    if (r == 0) return out;
    out.cond_ = 1;
    out.scale_ = r;
    out.coef_.assign(1, Int(1));
    return out;
}

Cyc Cyc::rootOfUnity(long long N, long long k) {
    if (N < 1) throw std::invalid_argument("rootOfUnity: N must be >= 1");
    k = modNorm(k, N);
    long long g = std::gcd(k, N);
    if (g > 1) { N /= g; k /= g; }
    if (N == 1) return one();
    if (N == 2) return fromRational(Rat(-1));
    Rat sign(1);
    if (N % 4 == 2) {
        // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m.
        long long m = N / 2;
        long long k2 = modNorm(k * ((m + 1) / 2), m);
        if (k % 2 == 1) {
            sign = -1;
            N = m;
            k = k2;
        } else {
            N = m;
            k = modNorm(k / 2, m);
        }
        if (N == 1) return fromRational(sign);
    }
    auto fd = fieldData(N);
    Cyc out;
    out.cond_ = N;
    out.scale_ = sign;
    if (k < fd->phi) {
        out.coef_.assign(fd->phi, Int(0));
        out.coef_[k] = 1;
    } else {
        out.coef_ = fd->powTable[k - fd->phi];
    }
    out.canonicalize();
    return out;
}

Rat Cyc::coeff(long long k) const {
    if (isZero()) return Rat(0);
    if (k < 0 || k >= static_cast<long long>(coef_.size())) return Rat(0);
    return scale_ * Rat(coef_[k]);
}

Cyc Cyc::embedded(long long M) const {
    if (isZero() || cond_ == M) return *this;
    if (M % cond_ != 0) throw std::invalid_argument("embedded: target conductor not a multiple");
    long long step = M / cond_;
    CycBuilder b(M);
    for (long long j = 0; j < static_cast<long long>(coef_.size()); ++j)
        if (coef_[j] != 0) b.add(j * step, coef_[j]);
    return b.build(scale_);
}

Cyc Cyc::operator+(const Cyc& o) const {
    if (isZero()) return o;
    if (o.isZero()) return *this;
    long long L = lcmLL(cond_, o.cond_);
    Rat g = ratGcd(scale_, o.scale_);
    Int a = ratNum(Rat(scale_ / g)), b = ratNum(Rat(o.scale_ / g));
    if (cond_ == o.cond_) {
        Cyc out;
        out.cond_ = cond_;
        out.scale_ = g;
        out.coef_.resize(coef_.size());
        for (size_t i = 0; i < coef_.size(); ++i) out.coef_[i] = a * coef_[i] + b * o.coef_[i];
        out.canonicalize();
        return out;
    }
    std::vector<Int> full(L);
    long long s1 = L / cond_, s2 = L / o.cond_;
    for (size_t j = 0; j < coef_.size(); ++j)
        if (coef_[j] != 0) full[static_cast<long long>(j) * s1] += a * coef_[j];
    for (size_t j = 0; j < o.coef_.size(); ++j)
        if (o.coef_[j] != 0) full[static_cast<long long>(j) * s2] += b * o.coef_[j];
    return fromDense(L, std::move(full), g);
}

Cyc Cyc::operator-() const {
    Cyc out = *this;
    out.scale_ = -out.scale_;
    return out;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
    if (isZero() || o.isZero()) return zero();
    if (cond_ == 1) return o.scaledBy(scale_ * Rat(coef_[0]));
    if (o.cond_ == 1) return scaledBy(o.scale_ * Rat(o.coef_[0]));
    long long L = lcmLL(cond_, o.cond_);
    long long s1 = L / cond_, s2 = L / o.cond_;
    // Convolution over exponents, folded mod L, then table-reduced.
    std::vector<Int> full(L);
    const auto& A = coef_;
    const auto& B = o.coef_;
    for (size_t i = 0; i < A.size(); ++i) {
        if (A[i] == 0) continue;
        long long ei = static_cast<long long>(i) * s1;
        for (size_t j = 0; j < B.size(); ++j) {
            if (B[j] == 0) continue;
            long long e = ei + static_cast<long long>(j) * s2;
            if (e >= L) e -= L;
            full[e] += A[i] * B[j];
        }
    }
    return fromDense(L, std::move(full), scale_ * o.scale_);
}

Cyc Cyc::scaledBy(const Rat& r) const {
    if (r == 0 || isZero()) return zero();
    Cyc out = *this;
    out.scale_ *= r;
    return out;
}

Cyc Cyc::timesRoot(long long N, long long k) const {
    return *this * rootOfUnity(N, k);
}

Cyc Cyc::galois(long long a) const {
    if (isZero()) return zero();
    if (cond_ == 1) return *this;
    a = modNorm(a, cond_);
    if (std::gcd(a, cond_) != 1) throw std::invalid_argument("galois: exponent not coprime to conductor");
    if (a == 1) return *this;
    std::vector<Int> full(cond_);
    for (long long j = 0; j < static_cast<long long>(coef_.size()); ++j)
        if (coef_[j] != 0) full[modNorm(j * a, cond_)] += coef_[j];
    return fromDense(cond_, std::move(full), scale_);
}

bool Cyc::operator==(const Cyc& o) const {
    if (cond_ == o.cond_) return scale_ == o.scale_ && coef_ == o.coef_;
    return (*this - o).isZero();
}

std::optional<Rat> Cyc::asRational() const {
    if (isZero()) return Rat(0);
    if (cond_ == 1) return scale_ * Rat(coef_[0]);
    for (size_t i = 1; i < coef_.size(); ++i)
        if (coef_[i] != 0) return std::nullopt;
    return scale_ * Rat(coef_[0]);
}

Cyc Cyc::inverse() const {
    if (isZero()) throw DivisionByZero();
    if (cond_ == 1) return fromRational(Rat(1) / (scale_ * Rat(coef_[0])));
    // Extended Euclid in Q[x] against Phi_N.
    const auto& phi = cyclotomicPolynomial(cond_);
    std::vector<Rat> r0(phi.begin(), phi.end());
    std::vector<Rat> r1(coef_.size());
    for (size_t i = 0; i < coef_.size(); ++i) r1[i] = Rat(coef_[i]);
    auto deg = [](const std::vector<Rat>& p) -> long long {
        for (long long i = static_cast<long long>(p.size()) - 1; i >= 0; --i)
            if (p[i] != 0) return i;
        return -1;
    };
    std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};  // coefficients of the input polynomial
    while (true) {
        long long d1 = deg(r1);
        if (d1 < 0) throw std::logic_error("inverse: polynomial not invertible mod Phi_N");
        if (d1 == 0) break;
        long long d0 = deg(r0);
        // r0 -= q * r1, s0 -= q * s1, then swap.
        std::vector<Rat> q(d0 - d1 + 1, Rat(0));
        std::vector<Rat> rem = r0;
        for (long long i = d0; i >= d1; --i) {
            if (rem[i] == 0) continue;
            Rat c = rem[i] / r1[d1];
            q[i - d1] = c;
            for (long long j = 0; j <= d1; ++j) rem[i - d1 + j] -= c * r1[j];
        }
        std::vector<Rat> snew(std::max(s0.size(), q.size() + s1.size() - 1), Rat(0));
        for (size_t i = 0; i < s0.size(); ++i) snew[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) snew[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(snew);
    }
    Rat unit = r1[deg(r1)];
    // inverse = s1 / unit / scale_
    long long ph = cycPhi(cond_);
    std::vector<Rat> inv(s1.size());
    for (size_t i = 0; i < s1.size(); ++i) inv[i] = s1[i] / unit;
    // Assemble as Cyc: clear denominators.
    Int den = 1;
    for (const Rat& c : inv) den = lcmI(den, ratDen(c));
    CycBuilder b(cond_);
    for (long long i = 0; i < static_cast<long long>(inv.size()) && i < cond_; ++i) {
        if (inv[i] == 0) continue;
        b.add(i, ratNum(inv[i]) * (den / ratDen(inv[i])));
    }
    (void)ph;
    return b.build(Rat(1, 1) / (scale_ * Rat(den)));
}

Cyc Cyc::operator/(const Cyc& o) const {
    if (o.isZero()) throw DivisionByZero();
    if (isZero()) return zero();
    auto r = o.asRational();
    if (r) return scaledBy(Rat(1) / *r);
    return *this * o.inverse();
}

Cyc Cyc::sqrtOfInt(long long r) {
    if (r < 0) throw std::invalid_argument("sqrtOfInt: negative radicand");
    if (r == 0) return zero();
    long long sq = 1, rest = 1;
    for (long long p = 2; p * p <= r; ++p) {
        while (r % (p * p) == 0) { sq *= p; r /= p * p; }
        if (r % p == 0) { rest *= p; r /= p; }
    }
    if (r > 1) rest *= r;
    Cyc out = fromInt(sq);
    long long rem = rest;
    if (rem % 2 == 0) {
        // sqrt(2) = zeta_8 + zeta_8^{-1}
        out = out * (rootOfUnity(8, 1) + rootOfUnity(8, 7));
        rem /= 2;
    }
    for (long long p : primeFactors(rem)) {
        // Gauss sum: sum of legendre(a,p) zeta_p^a equals sqrt(p) or i sqrt(p).
        CycBuilder b(p);
        for (long long a = 1; a < p; ++a) {
            long long ls = 1, e = (p - 1) / 2, base = a % p, acc = 1;
            while (e) {
                if (e & 1) acc = (acc * base) % p;
                base = (base * base) % p;
                e >>= 1;
            }
            ls = (acc == 1) ? 1 : -1;
            b.add(a, Int(ls));
        }
        Cyc gauss = b.build();
        if (p % 4 == 1) {
            out = out * gauss;
        } else {
            // gauss = i sqrt(p), so sqrt(p) = -i * gauss.
            out = out * gauss * rootOfUnity(4, 3);
        }
    }
    return out;
}

Cyc Cyc::normalized() const {
    if (isZero() || cond_ == 1) return *this;
    Cyc cur = *this;
    bool progress = true;
    while (progress && cur.cond_ > 1) {
        progress = false;
        for (long long p : primeFactors(cur.cond_)) {
            long long M = cur.cond_ / p;
            // Invariance under Gal(Q(zeta_N)/Q(zeta_M)) = {a == 1 mod M}.
            bool invariant = true;
            for (long long a = 1 + M; a < cur.cond_ && invariant; a += M)
                if (std::gcd(a, cur.cond_) == 1 && !(cur.galois(a) == cur)) invariant = false;
            if (!invariant) continue;
            // Solve embed(y) = cur for y in Q(zeta_M) by Gaussian elimination.
            long long phiM = cycPhi(M);
            long long phiN = cycPhi(cur.cond_);
            std::vector<std::vector<Rat>> cols(phiM);
            for (long long i = 0; i < phiM; ++i) {
                Cyc img = rootOfUnity(cur.cond_, i * (cur.cond_ / M));
                img = img.embedded(cur.cond_);
                cols[i].assign(phiN, Rat(0));
                for (long long j = 0; j < static_cast<long long>(img.coef_.size()); ++j)
                    cols[i][j] = img.scale_ * Rat(img.coef_[j]);
            }
            std::vector<Rat> rhs(phiN, Rat(0));
            for (long long j = 0; j < static_cast<long long>(cur.coef_.size()); ++j)
                rhs[j] = cur.scale_ * Rat(cur.coef_[j]);
            // Augmented elimination over rows.
            std::vector<long long> pivotRow(phiM, -1);
            std::vector<std::vector<Rat>> mat(phiN, std::vector<Rat>(phiM + 1, Rat(0)));
            for (long long rix = 0; rix < phiN; ++rix) {
                for (long long cix = 0; cix < phiM; ++cix) mat[rix][cix] = cols[cix][rix];
                mat[rix][phiM] = rhs[rix];
            }
            long long rank = 0;
            for (long long cix = 0; cix < phiM && rank < phiN; ++cix) {
                long long sel = -1;
                for (long long rix = rank; rix < phiN; ++rix)
                    if (mat[rix][cix] != 0) { sel = rix; break; }
                if (sel < 0) continue;
                std::swap(mat[sel], mat[rank]);
                Rat inv = Rat(1) / mat[rank][cix];
                for (auto& v : mat[rank]) v *= inv;
                for (long long rix = 0; rix < phiN; ++rix) {
                    if (rix == rank || mat[rix][cix] == 0) continue;
                    Rat f = mat[rix][cix];
                    for (long long j = cix; j <= phiM; ++j) mat[rix][j] -= f * mat[rank][j];
                }
                pivotRow[cix] = rank;
                ++rank;
            }
            bool solvable = true;
            for (long long rix = rank; rix < phiN; ++rix)
                if (mat[rix][phiM] != 0) solvable = false;
            if (!solvable) continue;
            Int den = 1;
            std::vector<Rat> y(phiM, Rat(0));
            for (long long cix = 0; cix < phiM; ++cix)
                if (pivotRow[cix] >= 0) y[cix] = mat[pivotRow[cix]][phiM];
            for (const Rat& c : y) den = lcmI(den, ratDen(c));
            CycBuilder b(M);
            for (long long i = 0; i < phiM; ++i)
                if (y[i] != 0) b.add(i, ratNum(y[i]) * (den / ratDen(y[i])));
            cur = b.build(Rat(1, 1) / Rat(den));
            progress = true;
            break;
        }
    }
    return cur;
}

std::string Cyc::toString() const {
    if (isZero()) return "0";
    std::ostringstream os;
    auto rat = asRational();
    if (rat) {
        os << *rat;
        return os.str();
    }
    bool first = true;
    for (long long k = 0; k < static_cast<long long>(coef_.size()); ++k) {
        Rat c = scale_ * Rat(coef_[k]);
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rat a = c < 0 ? Rat(-c) : c;
        if (k == 0) {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            os << "z" << cond_;
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

bool Cyc::lexLess(const Cyc& o) const {
    if (cond_ != o.cond_) return cond_ < o.cond_;
    if (scale_ != o.scale_) return scale_ < o.scale_;
    return coef_ < o.coef_;
}

}  // namespace fwb
