#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fwb/numeric.hpp"

namespace fwb {

/// Exact element of a cyclotomic field Q(zeta_N), stored as a rational scale
/// times a primitive integer vector over the power basis {zeta_N^k}_{0<=k<phi(N)},
/// reduced modulo the N-th cyclotomic polynomial. The representation is
/// canonical for a fixed conductor; equality across conductors embeds into the
/// lcm field, and normalized() descends to the minimal conductor.
class Cyc {
public:
    Cyc() : cond_(1), scale_(0) {}

    static Cyc zero() { return Cyc(); }
    static Cyc one() { return fromRational(Rat(1)); }
    static Cyc fromRational(const Rat& r);
    static Cyc fromInt(long long v) { return fromRational(Rat(v)); }

    /// zeta_N^k in canonical reduced form.
    static Cyc rootOfUnity(long long N, long long k);

    /// Exact embedding of sqrt(r) for a positive integer r, via Gauss sums.
    static Cyc sqrtOfInt(long long r);

    long long conductor() const { return cond_; }
    bool isZero() const { return scale_ == 0; }

    /// Rational coefficient of zeta^k in the reduced power-basis expansion.
    Rat coeff(long long k) const;

    Cyc operator+(const Cyc& o) const;
    Cyc operator-(const Cyc& o) const;
    Cyc operator-() const;
    Cyc operator*(const Cyc& o) const;
    Cyc operator/(const Cyc& o) const;
    Cyc& operator+=(const Cyc& o) { *this = *this + o; return *this; }
    Cyc& operator-=(const Cyc& o) { *this = *this - o; return *this; }
    Cyc& operator*=(const Cyc& o) { *this = *this * o; return *this; }

    Cyc scaledBy(const Rat& r) const;
    Cyc inverse() const;

    /// Galois action zeta_N -> zeta_N^a for gcd(a, N) = 1.
    Cyc galois(long long a) const;
    Cyc conj() const { return galois(cond_ > 1 ? cond_ - 1 : 1); }

    bool operator==(const Cyc& o) const;
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    bool isReal() const { return conj() == *this; }
    std::optional<Rat> asRational() const;

    /// Rewrites with the smallest conductor M such that the value lies in Q(zeta_M).
    Cyc normalized() const;

    /// Multiply by a pure root of unity zeta_{cond}^k without constructing it.
    Cyc timesRoot(long long N, long long k) const;

    std::string toString() const;

    /// Structural ordering (conductor, scale, coefficients); used only to make
    /// containers and output deterministic.
    bool lexLess(const Cyc& o) const;

    // Internal access for numeric certificates and serialization.
    const std::vector<Int>& rawCoeffs() const { return coef_; }
    const Rat& rawScale() const { return scale_; }

    /// Re-expresses the value in Q(zeta_M) for a multiple M of the conductor.
    Cyc embedded(long long M) const;

private:
    long long cond_;
    Rat scale_;
    std::vector<Int> coef_;  // size phi(cond_) when nonzero, primitive, leading-nonzero > 0

    void canonicalize();
    static Cyc fromDense(long long N, std::vector<Int> full, const Rat& scale);
    friend struct CycBuilder;
};

/// Accumulates integer multiples of roots of unity of a fixed conductor and
/// reduces once; the fast path for Weyl sums and S-matrix assembly.
struct CycBuilder {
    long long N;
    std::vector<Int> full;  // exponent-indexed, length N
    explicit CycBuilder(long long conductor) : N(conductor), full(conductor) {}
    void add(long long exponent, const Int& c) { full[modNorm(exponent, N)] += c; }
    Cyc build(const Rat& scale = Rat(1)) const { return Cyc::fromDense(N, full, scale); }
};

long long cycPhi(long long N);

/// Coefficients of the N-th cyclotomic polynomial (degree phi(N), monic).
const std::vector<Int>& cyclotomicPolynomial(long long N);

}  // namespace fwb
