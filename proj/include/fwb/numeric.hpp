#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace fwb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when a configured search or conductor cap is exceeded (CLI exit 2).
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a verification contract fails (CLI exit 1).
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("division by zero") {}
};

inline Int gcdI(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcmI(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline long long toLL(const Int& v) { return v.convert_to<long long>(); }

inline Rat makeRat(const Int& num, const Int& den) {
    if (den == 0) throw DivisionByZero();
    return Rat(num, den);
}

inline Int ratNum(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int ratDen(const Rat& r) { return boost::multiprecision::denominator(r); }

// gcd on rationals: gcd(a/b, c/d) = gcd(ad, cb)/(bd); the result divides both
// arguments with integer quotients.
inline Rat ratGcd(const Rat& a, const Rat& b) {
    if (a == 0) return b < 0 ? Rat(-b) : b;
    if (b == 0) return a < 0 ? Rat(-a) : a;
    Int n = gcdI(ratNum(a) * ratDen(b), ratNum(b) * ratDen(a));
    Int d = ratDen(a) * ratDen(b);
    Rat g(n, d);
    return g < 0 ? Rat(-g) : g;
}

inline bool isInteger(const Rat& r) { return ratDen(r) == 1; }

// Floor of a rational.
inline Int ratFloor(const Rat& r) {
    Int n = ratNum(r), d = ratDen(r);
    Int q = n / d;
    if (n % d != 0 && (n < 0)) q -= 1;
    return q;
}

inline long long modNorm(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

inline long long gcdLL(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }
inline long long lcmLL(long long a, long long b) { return std::lcm(a, b); }

inline long long eulerPhi(long long n) {
    long long result = n, m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

inline std::vector<long long> primeFactors(long long n) {
    std::vector<long long> ps;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Deterministic xorshift generator used by property-style tests and sampled
// verifications; seeded by RunConfig.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed = 12345) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    long long below(long long n) { return static_cast<long long>(next() % static_cast<std::uint64_t>(n)); }
};

}  // namespace fwb
