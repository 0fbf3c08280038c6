#include "fwb/certificates.hpp"

#include <stdexcept>

namespace fwb {

namespace {

// pi to 45 digits, as a certified rational enclosure.
const Rat PI_LO = Rat(Int("314159265358979323846264338327950288419716939"),
                      Int("100000000000000000000000000000000000000000000"));
const Rat PI_HI = Rat(Int("314159265358979323846264338327950288419716940"),
                      Int("100000000000000000000000000000000000000000000"));

// Round a rational outward to denominator 2^bits to keep arithmetic small.
Rat roundDown(const Rat& r, int bits) {
    Int scale = Int(1) << bits;
    return Rat(ratFloor(r * Rat(scale)), scale);
}
Rat roundUp(const Rat& r, int bits) {
    Int scale = Int(1) << bits;
    return Rat(-ratFloor(-r * Rat(scale)), scale);
}
RatInterval outward(const RatInterval& iv, int bits) {
    return {roundDown(iv.lo, bits), roundUp(iv.hi, bits)};
}

// cos enclosure by Taylor series with alternating-series remainder, for |x| <= 1.
RatInterval cosSmall(const RatInterval& x, int terms) {
    // cos is even and decreasing on [0,1]; evaluate on |x| bound.
    Rat b = std::max(x.hi < 0 ? Rat(-x.hi) : x.hi, x.lo < 0 ? Rat(-x.lo) : x.lo);
    Rat lo2 = 0;  // lower bound of x^2 over interval
    if (x.lo > 0) lo2 = x.lo * x.lo;
    else if (x.hi < 0) lo2 = x.hi * x.hi;
    Rat hi2 = b * b;
    // cos(x) in [cosAt(hi2), cosAt(lo2)] since cos(sqrt(u)) decreases in u on [0,1].
    auto cosAt = [&](const Rat& u, bool lower) {
        Rat sum = 1, term = 1;
        for (int k = 1; k <= terms; ++k) {
            term *= u / Rat(Int(2 * k - 1) * Int(2 * k));
            if (k % 2 == 1) sum -= term;
            else sum += term;
        }
        // Next term bounds the error (alternating, decreasing for u <= 1).
        Rat err = term * u / Rat(Int(2 * terms + 1) * Int(2 * terms + 2));
        return lower ? Rat(sum - err) : Rat(sum + err);
    };
    return {cosAt(hi2, true), cosAt(lo2, false)};
}

}  // namespace

RatInterval RatInterval::operator*(const RatInterval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
}

RatInterval cosTurn(const Rat& t, int prec) {
    // Reduce t to [0, 1) and exploit symmetry to get an argument in [0, 1/4]:
    // cos(2 pi t) with t in [0,1/4] computed directly; other quadrants by
    // reflection. The reduced angle 2 pi t is then at most pi/2 < 1.6; halve
    // once more so the Taylor bound |x| <= 1 holds: cos(x) = 2cos^2(x/2) - 1.
    Rat tt = t - Rat(ratFloor(t));
    int sign = 1;
    if (tt > Rat(1, 2)) tt = Rat(1) - tt;
    if (tt > Rat(1, 4)) { tt = Rat(1, 2) - tt; sign = -1; }
    // angle = 2 pi tt in [0, pi/2]; half-angle h = pi tt in [0, pi/4] <= 0.79.
    RatInterval pi(PI_LO, PI_HI);
    RatInterval h = pi.scaled(tt);
    int terms = std::max(4, prec / 8 + 4);
    RatInterval ch = cosSmall(outward(h, prec + 16), terms);
    RatInterval cosv = ch * ch;
    cosv = RatInterval{cosv.lo * 2 - 1, cosv.hi * 2 - 1};
    cosv = outward(cosv, prec + 8);
    if (sign < 0) cosv = RatInterval{-cosv.hi, -cosv.lo};
    return cosv;
}

RatInterval realPartInterval(const Cyc& v, int prec) {
    if (v.isZero()) return {};
    long long N = v.conductor();
    RatInterval acc;
    const auto& coefs = v.rawCoeffs();
    for (long long k = 0; k < static_cast<long long>(coefs.size()); ++k) {
        if (coefs[k] == 0) continue;
        RatInterval c = cosTurn(Rat(k, N), prec).scaled(Rat(coefs[k]));
        acc = acc + c;
    }
    return outward(acc.scaled(v.rawScale()), prec);
}

int signOfReal(const Cyc& v) {
    if (v.isZero()) return 0;
    if (!v.isReal()) throw std::invalid_argument("signOfReal: value is not real");
    auto rat = v.asRational();
    if (rat) return *rat > 0 ? 1 : (*rat < 0 ? -1 : 0);
    for (int prec = 32; prec <= 4096; prec *= 2) {
        RatInterval iv = realPartInterval(v, prec);
        if (iv.positive()) return 1;
        if (iv.negative()) return -1;
    }
    throw std::logic_error("signOfReal: could not separate from zero");
}

Int floorOfReal(const Cyc& v) {
    auto rat = v.asRational();
    if (rat) return ratFloor(*rat);
    if (!v.isReal()) throw std::invalid_argument("floorOfReal: value is not real");
    for (int prec = 32; prec <= 4096; prec *= 2) {
        RatInterval iv = realPartInterval(v, prec);
        Int fl = ratFloor(iv.lo), fh = ratFloor(iv.hi);
        if (fl == fh) return fl;
        // The enclosure may straddle an integer boundary: if v equals that
        // integer exactly we can decide without further refinement.
        if (fh == fl + 1) {
            Cyc diff = v - Cyc::fromRational(Rat(fh));
            if (diff.isZero()) return fh;
            int s = 0;
            RatInterval div = realPartInterval(diff, prec);
            if (div.positive()) s = 1;
            else if (div.negative()) s = -1;
            if (s > 0) return fh;
            if (s < 0) return fl;
        }
    }
    throw std::logic_error("floorOfReal: could not resolve");
}

}  // namespace fwb
