#pragma once

#include "fwb/cyclotomic.hpp"

namespace fwb {

/// Rational interval; endpoints are exact rationals, so enclosure arithmetic
/// certifies signs without floating point.
struct RatInterval {
    Rat lo, hi;
    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}
    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    RatInterval operator*(const RatInterval& o) const;
    RatInterval scaled(const Rat& r) const { return r >= 0 ? RatInterval{lo * r, hi * r} : RatInterval{hi * r, lo * r}; }
    bool positive() const { return lo > 0; }
    bool negative() const { return hi < 0; }
};

/// Certified enclosure of cos(2*pi*t) for rational t, tightened as `prec` grows.
RatInterval cosTurn(const Rat& t, int prec);

/// Certified enclosure of the real part of a cyclotomic number.
RatInterval realPartInterval(const Cyc& v, int prec);

/// Exact sign of a real cyclotomic number (-1, 0, +1). Requires v.isReal().
int signOfReal(const Cyc& v);

/// floor(v) for a real cyclotomic number, exact.
Int floorOfReal(const Cyc& v);

}  // namespace fwb
