#pragma once

#include <optional>
#include <stdexcept>

#include "dyndeg/rational.hpp"

namespace dyndeg {

// Closed interval with rational endpoints. Ring operations are exact; the
// elementary functions below return enclosures with outward rounding, so a
// true value contained in the input is contained in the output.
struct Iv {
    Rat lo, hi;

    Iv() : lo(0), hi(0) {}
    explicit Iv(const Rat& x) : lo(x), hi(x) {}
    Iv(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("interval with lo > hi");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const Iv& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }

    // certain comparisons (false means "not certainly")
    bool gt(const Rat& x) const { return lo > x; }
    bool lt(const Rat& x) const { return hi < x; }
    bool gt(const Iv& o) const { return lo > o.hi; }
    bool lt(const Iv& o) const { return hi < o.lo; }
};

inline Iv hull(const Iv& a, const Iv& b) {
    return Iv(a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi);
}

inline bool intersects(const Iv& a, const Iv& b) { return a.lo <= b.hi && b.lo <= a.hi; }

inline Iv operator-(const Iv& a) { return Iv(-a.hi, -a.lo); }
inline Iv operator+(const Iv& a, const Iv& b) { return Iv(a.lo + b.lo, a.hi + b.hi); }
inline Iv operator-(const Iv& a, const Iv& b) { return Iv(a.lo - b.hi, a.hi - b.lo); }

inline Iv operator*(const Iv& a, const Iv& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    Rat lo = p1, hi = p1;
    for (const Rat* p : {&p2, &p3, &p4}) {
        if (*p < lo) lo = *p;
        if (*p > hi) hi = *p;
    }
    return Iv(std::move(lo), std::move(hi));
}

inline Iv operator+(const Iv& a, const Rat& b) { return Iv(a.lo + b, a.hi + b); }
inline Iv operator-(const Iv& a, const Rat& b) { return Iv(a.lo - b, a.hi - b); }
inline Iv operator*(const Iv& a, const Rat& b) {
    return b >= 0 ? Iv(a.lo * b, a.hi * b) : Iv(a.hi * b, a.lo * b);
}

inline Iv recip(const Iv& a) {
    if (a.contains_zero()) throw std::domain_error("interval reciprocal across zero");
    return Iv(Rat(1) / a.hi, Rat(1) / a.lo);
}

inline Iv operator/(const Iv& a, const Iv& b) { return a * recip(b); }

inline Iv abs_iv(const Iv& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return Iv(Rat(0), std::max(Rat(-a.lo), a.hi));
}

inline Iv pow_iv(const Iv& a, unsigned long e) {
    if (e == 0) return Iv(Rat(1));
    if (e % 2 == 1 || a.lo >= 0) return Iv(pow_ui(a.lo, e), pow_ui(a.hi, e));
    if (a.hi <= 0) return Iv(pow_ui(a.hi, e), pow_ui(a.lo, e));
    return Iv(Rat(0), std::max(pow_ui(a.lo, e), pow_ui(a.hi, e)));
}

// Round endpoints outward to denominator 2^bits. Controls coefficient blowup
// in long interval computations without losing the enclosure property.
Rat round_down(const Rat& x, long bits);
Rat round_up(const Rat& x, long bits);
inline Iv round_out(const Iv& a, long bits) {
    return Iv(round_down(a.lo, bits), round_up(a.hi, bits));
}

// --- certified elementary functions ---------------------------------------
// `bits` asks for absolute error about 2^-bits; results are true enclosures
// at every precision.

Iv log_point(const Rat& x, long bits);   // x > 0
Iv log_iv(const Iv& x, long bits);       // x.lo > 0
Iv sqrt_point(const Rat& x, long bits);  // x >= 0
Iv sqrt_iv(const Iv& x, long bits);      // x.lo >= 0
Iv nth_root_point(const Rat& x, unsigned long k, long bits);  // x >= 0
Iv nth_root_iv(const Iv& x, unsigned long k, long bits);
Iv pi_iv(long bits);
Iv atan_point(const Rat& x, long bits);
Iv atan_iv(const Iv& x, long bits);

// Principal-branch argument of the complex box re + i*im, Im in (-pi, pi].
// The box must not meet the branch cut ambiguously: im == [0,0] with re < 0 is
// fine (arg = pi); im straddling zero with re <= 0 is rejected.
Iv arg_iv(const Iv& re, const Iv& im, long bits);

// |log z| = sqrt(log|z|^2 + arg(z)^2) for the box z = re + i*im, z != 0.
Iv abs_log_iv(const Iv& re, const Iv& im, long bits);

}  // namespace dyndeg
