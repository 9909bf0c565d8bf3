#pragma once

#include <optional>
#include <vector>

#include "dyndeg/polynomial.hpp"

namespace dyndeg {

// Disc |z - (cx + i cy)| <= radius known to contain exactly one root.
struct RootDisc {
    Rat cx, cy, radius;
};

// Certified pairwise-disjoint discs around all complex roots of a squarefree
// integer polynomial, radii about 2^-bits. The certificate is the classical
// Weierstrass a-posteriori bound: with corrections W_i taken at pairwise
// distinct points, every root lies in the union of the discs D(z_i, d|W_i|),
// and a disc disjoint from the others holds exactly one root.
std::vector<RootDisc> certified_roots(const PolyZ& p, long bits);

// modulus enclosure of the disc's root
Iv disc_modulus(const RootDisc& d, long bits);

// refine a bracket [lo,hi] with sign(p(lo)) != sign(p(hi)) down to width eps
Iv bisect_root(const PolyZ& p, Rat lo, Rat hi, const Rat& eps);

// the unique real root of a monic integer cubic with negative discriminant
Iv cubic_real_root(const BigInt& b, const BigInt& c, const BigInt& d, const Rat& eps);

// largest real root of a nonconstant integer polynomial, width <= eps;
// nullopt when the polynomial has no real root
std::optional<Iv> largest_real_root(const PolyZ& p, const Rat& eps);

// log(Mahler measure) = log|lead| + sum of log+ of root moduli
Iv mahler_log(const PolyZ& p, long bits);

}  // namespace dyndeg
