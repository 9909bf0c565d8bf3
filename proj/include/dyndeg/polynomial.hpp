#pragma once

#include <vector>

#include "dyndeg/interval.hpp"
#include "dyndeg/rational.hpp"

namespace dyndeg {

// Univariate polynomials, coefficients lowest degree first. The zero
// polynomial is the empty sequence; otherwise the leading coefficient is
// nonzero.
using PolyQ = std::vector<Rat>;
using PolyZ = std::vector<BigInt>;

inline PolyQ poly_of(const PolyZ& p) {
    PolyQ q;
    q.reserve(p.size());
    for (const auto& c : p) q.emplace_back(c);
    return q;
}

void poly_trim(PolyQ& p);
inline bool poly_is_zero(const PolyQ& p) { return p.empty(); }
inline long poly_degree(const PolyQ& p) { return static_cast<long>(p.size()) - 1; }
inline long poly_degree(const PolyZ& p) { return static_cast<long>(p.size()) - 1; }

PolyQ poly_add(const PolyQ& a, const PolyQ& b);
PolyQ poly_sub(const PolyQ& a, const PolyQ& b);
PolyQ poly_mul(const PolyQ& a, const PolyQ& b);
PolyQ poly_scale(const PolyQ& a, const Rat& s);
PolyQ poly_derivative(const PolyQ& p);

// quotient and remainder, b != 0
std::pair<PolyQ, PolyQ> poly_divmod(const PolyQ& a, const PolyQ& b);

// monic gcd (gcd of zero polynomials is zero)
PolyQ poly_gcd(PolyQ a, PolyQ b);

// p / squarefree-part-gcd; for p a power of an irreducible this is that
// irreducible factor
PolyQ poly_squarefree_part(const PolyQ& p);

Rat poly_eval(const PolyQ& p, const Rat& x);
BigInt poly_eval(const PolyZ& p, const BigInt& x);
Iv poly_eval_iv(const PolyQ& p, const Iv& x);
Iv poly_eval_iv(const PolyZ& p, const Iv& x);

// integer polynomial proportional to p with content 1 and positive leading
// coefficient
PolyZ poly_primitive(const PolyQ& p);

bool poly_is_integer(const PolyQ& p);

// discriminant of a monic integer cubic x^3 + b x^2 + c x + d
BigInt cubic_discriminant_monic(const BigInt& b, const BigInt& c, const BigInt& d);

// throws unless p is a monic integer cubic
BigInt cubic_discriminant(const PolyQ& p);

// no rational root <=> irreducible over Q for a degree-3 polynomial
bool cubic_irreducible(const PolyQ& p);

// cyclotomic polynomials of degree <= 6: k in {1,2,3,4,5,6,7,8,9,10,12,14,18}
const std::vector<PolyZ>& cyclotomics_degree_le6();

}  // namespace dyndeg
