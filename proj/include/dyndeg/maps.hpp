#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dyndeg/interval.hpp"
#include "dyndeg/matrix.hpp"

namespace dyndeg {

// Monomial self-map of P^3 in homogeneous coordinates: row i is the exponent
// vector of coordinate i. All row sums equal `degree` and every column has a
// zero entry (no common monomial factor).
struct HomogMonomialMap {
    std::array<std::array<BigInt, 4>, 4> expo;
    BigInt degree;
};

// h_A for A in GL_3(Z), homogenized and cleared of common factors
HomogMonomialMap homogenize_monomial(const IntMat3& A);

// the degree-3 Cremona involution [x1 x2 x3 : x0 x2 x3 : x0 x1 x3 : x0 x1 x2]
HomogMonomialMap cremona_involution();

// Rational point of P^3 as coprime integers, first nonzero coordinate
// positive.
struct ProjPointQ {
    std::array<BigInt, 4> x;

    static ProjPointQ from_integers(std::array<BigInt, 4> coords);
    static ProjPointQ from_rationals(const std::array<Rat, 4>& coords);
    bool operator==(const ProjPointQ& o) const { return x == o.x; }
};

struct LinearFactor {
    Mat4Q m;
};
struct MonomialFactor {
    HomogMonomialMap m;
};
using Factor = std::variant<LinearFactor, MonomialFactor>;

// Composition of linear and monomial factors, applied right to left. Only the
// degree bound (product of factor degrees) is exposed; no cancellation is
// attempted.
struct BirationalComposition {
    std::vector<Factor> factors;
    BigInt degree_bound() const;
};

struct FAMaps {
    BirationalComposition forward;              // f_A
    BirationalComposition inverse;              // f_A^{-1}
    BirationalComposition conjugated_inverse;   // f_{A^{-1}}, birationally conjugate
};

// f_A = L_{B^-1} . h_{-I} . L_B . h_A and companions
FAMaps build_fA(const IntMat3& A);

// Evaluation failed at `factor_index` (right-to-left position): a monomial
// factor needed a vanishing coordinate, or the image vanished.
struct IndeterminatePoint {
    size_t factor_index;
    std::string what;
};

std::variant<ProjPointQ, IndeterminatePoint> evaluate(const BirationalComposition& c,
                                                      const ProjPointQ& p);

// log max |x_i| of the coprime-integer representative
Iv weil_height(const ProjPointQ& p, long bits = 64);

struct OrbitResult {
    std::vector<Iv> heights;            // h(f^k P), k = 0..n
    std::vector<Iv> growth;             // h(f^k P)^{1/k}, k = 1..n
    std::optional<size_t> failed_at;    // index of the first indeterminate step
};

// heights along the orbit; heights grow doubly fast (degree ~ lambda_1 per
// step), so n_max defaults small
OrbitResult orbit_heights(const BirationalComposition& c, const ProjPointQ& p, unsigned n_max = 3);

// matrix file format: three rows of three integers, '#' comments allowed
IntMat3 read_matrix_file(const std::string& path);
IntMat3 parse_matrix_text(const std::string& text);

}  // namespace dyndeg
