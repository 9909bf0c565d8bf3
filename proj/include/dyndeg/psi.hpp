#pragma once

#include <string>
#include <vector>

#include "dyndeg/interval.hpp"
#include "dyndeg/matrix.hpp"

namespace dyndeg {

// The fixed support data of the degree functional on P^3:
//   U = {0, -e1, -e2, -e3}
//   V = {(1,1,0), (0,1,1), (-1,-1,0), (0,-1,-1)}
//   P = {(-1,-1,-1), e1, e2, e3}
//   W = (U - U) \ {0}
struct SupportSets {
    std::vector<Vec3> U, V, P, W;
    static const SupportSets& instance();
};

// the six vectors whose orbits carry the cone condition: V reduced by sign,
// then P, in the fixed order used throughout
const std::vector<Vec3>& cone_vectors();

// the six coordinate functionals x, y, z, x-y, y-z, z-x as w-vectors
const std::vector<Vec3>& cone_functionals();

// max_{u in U} <u, x>, equal to max(0, -min coordinate)
BigInt support_max(const Vec3& x);

// Psi_{U,V}(A^n), exact
BigInt psi(const IntMat3& A, unsigned n);

// Psi_{U,V}(A^k) for k = 1..n, sharing the incremental matrix powers
std::vector<BigInt> psi_prefix(const IntMat3& A, unsigned n);

// the interior-of-a-cone test (*): all coordinates nonzero and pairwise
// distinct
bool star_test(const Vec3& x);

// (Psi(A), product degree bound of f_A)
std::pair<BigInt, BigInt> psi_bounds(const IntMat3& A);

// Cone-condition evidence handle for lambda1_enclosure. `certified` evidence
// comes from the certify pipeline; `assumed` marks reliance on a cited result
// and taints the enclosure's interpretation, not its arithmetic.
struct ConeCertToken {
    bool certified = false;
    std::string origin;
};

struct Lambda1Options {
    unsigned series_start = 64;   // first partial-sum length, grows geometrically
    unsigned tail_m_start = 8;    // Gelfand exponent for the tail bound
    unsigned tail_m_max = 32;
};

struct TailNotConvergent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BracketInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Certified enclosure of the unique lambda > 0 with
// sum_{n>=1} Psi(A^n) lambda^-n = 1, width <= eps. The returned bracket
// [lo, hi] satisfies F(lo) > 1 > F(hi) by exact rational arithmetic, where F
// is bounded through exact partial sums plus a geometric tail bound
//   Psi(A^n) <= 4 max(1,|A|)^(m-1) * (|A^m|^(1/m))^n   (row-sum norm).
Iv lambda1_enclosure(const IntMat3& A, const ConeCertToken& cone, const Rat& eps,
                     const Lambda1Options& opts = {});

// evaluation pieces exposed so a stored enclosure can be re-asserted
Rat lambda1_partial_sum(const std::vector<BigInt>& psis, const Rat& lambda);
Rat lambda1_tail_bound(const IntMat3& A, unsigned m, unsigned n_from, const Rat& lambda);

}  // namespace dyndeg
