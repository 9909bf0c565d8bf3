#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "dyndeg/kfield.hpp"
#include "dyndeg/matrix.hpp"

namespace dyndeg {

// Order-3 integer linear recurrence a_n = r1 a_{n-1} + r2 a_{n-2} + r3 a_{n-3}
// with |r3| = 1, so the backward step is integral and the sequence is purely
// periodic modulo every m.
struct LinRec3 {
    std::array<BigInt, 3> rec;   // r1, r2, r3
    std::array<BigInt, 3> init;  // a0, a1, a2
};

// the sequence n -> <w, A^n v>; recurrence from Cayley-Hamilton
LinRec3 seq_from_pair(const IntMat3& A, const Vec3& v, const Vec3& w);

// exact terms a_0 .. a_{count-1}
std::vector<BigInt> rec_terms(const LinRec3& r, size_t count);

// a_n = c1 xi1^n + c2 xi2^n + c3 xi3^n with c_i in K; c2 = conj(c1) for
// rational data
struct SeqCoeffs {
    KElem c1, c2, c3;
    bool all_nonzero;   // Remark-4.2-style checks, exact
    bool c1_not_minus_c2;
};

// exact eigen-coefficients via the spectral projectors of A over K; requires
// char(A) = F->cubic()
SeqCoeffs coeffs_in_K(const IntMat3& A, const Vec3& v, const Vec3& w,
                      const std::shared_ptr<const KField>& F);

struct ModCert {
    unsigned long m = 0;
    unsigned long long period = 0;
    std::vector<unsigned long long> zero_positions;  // indices in [0, period)
};

struct StepCapExceeded : std::runtime_error {
    unsigned long m;
    StepCapExceeded(unsigned long mod, const std::string& msg)
        : std::runtime_error(msg), m(mod) {}
};

// iterate the state triple mod m until first return to the start
ModCert mod_cycle(const LinRec3& r, unsigned long m, unsigned long long step_cap = 10'000'000);

// first modulus in [lo, hi] whose cycle has no zero at all; certifies
// a_n != 0 for every n >= 0. Capped moduli are skipped.
std::optional<unsigned long> certify_never_zero(const LinRec3& r, unsigned long lo,
                                                unsigned long hi,
                                                unsigned long long step_cap = 10'000'000);

struct LcmCert {
    std::vector<unsigned long> moduli_used;  // contributing moduli, ascending
    BigInt lcm_periods;
    BigInt target;
    bool reached = false;
};

// Accumulate the lcm of periods over moduli whose only zero sits at position
// 0, stopping once lcm > target. Proves: a_n = 0 with 1 <= n <= target is
// impossible (any zero index is divisible by every contributing period).
LcmCert certify_zero_only_at_start(const LinRec3& r, unsigned long lo, unsigned long hi,
                                   const BigInt& target,
                                   unsigned long long step_cap = 10'000'000);

// 18 (k+1)! k^(k+1) (32 d)^(k+2) log(2kd), the Baker-Wustholz constant
Iv baker_constant(unsigned k, unsigned d, long bits = 64);

// Smallest N0 >= 1 such that slope*N + offset > C * max(log 2N, 1) certainly
// holds for all N >= N0 (upper end of C against lower ends of slope/offset).
BigInt baker_threshold(const Iv& C_total, const Iv& slope, const Iv& offset);

struct BakerBound {
    BigInt threshold;       // a_N != 0 for all N > threshold
    Iv constant;            // the assembled Baker constant
    Iv slope, offset;       // linear minorant pieces
    Iv log_xi1;             // log |xi1|
    Iv h_prime_ratio;       // upper bound used for h'(xi1/xi2)
    Iv h_prime_c;           // upper bound used for max h'(-c1/c2)
    Iv max_height_c;        // max over sequences of h(-c1/c2)
    Iv max_log_c3_over_c2;  // max over sequences of log|c3/c2|
};

// Zero-free bound for a family of sequences sharing xi's: assembles the
// effective inequality with k = 3, d = 6 and the worst-case coefficient
// factors. The unit-modulus factors |log| are bounded by pi, matching the
// displayed chain.
BakerBound zero_free_bound_from_baker(const std::vector<SeqCoeffs>& seqs,
                                      const std::shared_ptr<const KField>& F, const Rat& eps);

struct NoOnsetFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Smallest index n0 (1-based) such that every supplied head index n >= n0
// satisfies a_n = r1 a_{n-1} + r2 a_{n-2} + r3 a_{n-3} (heads below 4 are not
// checkable). terms[0] is a_1.
unsigned eventual_rec_detect(const std::vector<BigInt>& terms, const std::array<BigInt, 3>& rec,
                             unsigned n_start_max);

// Clear the series equation sum_{n>=1} P_n lambda^-n = 1 to an integer
// polynomial in lambda, given that the recurrence holds from head index
// `onset` on. terms[0] is P_1.
PolyZ series_to_polynomial(const std::vector<BigInt>& terms, const std::array<BigInt, 3>& rec,
                           unsigned onset);

// argmax over U of <u, A^n v> stabilizes: u_star attains the maximum for all
// n >= onset. `analytic_from` is where the interval inequality takes over;
// exact integer checks cover [onset, analytic_from).
struct ArgmaxCert {
    Vec3 u_star;
    unsigned onset = 0;
    unsigned analytic_from = 0;
};

struct MarginNotCertifiable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// requires a certified real Perron spectrum on A
ArgmaxCert argmax_stabilize(const IntMat3& A, const Vec3& v, const Rat& eps);

// Cone certificate for one vector in the real-Perron regime: star(A^n v)
// holds for all n >= 1; the interval inequality covers n >= analytic_from
// with the stated positive bound, exact checks cover smaller n.
struct VectorConeCert {
    Vec3 v;
    unsigned analytic_from = 1;
    Iv bound_at_onset;      // min functional gap certified at analytic_from
    bool exact_checks_ok = true;
};

struct ConeCertFailure {
    Vec3 v;
    unsigned n = 0;  // witness index with star(A^n v) false
};

// all vectors of the fixed cone family, or the first witness of failure
std::variant<std::vector<VectorConeCert>, ConeCertFailure> dominant_cone_cert(const IntMat3& A,
                                                                              const Rat& eps);

}  // namespace dyndeg
