#pragma once

#include <optional>
#include <string>

#include "dyndeg/maps.hpp"
#include "dyndeg/psi.hpp"
#include "dyndeg/recur.hpp"

namespace dyndeg {

enum class SpectralKind { PerronReal, ComplexPairDominant, Unsupported };

struct SpectralClass {
    SpectralKind kind = SpectralKind::Unsupported;
    PolyQ char_poly;
    BigInt disc;
    std::string reason;  // set for Unsupported
};

// irreducibility by the rational-root test, signature by the discriminant,
// dominance through the certified real-root enclosure
SpectralClass classify_spectrum(const IntMat3& A);

enum class Verdict { Pass, Fail, Unknown };

struct RunOptions {
    Rat eps = make_rat(1, 1000000);
    unsigned long moduli_lo = 5, moduli_hi = 1999;
    unsigned long long step_cap = 10'000'000;
    std::optional<BigInt> baker_target;  // override for the lcm target
    unsigned series_start = 64;
    unsigned jobs = 0;  // 0: use DYNDEG_JOBS or hardware concurrency
};

// evidence for one of the 36 sequence certificates in the complex-pair regime
struct SequenceEvidence {
    unsigned index = 0;  // 1..36 in the fixed (vector, functional) order
    LinRec3 rec;
    bool zero_start = false;
    std::optional<unsigned long> never_zero_modulus;  // nonzero-start route
    std::optional<LcmCert> lcm_cert;                  // zero-start route
    bool ok = false;
};

struct ConeEvidence {
    Verdict verdict = Verdict::Unknown;
    SpectralKind regime = SpectralKind::Unsupported;
    std::string detail;  // failure witness or refusal reason
    // PerronReal route
    std::vector<VectorConeCert> perron_certs;
    // ComplexPairDominant route
    std::vector<SequenceEvidence> sequences;
    std::optional<BakerBound> baker;
    BigInt lcm_target;

    ConeCertToken token(const std::string& origin) const {
        return ConeCertToken{verdict == Verdict::Pass, origin};
    }
};

// dispatch on the spectral class; never silently passes
ConeEvidence cone_condition(const IntMat3& A, const RunOptions& opts = {});

// sigma(v, w) = -conj(c)/c with c = <w, Pi_xi1 v>; unit-circle element of K
KElem sigma(const Vec3& v, const Vec3& w, const IntMat3& A,
            const std::shared_ptr<const KField>& F);

struct SigmaCheck {
    Vec3 v, w;
    bool non_unit = false;
};

struct TranscendenceReport {
    Verdict cond_irreducible = Verdict::Unknown;
    Verdict cond_pair_and_angle = Verdict::Unknown;   // complex pair, ratio not a root of unity
    Verdict cond_sigma_units = Verdict::Unknown;      // (iii): 24 sigma values outside U_K
    Verdict cond_ratio_units = Verdict::Unknown;      // (iv): non-exempt ratios outside U_K
    Verdict cone_condition = Verdict::Unknown;
    std::vector<SigmaCheck> sigma_checks;
    std::string detail;

    Verdict overall() const;
};

// the hypotheses of the transcendence criterion; the conclusion is
// conditional on the cited theorem, which this artifact does not re-prove
TranscendenceReport transcendence_conditions(const IntMat3& A, const RunOptions& opts = {},
                                             const ConeEvidence* cone = nullptr);

struct Lambda2Result {
    PolyZ polynomial;
    Iv root;
    std::vector<std::vector<BigInt>> max_sequences;  // per V-vector prefixes
    std::vector<ArgmaxCert> argmax_certs;
    unsigned onset = 0;
    Verdict verdict = Verdict::Unknown;
    std::string detail;
};

// lambda_2(f_A) = lambda_1(f_{A^-1}) through the inverse matrix; requires the
// real-Perron regime on A^-1
Lambda2Result lambda2_exact(const IntMat3& A, const RunOptions& opts = {});

struct HyperbolicityVerdict {
    std::optional<int> p;  // set iff some lambda_p strictly dominates
    bool undecidable = false;
};

HyperbolicityVerdict hyperbolicity(const Iv& l0, const Iv& l1, const Iv& l2, const Iv& l3);

// (1, mu, ..., mu, nu, 1) with mu in positions 1..d-2; requires 1 < nu < mu
std::vector<Iv> product_profile(const Iv& mu, const Iv& nu, unsigned d);

struct Certificate {
    std::array<std::array<BigInt, 3>, 3> matrix;
    SpectralClass forward_class, inverse_class;
    Iv lambda0{Rat(1)}, lambda3{Rat(1)};
    std::optional<Iv> lambda1;
    bool lambda1_conditional = false;  // enclosure computed under an assumed cone condition
    std::optional<TranscendenceReport> transcendence;
    std::optional<Lambda2Result> lambda2;
    ConeEvidence forward_cone, inverse_cone;
    HyperbolicityVerdict hyperbolic;
    std::vector<std::pair<unsigned, std::vector<Iv>>> profiles;

    int exit_code() const;  // 0 pass, 1 certified fail, 2 unknown
};

Certificate full_report(const IntMat3& A, const std::vector<unsigned>& profile_dims = {},
                        const RunOptions& opts = {});

// deterministic JSON serialization; rationals as "num/den" strings
std::string certificate_to_json(const Certificate& c);

// re-verify a certificate without re-running searches: stored moduli are
// re-cycled, stored onsets re-checked, stored enclosures re-asserted
bool recheck(const Certificate& c, const IntMat3& A);

unsigned resolve_jobs(unsigned requested);

}  // namespace dyndeg
