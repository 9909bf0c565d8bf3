#include "dyndeg/recur.hpp"

#include <algorithm>

#include "dyndeg/psi.hpp"

namespace dyndeg {

LinRec3 seq_from_pair(const IntMat3& A, const Vec3& v, const Vec3& w) {
    Vec3 av = A.apply(v);
    Vec3 aav = A.apply(av);
    return LinRec3{A.recurrence(), {dot(w, v), dot(w, av), dot(w, aav)}};
}

std::vector<BigInt> rec_terms(const LinRec3& r, size_t count) {
    std::vector<BigInt> out;
    out.reserve(count);
    for (size_t i = 0; i < count && i < 3; ++i) out.push_back(r.init[i]);
    while (out.size() < count) {
        size_t n = out.size();
        out.push_back(r.rec[0] * out[n - 1] + r.rec[1] * out[n - 2] + r.rec[2] * out[n - 3]);
    }
    return out;
}

namespace {

// K-valued 3x3 matrices for the spectral projectors
using KMat = std::array<std::array<KElem, 3>, 3>;

KMat kmat_of(const IntMat3& A, const std::shared_ptr<const KField>& F) {
    KMat m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = F->from_rat(Rat(A.at(i, j)));
    return m;
}

KMat kmat_mul(const KMat& a, const KMat& b, const std::shared_ptr<const KField>& F) {
    KMat r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            KElem s = F->zero();
            for (int k = 0; k < 3; ++k) s = s + a[i][k] * b[k][j];
            r[i][j] = s;
        }
    return r;
}

KMat kmat_sub_scalar(KMat m, const KElem& s) {
    for (int i = 0; i < 3; ++i) m[i][i] = m[i][i] - s;
    return m;
}

// spectral projector onto the lambda-eigenspace: prod over the other roots of
// (A - mu I)/(lambda - mu)
KMat projector(const IntMat3& A, const KElem& lambda, const KElem& mu1, const KElem& mu2,
               const std::shared_ptr<const KField>& F) {
    KMat m = kmat_of(A, F);
    KMat num = kmat_mul(kmat_sub_scalar(m, mu1), kmat_sub_scalar(m, mu2), F);
    KElem den = ((lambda - mu1) * (lambda - mu2)).inverse();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) num[i][j] = num[i][j] * den;
    return num;
}

KElem kdot_wPv(const Vec3& w, const KMat& P, const Vec3& v,
               const std::shared_ptr<const KField>& F) {
    KElem s = F->zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s = s + F->from_rat(Rat(w[i])) * P[i][j] * F->from_rat(Rat(v[j]));
    return s;
}

}  // namespace

SeqCoeffs coeffs_in_K(const IntMat3& A, const Vec3& v, const Vec3& w,
                      const std::shared_ptr<const KField>& F) {
    if (A.char_poly() != F->cubic())
        throw std::invalid_argument("coeffs_in_K: field does not match the matrix");
    CubicRoots roots = roots_in_field(F);
    // c_i = <w, Pi_i v>, equal to <w, q_i>(s_i . v) for any eigenvector
    // normalization
    KMat P1 = projector(A, roots.xi_plus, roots.xi_minus, roots.theta, F);
    KMat P3 = projector(A, roots.theta, roots.xi_plus, roots.xi_minus, F);
    KElem c1 = kdot_wPv(w, P1, v, F);
    KElem c2 = c1.conj();  // P2 = conj(P1) entrywise for a real matrix
    KElem c3 = kdot_wPv(w, P3, v, F);
    SeqCoeffs out{c1, c2, c3, false, false};
    out.all_nonzero = !c1.is_zero() && !c2.is_zero() && !c3.is_zero();
    out.c1_not_minus_c2 = !(c1 + c2).is_zero();
    // reconstruction at n = 0 pins the projector identity
    if (!(c1 + c2 + c3 == F->from_rat(Rat(dot(w, v)))))
        throw std::logic_error("coeffs_in_K: projector reconstruction failed");
    return out;
}

ModCert mod_cycle(const LinRec3& r, unsigned long m, unsigned long long step_cap) {
    if (m < 2) throw std::invalid_argument("mod_cycle: modulus must be >= 2");
    if (abs(r.rec[2]) != 1)
        throw std::invalid_argument("mod_cycle: |r3| = 1 required for pure periodicity");
    auto red = [&](const BigInt& x) -> unsigned long {
        BigInt v = x % BigInt(m);
        if (v < 0) v += BigInt(m);
        return v.get_ui();
    };
    const unsigned long r1 = red(r.rec[0]), r2 = red(r.rec[1]), r3 = red(r.rec[2]);
    const unsigned long a0 = red(r.init[0]), b0 = red(r.init[1]), c0 = red(r.init[2]);
    unsigned long x = a0, y = b0, z = c0;
    ModCert cert;
    cert.m = m;
    if (x == 0) cert.zero_positions.push_back(0);
    unsigned long long steps = 0;
    while (true) {
        unsigned __int128 acc = static_cast<unsigned __int128>(r1) * z +
                                static_cast<unsigned __int128>(r2) * y +
                                static_cast<unsigned __int128>(r3) * x;
        unsigned long nxt = static_cast<unsigned long>(acc % m);
        x = y;
        y = z;
        z = nxt;
        ++steps;
        if (x == a0 && y == b0 && z == c0) break;
        if (steps > step_cap) throw StepCapExceeded(m, "mod_cycle: period exceeds the step cap");
        if (x == 0) cert.zero_positions.push_back(steps);
    }
    cert.period = steps;
    return cert;
}

std::optional<unsigned long> certify_never_zero(const LinRec3& r, unsigned long lo,
                                                unsigned long hi, unsigned long long step_cap) {
    for (unsigned long m = lo; m <= hi; ++m) {
        try {
            ModCert c = mod_cycle(r, m, step_cap);
            if (c.zero_positions.empty()) return m;
        } catch (const StepCapExceeded&) {
            // skipped, never trusted
        }
    }
    return std::nullopt;
}

LcmCert certify_zero_only_at_start(const LinRec3& r, unsigned long lo, unsigned long hi,
                                   const BigInt& target, unsigned long long step_cap) {
    if (r.init[0] != 0)
        throw std::invalid_argument("certify_zero_only_at_start: sequence must start at zero");
    LcmCert cert;
    cert.lcm_periods = 1;
    cert.target = target;
    for (unsigned long m = lo; m <= hi; ++m) {
        try {
            ModCert c = mod_cycle(r, m, step_cap);
            if (c.zero_positions.size() == 1 && c.zero_positions[0] == 0) {
                BigInt next = lcm(cert.lcm_periods, BigInt(static_cast<unsigned long>(c.period)));
                if (next != cert.lcm_periods) {
                    cert.lcm_periods = next;
                    cert.moduli_used.push_back(m);
                }
                if (cert.lcm_periods > target) {
                    cert.reached = true;
                    return cert;
                }
            }
        } catch (const StepCapExceeded&) {
        }
    }
    return cert;
}

Iv baker_constant(unsigned k, unsigned d, long bits) {
    if (k < 1 || d < 1) throw std::invalid_argument("baker_constant: k, d >= 1");
    BigInt fact(1);
    for (unsigned i = 2; i <= k + 1; ++i) fact *= i;
    BigInt integer_part = 18 * fact * pow_ui(BigInt(k), k + 1) * pow_ui(BigInt(32 * d), k + 2);
    Iv lg = log_point(Rat(2 * k * d), bits);
    return lg * Rat(integer_part);
}

namespace {

// certified g(N) > 0 with g(N) = slope N + offset - C max(log 2N, 1)
bool gap_positive(const BigInt& N, const Iv& C, const Iv& slope, const Iv& offset) {
    Rat logterm = std::max(log_point(Rat(2 * N), 64).hi, Rat(1));
    Rat chi = C.hi < 0 ? Rat(0) : C.hi;
    return slope.lo * Rat(N) + offset.lo > chi * logterm;
}

}  // namespace

BigInt baker_threshold(const Iv& C_total, const Iv& slope, const Iv& offset) {
    if (!(slope.lo > 0)) throw std::invalid_argument("baker_threshold: slope must be positive");
    Rat nstar = (C_total.hi > 0 ? C_total.hi : Rat(0)) / slope.lo;
    BigInt nfloor = floor_div(nstar.get_num(), nstar.get_den());
    if (nfloor < 1) nfloor = 1;
    // g decreases then increases; positive at 1 and around the minimum means
    // positive everywhere
    if (gap_positive(BigInt(1), C_total, slope, offset) &&
        gap_positive(nfloor, C_total, slope, offset) &&
        gap_positive(nfloor + 1, C_total, slope, offset))
        return BigInt(1);
    BigInt hi = nfloor + 1;
    while (!gap_positive(hi, C_total, slope, offset)) hi *= 2;
    BigInt lo = nfloor;
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (gap_positive(mid, C_total, slope, offset))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

BakerBound zero_free_bound_from_baker(const std::vector<SeqCoeffs>& seqs,
                                      const std::shared_ptr<const KField>& F, const Rat& eps) {
    if (seqs.empty()) throw std::invalid_argument("zero_free_bound_from_baker: no sequences");
    for (const auto& s : seqs)
        if (!s.all_nonzero || !s.c1_not_minus_c2)
            throw std::domain_error(
                "zero_free_bound_from_baker: coefficient hypotheses fail (c_i = 0 or c1 = -c2)");

    const long bits = 64;
    Iv pi = pi_iv(bits);
    CubicRoots roots = roots_in_field(F);

    BakerBound out;
    // |xi1|^2 = |d| / |theta|; the pair must dominate: |xi1| > 1
    for (long tb = 64;; tb *= 2) {
        Iv theta = F->theta_enclosure(tb);
        Iv xi_abs2 = Iv(Rat(abs(F->d()))) / abs_iv(theta);
        if (xi_abs2.lo > 1) {
            out.log_xi1 = log_iv(xi_abs2, bits) * make_rat(1, 2);
            if (out.log_xi1.width() <= eps || tb > 65536) break;
        } else if (tb > 4096) {
            throw std::domain_error("zero_free_bound_from_baker: |xi1| > 1 not certified");
        }
    }
    out.slope = out.log_xi1 * Rat(3);

    // h'(xi1/xi2) <= max(h, pi)/6 since |xi1/xi2| = 1 forces |log| <= pi
    KElem ratio = roots.xi_plus / roots.xi_minus;
    Iv h_ratio = height_rel(ratio, eps);
    out.h_prime_ratio = hull(h_ratio, pi) * make_rat(1, 6);

    // worst h'(-c1/c2) over the family; |c1| = |c2| keeps the log term <= pi
    Iv h_c_max(Rat(0));
    for (const auto& s : seqs) {
        Iv h = height_rel(-(s.c1 / s.c2), eps);
        if (h.hi > h_c_max.hi) h_c_max = h;
    }
    out.max_height_c = h_c_max;
    out.h_prime_c = hull(h_c_max, pi) * make_rat(1, 6);

    Iv h_prime_minus1 = pi * make_rat(1, 6);

    Iv bk = baker_constant(3, 6, bits);
    out.constant = bk * out.h_prime_ratio * out.h_prime_c * h_prime_minus1;

    // offset = -log 2 - max log|c3/c2|
    bool first = true;
    for (const auto& s : seqs) {
        KElem q = s.c3 / s.c2;
        for (long eb = 64;; eb *= 2) {
            ComplexBox z = embed(q, make_rat(1, 1) / Rat(BigInt(1) << eb));
            Iv abs2 = z.re * z.re + z.im * z.im;
            if (abs2.lo > 0) {
                Iv lg = log_iv(abs2, bits) * make_rat(1, 2);
                if (lg.width() <= eps || eb > 65536) {
                    out.max_log_c3_over_c2 =
                        first ? lg
                              : Iv(std::max(out.max_log_c3_over_c2.lo, lg.lo),
                                   std::max(out.max_log_c3_over_c2.hi, lg.hi));
                    first = false;
                    break;
                }
            } else if (eb > 65536) {
                throw std::domain_error("zero_free_bound_from_baker: |c3/c2| not separated from 0");
            }
        }
    }
    Iv log2 = log_point(Rat(2), bits);
    out.offset = -(log2 + out.max_log_c3_over_c2);

    if (!(out.slope.lo > 0))
        throw std::domain_error("zero_free_bound_from_baker: slope not positive");
    out.threshold = baker_threshold(out.constant, out.slope, out.offset);
    return out;
}

unsigned eventual_rec_detect(const std::vector<BigInt>& terms, const std::array<BigInt, 3>& rec,
                             unsigned n_start_max) {
    if (terms.size() < static_cast<size_t>(n_start_max) + 6)
        throw std::invalid_argument("eventual_rec_detect: not enough terms supplied");
    unsigned last_violation = 0;  // head index (1-based)
    for (size_t n = 4; n <= terms.size(); ++n) {
        BigInt predicted =
            rec[0] * terms[n - 2] + rec[1] * terms[n - 3] + rec[2] * terms[n - 4];
        if (terms[n - 1] != predicted) last_violation = static_cast<unsigned>(n);
    }
    unsigned onset = last_violation + 1;
    if (onset > n_start_max) throw NoOnsetFound("eventual_rec_detect: no onset within bound");
    return onset;
}

PolyZ series_to_polynomial(const std::vector<BigInt>& terms, const std::array<BigInt, 3>& rec,
                           unsigned onset) {
    size_t K = std::max<size_t>(onset >= 1 ? onset - 1 : 0, 3);
    if (terms.size() < K)
        throw std::invalid_argument("series_to_polynomial: need terms through the pre-onset range");
    auto P = [&](long idx) -> BigInt {  // 1-based with zero left-padding
        return idx >= 1 ? terms[static_cast<size_t>(idx) - 1] : BigInt(0);
    };
    // re-verify the recurrence on every supplied head >= max(onset, 4)
    for (size_t n = std::max<size_t>(onset, 4); n <= terms.size(); ++n) {
        BigInt predicted = rec[0] * P(static_cast<long>(n) - 1) +
                           rec[1] * P(static_cast<long>(n) - 2) +
                           rec[2] * P(static_cast<long>(n) - 3);
        if (P(static_cast<long>(n)) != predicted)
            throw std::invalid_argument("series_to_polynomial: recurrence violated after onset");
    }
    // with Q(t) = 1 - r1 t - r2 t^2 - r3 t^3, R = Q * sum_n P_n t^n is a
    // polynomial of degree < max(onset, 4); the equation sum P_n lambda^-n = 1
    // clears to lambda^D (Q - R)(1/lambda) = 0
    size_t D = std::max<size_t>(3, K);
    PolyZ p(D + 1, BigInt(0));
    p[D] = 1;
    for (size_t j = 1; j <= 3; ++j) p[D - j] -= rec[j - 1];
    for (size_t k = 1; k <= K; ++k) {
        BigInt Rk = P(static_cast<long>(k)) - rec[0] * P(static_cast<long>(k) - 1) -
                    rec[1] * P(static_cast<long>(k) - 2) - rec[2] * P(static_cast<long>(k) - 3);
        p[D - k] -= Rk;
    }
    return p;
}

// ---------------------------------------------------------------------------
// real-Perron eigenstructure with certified intervals

namespace {

struct PerronData {
    Iv sigma1;  // the real root (may be negative)
    Iv sigma1_abs;
    Iv sub_abs2;  // |sigma_2|^2 = |det| / |sigma_1|
    Iv alpha;     // Re sigma_2
    Iv beta2;     // (Im sigma_2)^2
    std::array<std::array<Iv, 3>, 3> proj;  // dominant spectral projector
    BigInt trace, det;
};

Rat coeff_bound(const PolyQ& cp) {
    Rat m(1);
    for (int i = 0; i < 3; ++i) m = std::max(m, abs(cp[i]));
    return m + 1;
}

PerronData perron_data(const IntMat3& A, long bits) {
    PolyQ cp = A.char_poly();
    BigInt disc = cubic_discriminant(cp);
    if (disc >= 0 || !cubic_irreducible(cp))
        throw MarginNotCertifiable(
            "real-Perron data needs an irreducible cubic with one real root");
    PerronData d;
    d.trace = -cp[2].get_num();
    d.det = -cp[0].get_num();
    Rat eps = make_rat(1, 1) / Rat(BigInt(1) << bits);
    Rat bound = coeff_bound(cp);
    d.sigma1 = bisect_root(poly_primitive(cp), -bound, bound, eps);
    d.sigma1_abs = abs_iv(d.sigma1);
    if (!(d.sigma1_abs.lo > 1))
        throw MarginNotCertifiable("dominant real root not certified above modulus 1");
    d.sub_abs2 = Iv(Rat(abs(d.det))) / d.sigma1_abs;
    d.alpha = (Iv(Rat(d.trace)) - d.sigma1) * make_rat(1, 2);
    d.beta2 = d.sub_abs2 - d.alpha * d.alpha;
    if (!(d.beta2.lo > 0))
        throw MarginNotCertifiable("complex pair not separated from the real axis");
    // Pi_1 = (A^2 - (tr - s1) A + (det/s1) I) / chi'(s1)
    Iv chi_prime =
        Iv(Rat(3)) * d.sigma1 * d.sigma1 + d.sigma1 * Rat(-2 * d.trace) + Iv(cp[1]);
    if (chi_prime.contains_zero())
        throw MarginNotCertifiable("characteristic derivative enclosure crosses zero");
    IntMat3 A2 = A * A;
    Iv tr_minus = Iv(Rat(d.trace)) - d.sigma1;
    Iv det_over = Iv(Rat(d.det)) / d.sigma1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Iv val = Iv(Rat(A2.at(i, j))) - tr_minus * Rat(A.at(i, j));
            if (i == j) val = val + det_over;
            d.proj[i][j] = val / chi_prime;
        }
    return d;
}

Iv iv_dot(const Vec3& w, const std::array<Iv, 3>& x) {
    return x[0] * Rat(w[0]) + x[1] * Rat(w[1]) + x[2] * Rat(w[2]);
}

std::array<Iv, 3> proj_apply(const PerronData& d, const Vec3& v) {
    std::array<Iv, 3> g;
    for (int i = 0; i < 3; ++i)
        g[i] = d.proj[i][0] * Rat(v[0]) + d.proj[i][1] * Rat(v[1]) + d.proj[i][2] * Rat(v[2]);
    return g;
}

// |l(w_2)|^2 for the subdominant component of v under the functional l, from
// the exact values l(v), l(Av) and the dominant part l(g)
Iv sub_component_abs2(const PerronData& d, const Iv& lg, const BigInt& h0, const BigInt& h1) {
    Iv u0 = Iv(Rat(h0)) - lg;
    Iv u1 = Iv(Rat(h1)) - d.sigma1 * lg;
    Iv a = u0 * make_rat(1, 2);
    Iv bb = a * d.alpha - u1 * make_rat(1, 2);  // = b * beta
    return a * a + (bb * bb) / d.beta2;
}

struct FunctionalMargin {
    Iv dom2;  // squared dominant margin
    Iv sub2;  // squared subdominant amplitude
};

// smallest n >= 1 with s1^(2n) min dom2 > 4 |s2|^(2n) max sub2; monotone in n
// once |s1| > |s2|, so the inequality persists for all larger n
std::optional<unsigned> stabilization_onset(const PerronData& d,
                                            const std::vector<FunctionalMargin>& ms,
                                            unsigned cap = 4096) {
    Rat dom_lo(0), sub_hi(0);
    bool first = true;
    for (const auto& m : ms) {
        if (first || m.dom2.lo < dom_lo) dom_lo = m.dom2.lo;
        if (first || m.sub2.hi > sub_hi) sub_hi = m.sub2.hi;
        first = false;
    }
    if (!(dom_lo > 0)) return std::nullopt;
    Rat lhs = dom_lo, rhs = sub_hi * 4;
    Rat growth_l = d.sigma1_abs.lo * d.sigma1_abs.lo;
    Rat decay_h = d.sub_abs2.hi;
    if (!(growth_l > decay_h)) return std::nullopt;
    for (unsigned n = 1; n <= cap; ++n) {
        lhs *= growth_l;
        rhs *= decay_h;
        lhs = round_down(lhs, 256);
        rhs = round_up(rhs, 256);
        if (lhs > rhs) return n;
    }
    return std::nullopt;
}

}  // namespace

ArgmaxCert argmax_stabilize(const IntMat3& A, const Vec3& v, const Rat& eps) {
    (void)eps;
    for (long bits = 64; bits <= 16384; bits *= 2) {
        PerronData d = perron_data(A, bits);
        if (!(d.sigma1.lo > 0))
            throw MarginNotCertifiable("argmax stabilization needs a positive dominant root");
        std::array<Iv, 3> g = proj_apply(d, v);
        // u* from the sign pattern of the dominant direction
        Vec3 u_star{0, 0, 0};
        std::vector<Vec3> margin_functionals;  // functionals l with l(g) > 0 required
        bool decided = false;
        if (g[0].lo > 0 && g[1].lo > 0 && g[2].lo > 0) {
            margin_functionals = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
            decided = true;
        } else {
            for (int m = 0; m < 3 && !decided; ++m) {
                if (!(g[m].hi < 0)) continue;
                bool strictly_min = true;
                for (int j = 0; j < 3; ++j)
                    if (j != m) strictly_min = strictly_min && g[m].hi < g[j].lo;
                if (!strictly_min) continue;
                u_star[m] = -1;
                Vec3 neg{0, 0, 0};
                neg[m] = -1;  // -x_m > 0
                margin_functionals.push_back(neg);
                for (int j = 0; j < 3; ++j) {
                    if (j == m) continue;
                    Vec3 diff{0, 0, 0};  // x_j - x_m > 0
                    diff[j] = 1;
                    diff[m] = -1;
                    margin_functionals.push_back(diff);
                }
                decided = true;
            }
        }
        if (!decided) continue;  // refine and retry

        Vec3 av = A.apply(v);
        std::vector<FunctionalMargin> ms;
        bool margins_ok = true;
        for (const auto& l : margin_functionals) {
            Iv lg = iv_dot(l, g);
            margins_ok = margins_ok && lg.lo > 0;
            ms.push_back(FunctionalMargin{lg * lg, sub_component_abs2(d, lg, dot(l, v), dot(l, av))});
        }
        if (!margins_ok) continue;
        auto onset = stabilization_onset(d, ms);
        if (!onset) continue;

        // exact walk-down below the analytic threshold
        unsigned analytic_from = *onset;
        std::vector<Vec3> powers(analytic_from);
        Vec3 cur = v;
        for (unsigned n = 1; n < analytic_from; ++n) {
            cur = A.apply(cur);
            powers[n] = cur;
        }
        auto attains_strictly = [&](const Vec3& x) {
            if (u_star == Vec3{0, 0, 0}) return x[0] > 0 && x[1] > 0 && x[2] > 0;
            int m = u_star[0] == -1 ? 0 : (u_star[1] == -1 ? 1 : 2);
            for (int j = 0; j < 3; ++j)
                if (j != m && !(x[m] < x[j])) return false;
            return x[m] < 0;
        };
        unsigned onset_final = analytic_from;
        for (unsigned n = analytic_from; n-- > 1;) {
            if (attains_strictly(powers[n]))
                onset_final = n;
            else
                break;
        }
        return ArgmaxCert{u_star, onset_final, analytic_from};
    }
    throw MarginNotCertifiable("argmax_stabilize: margins not certifiable at maximal precision");
}

std::variant<std::vector<VectorConeCert>, ConeCertFailure> dominant_cone_cert(const IntMat3& A,
                                                                              const Rat& eps) {
    std::vector<VectorConeCert> certs;
    for (const Vec3& v : cone_vectors()) {
        bool done = false;
        for (long bits = 64; bits <= 16384 && !done; bits *= 2) {
            PerronData d = perron_data(A, bits);
            std::array<Iv, 3> g = proj_apply(d, v);
            Vec3 av = A.apply(v);
            std::vector<FunctionalMargin> ms;
            bool dom_ok = true;
            for (const Vec3& l : cone_functionals()) {
                Iv lg = iv_dot(l, g);
                dom_ok = dom_ok && !lg.contains_zero();
                ms.push_back(
                    FunctionalMargin{lg * lg, sub_component_abs2(d, lg, dot(l, v), dot(l, av))});
            }
            if (!dom_ok) continue;
            auto onset = stabilization_onset(d, ms);
            if (!onset) continue;

            VectorConeCert cert;
            cert.v = v;
            cert.analytic_from = *onset;
            // reported bound: |s1|^n min|l(g)| - 2 |s2|^n max|l(w)| at the onset
            Iv dom2 = ms.front().dom2, sub2 = ms.front().sub2;
            for (const auto& m : ms) {
                dom2 = Iv(std::min(dom2.lo, m.dom2.lo), std::min(dom2.hi, m.dom2.hi));
                sub2 = Iv(std::max(sub2.lo, m.sub2.lo), std::max(sub2.hi, m.sub2.hi));
            }
            Iv s1n = pow_iv(d.sigma1_abs, *onset);
            Iv s2n2 = pow_iv(d.sub_abs2, *onset);  // |s2|^(2n)
            Iv bound = s1n * sqrt_iv(Iv(std::max(Rat(0), dom2.lo), dom2.hi), bits) -
                       sqrt_iv(s2n2 * sub2, bits) * Rat(2);
            cert.bound_at_onset = bound;

            // exact checks below the onset
            Vec3 cur = v;
            for (unsigned n = 1; n < *onset; ++n) {
                cur = A.apply(cur);
                if (!star_test(cur)) return ConeCertFailure{v, n};
            }
            if (bound.width() > eps && bits < 16384) continue;
            certs.push_back(cert);
            done = true;
        }
        if (!done) throw MarginNotCertifiable("dominant_cone_cert: enclosures stayed too wide");
    }
    return certs;
}

}  // namespace dyndeg
