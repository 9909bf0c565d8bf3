#include "dyndeg/psi.hpp"

#include "dyndeg/maps.hpp"

namespace dyndeg {

const SupportSets& SupportSets::instance() {
    static const SupportSets s = [] {
        SupportSets out;
        out.U = {Vec3{0, 0, 0}, Vec3{-1, 0, 0}, Vec3{0, -1, 0}, Vec3{0, 0, -1}};
        out.V = {Vec3{1, 1, 0}, Vec3{0, 1, 1}, Vec3{-1, -1, 0}, Vec3{0, -1, -1}};
        out.P = {Vec3{-1, -1, -1}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
        for (const auto& u1 : out.U)
            for (const auto& u2 : out.U) {
                Vec3 w{u1[0] - u2[0], u1[1] - u2[1], u1[2] - u2[2]};
                if (w == Vec3{0, 0, 0}) continue;
                bool seen = false;
                for (const auto& x : out.W) seen = seen || x == w;
                if (!seen) out.W.push_back(w);
            }
        return out;
    }();
    return s;
}

const std::vector<Vec3>& cone_vectors() {
    static const std::vector<Vec3> v = {Vec3{1, 1, 0}, Vec3{0, 1, 1}, Vec3{-1, -1, -1},
                                        Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    return v;
}

const std::vector<Vec3>& cone_functionals() {
    static const std::vector<Vec3> w = {Vec3{1, 0, 0},  Vec3{0, 1, 0},  Vec3{0, 0, 1},
                                        Vec3{1, -1, 0}, Vec3{0, 1, -1}, Vec3{-1, 0, 1}};
    return w;
}

BigInt support_max(const Vec3& x) {
    BigInt mn = std::min(std::min(x[0], x[1]), x[2]);
    return mn < 0 ? BigInt(-mn) : BigInt(0);
}

BigInt psi(const IntMat3& A, unsigned n) {
    IntMat3 power = A;
    for (unsigned k = 1; k < n; ++k) power = power * A;
    BigInt total(0);
    for (const auto& v : SupportSets::instance().V) total += support_max(power.apply(v));
    return total;
}

std::vector<BigInt> psi_prefix(const IntMat3& A, unsigned n) {
    std::vector<BigInt> out;
    out.reserve(n);
    const auto& V = SupportSets::instance().V;
    std::vector<Vec3> cur(V.begin(), V.end());
    for (unsigned k = 1; k <= n; ++k) {
        BigInt total(0);
        for (auto& v : cur) {
            v = A.apply(v);
            total += support_max(v);
        }
        out.push_back(total);
    }
    return out;
}

bool star_test(const Vec3& x) {
    return x[0] != 0 && x[1] != 0 && x[2] != 0 && x[0] != x[1] && x[1] != x[2] && x[2] != x[0];
}

std::pair<BigInt, BigInt> psi_bounds(const IntMat3& A) {
    return {psi(A, 1), build_fA(A).forward.degree_bound()};
}

Rat lambda1_partial_sum(const std::vector<BigInt>& psis, const Rat& lambda) {
    // Horner from the tail: sum_{n=1..N} psi_n lambda^-n
    Rat acc(0);
    Rat inv = Rat(1) / lambda;
    for (auto it = psis.rbegin(); it != psis.rend(); ++it) acc = (acc + Rat(*it)) * inv;
    return acc;
}

namespace {

BigInt mat_power_norm(const IntMat3& A, unsigned m) {
    IntMat3 p = A;
    for (unsigned k = 1; k < m; ++k) p = p * A;
    return p.max_row_abs_sum();
}

// smallest dyadic y in (0,1) with y^m lambda^m >= |A^m|, certifying
// |A^m|^(1/m) / lambda <= y; requires |A^m| < lambda^m
Rat tail_ratio_upper(const BigInt& norm_m, unsigned m, const Rat& lambda) {
    Rat target = Rat(norm_m) / pow_ui(lambda, m);
    Rat lo(0), hi(1);
    for (int i = 0; i < 80; ++i) {
        Rat mid = (lo + hi) / 2;
        if (pow_ui(mid, m) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

Rat lambda1_tail_bound(const IntMat3& A, unsigned m, unsigned n_from, const Rat& lambda) {
    BigInt norm1 = A.max_row_abs_sum();
    BigInt norm_m = mat_power_norm(A, m);
    if (!(Rat(norm_m) < pow_ui(lambda, m)))
        throw TailNotConvergent("tail ratio not below the evaluation point; increase m");
    Rat y = tail_ratio_upper(norm_m, m, lambda);
    if (y >= 1) throw TailNotConvergent("tail ratio bound reached 1");
    // Psi(A^n) <= 4 |A^n|_inf <= 4 max(1,|A|)^(m-1) (|A^m|^(1/m))^n
    BigInt n1 = norm1 < 1 ? BigInt(1) : norm1;
    Rat c = Rat(4) * Rat(pow_ui(n1, m - 1));
    return c * pow_ui(y, n_from) / (Rat(1) - y);
}

Iv lambda1_enclosure(const IntMat3& A, const ConeCertToken& cone, const Rat& eps,
                     const Lambda1Options& opts) {
    (void)cone;  // interpretation, not arithmetic; callers carry the evidence
    if (eps <= 0) throw std::invalid_argument("lambda1_enclosure: eps must be positive");
    auto [psi1, degbound] = psi_bounds(A);
    Rat lo = std::max(Rat(psi1), Rat(make_rat(11, 10)));
    Rat hi(degbound);
    if (!(lo < hi)) hi = lo * 2;

    unsigned N = opts.series_start;
    unsigned m = opts.tail_m_start;
    std::vector<BigInt> psis = psi_prefix(A, N);

    auto upper_ok = [&](const Rat& lam) {
        // certified F(lam) < 1 via partial sum + tail
        while (true) {
            Rat s = lambda1_partial_sum(psis, lam);
            if (s >= 1) return false;
            try {
                Rat t = lambda1_tail_bound(A, m, N + 1, lam);
                if (s + t < 1) return true;
            } catch (const TailNotConvergent&) {
                if (m < opts.tail_m_max) {
                    m *= 2;
                    continue;
                }
                throw;
            }
            if (psis.size() >= 65536) return false;
            N *= 2;
            psis = psi_prefix(A, N);
        }
    };
    auto lower_ok = [&](const Rat& lam) { return lambda1_partial_sum(psis, lam) > 1; };

    if (!lower_ok(lo)) throw BracketInvalid("series not above 1 at the lower bracket end");
    for (int widen = 0; !upper_ok(hi); ++widen) {
        if (widen >= 8) throw BracketInvalid("series not below 1 at the upper bracket end");
        hi += std::max(Rat(1), Rat(hi / 16));
    }

    while (hi - lo > eps) {
        Rat mid = round_down((lo + hi) / 2, 96);
        if (mid <= lo || mid >= hi) mid = (lo + hi) / 2;
        if (lower_ok(mid)) {
            lo = mid;
        } else if (upper_ok(mid)) {
            hi = mid;
        } else {
            // partial sum at mid is in [s, 1] but the tail is too coarse
            N *= 2;
            if (N > (1u << 20)) throw TailNotConvergent("series length exploded");
            psis = psi_prefix(A, N);
        }
    }
    return Iv(lo, hi);
}

}  // namespace dyndeg
