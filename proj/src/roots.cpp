#include "dyndeg/roots.hpp"

#include <algorithm>

namespace dyndeg {

namespace {

struct CRat {
    Rat re, im;
};

CRat cadd(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
CRat csub(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
CRat cmul(const CRat& a, const CRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CRat cdiv(const CRat& a, const CRat& b) {
    Rat n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
Rat cabs2(const CRat& a) { return a.re * a.re + a.im * a.im; }
CRat cround(const CRat& a, long bits) {
    // rounding the iterate is fine: the certificate is recomputed afterwards
    return {round_down(a.re, bits), round_down(a.im, bits)};
}

CRat ceval(const PolyZ& p, const CRat& z) {
    CRat acc{Rat(0), Rat(0)};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = cmul(acc, z);
        acc.re += Rat(*it);
    }
    return acc;
}

// Weierstrass correction W_i = p(z_i) / (lead * prod_{j != i} (z_i - z_j))
std::vector<CRat> corrections(const PolyZ& p, const std::vector<CRat>& z) {
    size_t d = z.size();
    std::vector<CRat> w(d);
    for (size_t i = 0; i < d; ++i) {
        CRat denom{Rat(p.back()), Rat(0)};
        for (size_t j = 0; j < d; ++j)
            if (j != i) denom = cmul(denom, csub(z[i], z[j]));
        w[i] = cdiv(ceval(p, z[i]), denom);
    }
    return w;
}

Rat cauchy_bound(const PolyZ& p) {
    Rat m(0);
    Rat lead = abs(Rat(p.back()));
    for (size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, Rat(abs(Rat(p[i])) / lead));
    return m + 1;
}

// Fujiwara: all roots have modulus <= 2 max_k |a_{d-k}/a_d|^{1/k}; much
// tighter than the Cauchy bound when coefficients are unbalanced
Rat fujiwara_bound(const PolyZ& p) {
    size_t d = p.size() - 1;
    Rat lead = abs(Rat(p.back()));
    Rat best(0);
    for (size_t k = 1; k <= d; ++k) {
        Rat q = abs(Rat(p[d - k])) / lead;
        if (q == 0) continue;
        best = std::max(best, nth_root_point(q, k, 16).hi);
    }
    return best * 2 + 1;
}

std::optional<std::vector<RootDisc>> try_certify(const PolyZ& p, long bits, long work_bits) {
    const size_t d = static_cast<size_t>(poly_degree(p));
    Rat R = fujiwara_bound(p);
    // initial points spread on a circle of radius R: powers of the exact
    // unit-circle point (3+4i)/5, offset off the real axis
    std::vector<CRat> z(d);
    CRat u{make_rat(3, 5), make_rat(4, 5)};
    CRat cur{make_rat(7, 8), make_rat(1, 3)};
    for (size_t i = 0; i < d; ++i) {
        z[i] = {cur.re * R, cur.im * R};
        cur = cmul(cur, u);
    }
    Rat target = make_rat(1, 1) / Rat(BigInt(1) << bits);
    const int max_iter = 512;
    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<CRat> w = corrections(p, z);
        Rat maxw2(0);
        for (const auto& wi : w) maxw2 = std::max(maxw2, cabs2(wi));
        for (size_t i = 0; i < d; ++i) z[i] = cround(csub(z[i], w[i]), work_bits);
        if (maxw2 < target * target) break;
    }
    // certify from exact corrections at the final (dyadic) points
    std::vector<CRat> w = corrections(p, z);
    std::vector<RootDisc> discs(d);
    std::vector<Rat> rad2(d);
    for (size_t i = 0; i < d; ++i) {
        Iv r = sqrt_point(cabs2(w[i]), work_bits);
        Rat radius = round_up(r.hi * Rat(static_cast<long>(d)), work_bits);
        discs[i] = {z[i].re, z[i].im, radius};
        rad2[i] = radius * radius;
    }
    for (size_t i = 0; i < d; ++i) {
        if (discs[i].radius > target * Rat(static_cast<long>(d))) return std::nullopt;
        for (size_t j = i + 1; j < d; ++j) {
            Rat dist2 = cabs2(csub(z[i], z[j]));
            Rat rsum = discs[i].radius + discs[j].radius;
            if (!(dist2 > rsum * rsum)) return std::nullopt;  // overlap: not isolated
        }
    }
    return discs;
}

}  // namespace

std::vector<RootDisc> certified_roots(const PolyZ& p, long bits) {
    long deg = poly_degree(p);
    if (deg < 1) throw std::invalid_argument("certified_roots: constant polynomial");
    if (deg == 1) {
        Rat root = make_rat(-p[0], p[1]);
        return {RootDisc{root, Rat(0), Rat(0)}};
    }
    for (long work = std::max<long>(64, bits + 32); work <= 65536; work *= 2) {
        if (auto discs = try_certify(p, bits, work)) return *discs;
    }
    throw std::runtime_error("certified_roots: isolation failed to converge");
}

Iv disc_modulus(const RootDisc& d, long bits) {
    Iv center = sqrt_point(d.cx * d.cx + d.cy * d.cy, bits);
    Rat lo = center.lo - d.radius;
    if (lo < 0) lo = 0;
    return Iv(lo, center.hi + d.radius);
}

Iv bisect_root(const PolyZ& p, Rat lo, Rat hi, const Rat& eps) {
    PolyQ pq = poly_of(p);
    auto sign_at = [&](const Rat& x) { return sgn(poly_eval(pq, x)); };
    int slo = sign_at(lo);
    int shi = sign_at(hi);
    if (slo == 0) return Iv(lo, lo);
    if (shi == 0) return Iv(hi, hi);
    if (slo == shi) throw std::invalid_argument("bisect_root: no sign change");
    while (hi - lo > eps) {
        Rat mid = (lo + hi) / 2;
        int sm = sign_at(mid);
        if (sm == 0) return Iv(mid, mid);
        (sm == slo ? lo : hi) = mid;
    }
    return Iv(lo, hi);
}

Iv cubic_real_root(const BigInt& b, const BigInt& c, const BigInt& d, const Rat& eps) {
    PolyZ p = {d, c, b, BigInt(1)};
    Rat m = cauchy_bound(p);
    return bisect_root(p, -m, m, eps);
}

std::optional<Iv> largest_real_root(const PolyZ& p, const Rat& eps) {
    if (poly_degree(p) < 1) throw std::invalid_argument("largest_real_root: constant polynomial");
    PolyZ sf = poly_primitive(poly_squarefree_part(poly_of(p)));
    for (long bits = 32; bits <= 65536; bits *= 2) {
        auto discs = certified_roots(sf, bits);
        std::vector<Iv> real_roots;
        bool undecided = false;
        for (const auto& disc : discs) {
            if (abs(disc.cy) > disc.radius) continue;  // certainly non-real
            if (disc.radius == 0) {
                real_roots.emplace_back(disc.cx, disc.cx);
                continue;
            }
            // the disc meets the real axis; a sign change on the real slice
            // pins its single root to the axis
            Rat lo = disc.cx - disc.radius, hi = disc.cx + disc.radius;
            Rat plo = poly_eval(poly_of(sf), lo), phi = poly_eval(poly_of(sf), hi);
            if (sgn(plo) * sgn(phi) < 0)
                real_roots.push_back(bisect_root(sf, lo, hi, eps));
            else if (sgn(plo) == 0)
                real_roots.emplace_back(lo, lo);
            else if (sgn(phi) == 0)
                real_roots.emplace_back(hi, hi);
            else
                undecided = true;  // too coarse to tell; refine
        }
        if (undecided) continue;
        if (real_roots.empty()) return std::nullopt;
        Iv best = real_roots.front();
        for (const auto& r : real_roots)
            if (r.lo > best.lo) best = r;
        if (best.width() > eps) best = bisect_root(sf, best.lo, best.hi, eps);
        return best;
    }
    throw std::runtime_error("largest_real_root: could not separate real roots");
}

Iv mahler_log(const PolyZ& p, long bits) {
    if (poly_degree(p) < 1) throw std::invalid_argument("mahler_log: constant polynomial");
    Rat target = make_rat(1, 1) / Rat(BigInt(1) << bits);
    for (long work = std::max<long>(64, bits + 16); work <= 65536; work *= 2) {
        auto discs = certified_roots(p, work);
        Iv total = log_iv(Iv(Rat(abs(p.back()))), work);
        for (const auto& disc : discs) {
            Iv m = disc_modulus(disc, work);
            if (m.hi <= 1) continue;
            if (m.lo >= 1)
                total = total + log_iv(m, work);
            else
                total = total + Iv(Rat(0), log_iv(Iv(Rat(1), m.hi), work).hi);
        }
        total = round_out(total, work);
        if (total.width() < target) return total;
    }
    throw std::runtime_error("mahler_log: enclosure did not converge");
}

}  // namespace dyndeg
