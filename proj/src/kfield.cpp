#include "dyndeg/kfield.hpp"

#include <algorithm>

namespace dyndeg {

namespace {

ThetaPart tp_add(const ThetaPart& x, const ThetaPart& y) {
    ThetaPart r;
    for (int i = 0; i < 3; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

ThetaPart tp_sub(const ThetaPart& x, const ThetaPart& y) {
    ThetaPart r;
    for (int i = 0; i < 3; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

ThetaPart tp_neg(const ThetaPart& x) {
    ThetaPart r;
    for (int i = 0; i < 3; ++i) r.a[i] = -x.a[i];
    return r;
}

ThetaPart tp_scale(const ThetaPart& x, const Rat& s) {
    ThetaPart r;
    for (int i = 0; i < 3; ++i) r.a[i] = x.a[i] * s;
    return r;
}

bool tp_zero(const ThetaPart& x) { return x.a[0] == 0 && x.a[1] == 0 && x.a[2] == 0; }

// multiply mod theta^3 = -b theta^2 - c theta - d
ThetaPart tp_mul(const ThetaPart& x, const ThetaPart& y, const KField& F) {
    Rat prod[5] = {Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) prod[i + j] += x.a[i] * y.a[j];
    Rat b(F.b()), c(F.c()), d(F.d());
    // theta^4 = (b^2 - c) theta^2 + (bc - d) theta + bd
    prod[2] += prod[4] * (b * b - c);
    prod[1] += prod[4] * (b * c - d);
    prod[0] += prod[4] * (b * d);
    prod[2] -= prod[3] * b;
    prod[1] -= prod[3] * c;
    prod[0] -= prod[3] * d;
    return ThetaPart{{prod[0], prod[1], prod[2]}};
}

// inverse in Q(theta) by the extended Euclidean algorithm against the cubic
ThetaPart tp_inv(const ThetaPart& x, const KField& F) {
    if (tp_zero(x)) throw std::domain_error("inverse of zero in Q(theta)");
    PolyQ r0 = F.cubic();
    PolyQ r1 = {x.a[0], x.a[1], x.a[2]};
    poly_trim(r1);
    PolyQ s0 = {};        // coefficient of r1 in r0
    PolyQ s1 = {Rat(1)};  // coefficient of r1 in r1
    while (!poly_is_zero(r1)) {
        auto [q, r] = poly_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        PolyQ s2 = poly_sub(s0, poly_mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd, constant since the cubic is irreducible
    if (poly_degree(r0) != 0) throw std::logic_error("reducible cubic in Q(theta) inverse");
    PolyQ u = poly_scale(s0, Rat(1) / r0[0]);
    u.resize(3, Rat(0));
    return ThetaPart{{u[0], u[1], u[2]}};
}

Iv tp_embed(const ThetaPart& x, const Iv& theta) {
    Iv acc(x.a[2]);
    acc = acc * theta + x.a[1];
    acc = acc * theta + x.a[0];
    return acc;
}

}  // namespace

KField::KField(PolyQ cubic, BigInt disc) : cubic_(std::move(cubic)), disc_(std::move(disc)) {
    // initial bracket for the single real root
    Rat m(1);
    for (int i = 0; i < 3; ++i) m = std::max(m, abs(cubic_[i]));
    theta_lo_ = -(m + 1);
    theta_hi_ = m + 1;
}

std::shared_ptr<const KField> KField::make(const PolyQ& cubic) {
    if (poly_degree(cubic) != 3 || cubic[3] != 1 || !poly_is_integer(cubic))
        throw std::invalid_argument("KField: expected a monic integer cubic");
    if (!cubic_irreducible(cubic)) throw std::invalid_argument("KField: cubic is reducible");
    BigInt D = cubic_discriminant(cubic);
    if (D >= 0)
        throw std::invalid_argument("KField: only cubics with negative discriminant supported");
    return std::shared_ptr<const KField>(new KField(cubic, D));
}

Iv KField::theta_enclosure(long bits) const {
    std::lock_guard<std::mutex> lock(mu_);
    Rat eps = make_rat(1, 1) / Rat(BigInt(1) << bits);
    if (theta_hi_ - theta_lo_ > eps) {
        Iv refined = bisect_root(poly_primitive(cubic_), theta_lo_, theta_hi_, eps);
        theta_lo_ = refined.lo;
        theta_hi_ = refined.hi;
    }
    return Iv(theta_lo_, theta_hi_);
}

Iv KField::sqrt_abs_disc(long bits) const { return sqrt_point(Rat(-disc_), bits); }

KElem KField::zero() const { return from_rat(Rat(0)); }
KElem KField::one() const { return from_rat(Rat(1)); }

KElem KField::from_rat(const Rat& r) const {
    ThetaPart p;
    p.a[0] = r;
    return KElem(shared_from_this(), p, ThetaPart{});
}

KElem KField::theta() const {
    ThetaPart p;
    p.a[1] = 1;
    return KElem(shared_from_this(), p, ThetaPart{});
}

KElem KField::delta() const {
    ThetaPart q;
    q.a[0] = 1;
    return KElem(shared_from_this(), ThetaPart{}, q);
}

std::array<Rat, 6> KElem::coords() const {
    return {p_.a[0], p_.a[1], p_.a[2], q_.a[0], q_.a[1], q_.a[2]};
}

bool KElem::is_zero() const { return tp_zero(p_) && tp_zero(q_); }

bool KElem::is_rational() const {
    return p_.a[1] == 0 && p_.a[2] == 0 && tp_zero(q_);
}

Rat KElem::rational_value() const {
    if (!is_rational()) throw std::logic_error("KElem is not rational");
    return p_.a[0];
}

KElem KElem::operator-() const { return KElem(field_, tp_neg(p_), tp_neg(q_)); }

KElem KElem::operator+(const KElem& o) const {
    return KElem(field_, tp_add(p_, o.p_), tp_add(q_, o.q_));
}

KElem KElem::operator-(const KElem& o) const {
    return KElem(field_, tp_sub(p_, o.p_), tp_sub(q_, o.q_));
}

KElem KElem::operator*(const KElem& o) const {
    const KField& F = *field_;
    ThetaPart pp = tp_mul(p_, o.p_, F);
    ThetaPart qq = tp_mul(q_, o.q_, F);
    ThetaPart p = tp_add(pp, tp_scale(qq, Rat(F.disc())));
    ThetaPart q = tp_add(tp_mul(p_, o.q_, F), tp_mul(q_, o.p_, F));
    return KElem(field_, p, q);
}

KElem KElem::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in K");
    const KField& F = *field_;
    // (p + q d)^-1 = (p - q d) / (p^2 - q^2 D)
    ThetaPart den = tp_sub(tp_mul(p_, p_, F), tp_scale(tp_mul(q_, q_, F), Rat(F.disc())));
    ThetaPart deninv = tp_inv(den, F);
    return KElem(field_, tp_mul(p_, deninv, F), tp_mul(tp_neg(q_), deninv, F));
}

KElem KElem::operator/(const KElem& o) const { return *this * o.inverse(); }

bool KElem::operator==(const KElem& o) const { return (*this - o).is_zero(); }

KElem KElem::conj() const { return KElem(field_, p_, tp_neg(q_)); }

CubicRoots roots_in_field(const std::shared_ptr<const KField>& F) {
    KElem theta = F->theta();
    KElem b = F->from_rat(Rat(F->b()));
    KElem c = F->from_rat(Rat(F->c()));
    // p'(theta) = 3 theta^2 + 2b theta + c, nonzero since the cubic is
    // squarefree
    KElem pprime = F->from_rat(Rat(3)) * theta * theta + F->from_rat(Rat(2)) * b * theta + c;
    KElem half = F->from_rat(make_rat(1, 2));
    KElem delta_over = F->delta() * pprime.inverse();
    KElem minus_b_theta = -(b + theta);
    KElem xi_plus = (minus_b_theta + delta_over) * half;
    KElem xi_minus = (minus_b_theta - delta_over) * half;
    return CubicRoots{theta, xi_plus, xi_minus};
}

std::array<std::array<Rat, 6>, 6> mult_matrix(const KElem& a) {
    const auto& F = a.field();
    std::array<std::array<Rat, 6>, 6> m;
    std::array<KElem, 6> basis = {F->one(),   F->theta(),          F->theta() * F->theta(),
                                  F->delta(), F->theta() * F->delta(),
                                  F->theta() * F->theta() * F->delta()};
    for (int j = 0; j < 6; ++j) {
        std::array<Rat, 6> col = (a * basis[j]).coords();
        for (int i = 0; i < 6; ++i) m[i][j] = col[i];
    }
    return m;
}

PolyQ char_poly6(const std::array<std::array<Rat, 6>, 6>& m) {
    // Faddeev-LeVerrier
    constexpr int n = 6;
    std::array<std::array<Rat, 6>, 6> N{};
    for (int i = 0; i < n; ++i) N[i][i] = 1;
    std::vector<Rat> cs(n + 1, Rat(0));
    cs[0] = 1;
    for (int k = 1; k <= n; ++k) {
        std::array<std::array<Rat, 6>, 6> MN{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rat s(0);
                for (int l = 0; l < n; ++l) s += m[i][l] * N[l][j];
                MN[i][j] = s;
            }
        Rat tr(0);
        for (int i = 0; i < n; ++i) tr += MN[i][i];
        cs[k] = -tr / Rat(k);
        N = MN;
        for (int i = 0; i < n; ++i) N[i][i] += cs[k];
    }
    // char(x) = x^6 + cs[1] x^5 + ... + cs[6]; return lowest degree first
    PolyQ p(n + 1);
    for (int k = 0; k <= n; ++k) p[n - k] = cs[k];
    return p;
}

PolyQ min_poly(const KElem& a) {
    PolyQ cp = char_poly6(mult_matrix(a));
    // the characteristic polynomial is a power of the (irreducible) minimal
    // polynomial, so the squarefree part is exactly it
    return poly_squarefree_part(cp);
}

Rat field_norm(const KElem& a) {
    // N(a) = det(mult matrix) = char(0) in even dimension
    return char_poly6(mult_matrix(a))[0];
}

bool is_unit(const KElem& a) {
    if (a.is_zero()) throw std::invalid_argument("is_unit of zero");
    PolyQ mp = min_poly(a);
    if (!poly_is_integer(mp)) return false;
    return abs(mp[0].get_num()) == 1;
}

bool is_root_of_unity(const KElem& a) {
    if (a.is_zero()) throw std::invalid_argument("is_root_of_unity of zero");
    PolyQ mp = min_poly(a);
    if (!poly_is_integer(mp)) return false;
    PolyZ mz = poly_primitive(mp);
    for (const PolyZ& cyc : cyclotomics_degree_le6())
        if (mz == cyc) return true;
    return false;
}

ComplexBox embed(const KElem& a, const Rat& eps) {
    const auto& F = a.field();
    for (long bits = 32; bits <= 65536; bits *= 2) {
        Iv theta = F->theta_enclosure(bits);
        Iv sq = F->sqrt_abs_disc(bits);
        Iv re = tp_embed(a.p(), theta);
        Iv im = tp_embed(a.q(), theta) * sq;
        if (re.width() <= eps && im.width() <= eps)
            return ComplexBox{round_out(re, 2 * bits), round_out(im, 2 * bits)};
    }
    throw std::runtime_error("embed: enclosure did not converge");
}

Iv height_rel(const KElem& a, const Rat& eps) {
    if (a.is_zero()) throw std::invalid_argument("height of zero");
    PolyQ mp = min_poly(a);
    long deg = poly_degree(mp);
    PolyZ ip = poly_primitive(mp);
    // h_rel = (6/deg) * log Mahler(ip)
    for (long bits = 24; bits <= 65536; bits *= 2) {
        Iv m = mahler_log(ip, bits);
        Iv h = m * make_rat(6, deg);
        if (h.width() <= eps) return h;
    }
    throw std::runtime_error("height_rel: enclosure did not converge");
}

Iv h_prime(const KElem& a, const Rat& eps) {
    if (a.is_zero()) throw std::invalid_argument("h' of zero");
    Rat tight = eps / 8;
    Iv h = height_rel(a, tight);
    for (long bits = 32; bits <= 65536; bits *= 2) {
        ComplexBox z = embed(a, make_rat(1, 1) / Rat(BigInt(1) << bits));
        Iv absl;
        try {
            absl = abs_log_iv(z.re, z.im, bits);
        } catch (const std::domain_error&) {
            continue;  // box still straddles the branch cut; refine
        }
        Rat lo = std::max(std::max(h.lo, absl.lo), Rat(1));
        Rat hi = std::max(std::max(h.hi, absl.hi), Rat(1));
        Iv result = Iv(lo, hi) * make_rat(1, 6);
        if (result.width() <= eps) return result;
    }
    throw std::runtime_error("h_prime: enclosure did not converge");
}

}  // namespace dyndeg
