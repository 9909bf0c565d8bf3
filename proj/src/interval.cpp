#include "dyndeg/interval.hpp"

namespace dyndeg {

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    auto epos = s.find_first_of("eE");
    if (slash != std::string::npos) {
        Rat q(s, 10);
        q.canonicalize();
        return q;
    }
    // decimal / scientific: mantissa [.fraction] [e exp]
    std::string mant = epos == std::string::npos ? s : s.substr(0, epos);
    long expo = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
    auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        expo -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("cannot parse rational: " + s);
    Rat q(BigInt(digits, 10), BigInt(1));
    if (expo > 0) q *= Rat(pow_ui(BigInt(10), static_cast<unsigned long>(expo)));
    if (expo < 0) q /= Rat(pow_ui(BigInt(10), static_cast<unsigned long>(-expo)));
    q.canonicalize();
    return q;
}

Rat round_down(const Rat& x, long bits) {
    BigInt scaled = x.get_num() << bits;
    return make_rat(floor_div(scaled, x.get_den()), BigInt(1) << bits);
}

Rat round_up(const Rat& x, long bits) {
    BigInt scaled = x.get_num() << bits;
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
    return make_rat(q, BigInt(1) << bits);
}

namespace {

Rat pow2(long bits) {
    return bits >= 0 ? Rat(BigInt(1) << bits) : make_rat(BigInt(1), BigInt(1) << (-bits));
}

// 2*atanh(t) = log((1+t)/(1-t)) for |t| <= 1/3, by the odd series with a
// geometric tail bound.
Iv two_atanh_small(const Rat& t0, long bits) {
    Rat eps = pow2(-(bits + 2));
    Iv t = round_out(Iv(t0), bits + 16);
    Iv t2 = t * t;
    Rat t2hi = t2.hi;
    Iv term = t;  // t^(2j+1)
    Iv sum = t;
    Rat term_abs = std::max(abs(t.lo), abs(t.hi));
    unsigned long j = 1;
    while (true) {
        term = round_out(term * t2, bits + 16);
        term_abs = term_abs * t2hi;
        Iv contrib = term * make_rat(1, 2 * j + 1);
        sum = round_out(sum + contrib, bits + 16);
        // tail <= |t|^(2j+3)/((2j+3)(1-t^2))
        Rat tail = term_abs * t2hi / (Rat(2 * j + 3) * (Rat(1) - t2hi));
        if (tail < eps / 2) {
            sum = Iv(sum.lo - tail, sum.hi + tail);
            break;
        }
        ++j;
        if (j > 100000) throw std::runtime_error("atanh series failed to converge");
    }
    return sum * Rat(2);
}

Iv log2_enclosure(long bits) { return two_atanh_small(make_rat(1, 3), bits); }

// atan(t) for |t| <= 1/2 by the alternating series; remainder bounded by the
// first omitted term.
Iv atan_small(const Rat& t0, long bits) {
    Rat eps = pow2(-(bits + 2));
    Iv t = round_out(Iv(t0), bits + 16);
    Iv t2 = t * t;
    Rat t2hi = t2.hi;
    Iv term = t;
    Iv sum = t;
    Rat term_abs = std::max(abs(t.lo), abs(t.hi));
    unsigned long j = 1;
    int sign = -1;
    while (true) {
        term = round_out(term * t2, bits + 16);
        term_abs = term_abs * t2hi;
        Rat next = term_abs / Rat(2 * j + 1);
        if (next < eps / 2) {
            sum = Iv(sum.lo - next, sum.hi + next);
            break;
        }
        sum = round_out(sum + term * make_rat(sign, 2 * j + 1), bits + 16);
        sign = -sign;
        ++j;
        if (j > 100000) throw std::runtime_error("atan series failed to converge");
    }
    return sum;
}

}  // namespace

Iv log_point(const Rat& x, long bits) {
    if (x <= 0) throw std::domain_error("log of nonpositive value");
    // reduce to m in [2/3, 4/3]: x = m * 2^k
    Rat m = x;
    long k = 0;
    while (m > make_rat(4, 3)) {
        m /= 2;
        ++k;
    }
    while (m < make_rat(2, 3)) {
        m *= 2;
        --k;
    }
    Iv r = two_atanh_small((m - 1) / (m + 1), bits + 4);
    if (k != 0) {
        Iv l2 = log2_enclosure(bits + 8);
        r = r + l2 * Rat(k);
    }
    return round_out(r, bits + 8);
}

Iv log_iv(const Iv& x, long bits) {
    if (x.lo <= 0) throw std::domain_error("log of interval reaching zero");
    return Iv(log_point(x.lo, bits).lo, log_point(x.hi, bits).hi);
}

Iv sqrt_point(const Rat& x, long bits) {
    if (x < 0) throw std::domain_error("sqrt of negative value");
    if (x == 0) return Iv(Rat(0));
    // sqrt(n/d) = sqrt(n*d)/d; scale by 4^bits for the requested precision
    BigInt nd = x.get_num() * x.get_den();
    BigInt s = isqrt(nd << (2 * bits));
    BigInt den = x.get_den() << bits;
    Rat lo = make_rat(s, den);
    Rat hi = make_rat(s + 1, den);
    return Iv(std::move(lo), std::move(hi));
}

Iv sqrt_iv(const Iv& x, long bits) {
    if (x.lo < 0) throw std::domain_error("sqrt of interval with negative part");
    return Iv(sqrt_point(x.lo, bits).lo, sqrt_point(x.hi, bits).hi);
}

Iv nth_root_point(const Rat& x, unsigned long k, long bits) {
    if (x < 0) throw std::domain_error("root of negative value");
    if (k == 0) throw std::invalid_argument("zeroth root");
    if (x == 0) return Iv(Rat(0));
    // (n/d)^(1/k) = (n*d^(k-1))^(1/k) / d
    BigInt scaled = x.get_num() * pow_ui(x.get_den(), k - 1);
    long shift = bits * static_cast<long>(k);
    BigInt s = iroot(scaled << shift, k);
    BigInt den = x.get_den() << bits;
    return Iv(make_rat(s, den), make_rat(s + 1, den));
}

Iv nth_root_iv(const Iv& x, unsigned long k, long bits) {
    if (x.lo < 0) throw std::domain_error("root of interval with negative part");
    return Iv(nth_root_point(x.lo, k, bits).lo, nth_root_point(x.hi, k, bits).hi);
}

Iv pi_iv(long bits) {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    Iv a = atan_small(make_rat(1, 5), bits + 8);
    Iv b = atan_small(make_rat(1, 239), bits + 8);
    return round_out(a * Rat(16) - b * Rat(4), bits + 8);
}

Iv atan_point(const Rat& x, long bits) {
    if (x < 0) return -atan_point(-x, bits);
    if (x > 1) {
        // atan(x) = pi/2 - atan(1/x)
        Iv p = pi_iv(bits + 4);
        return round_out(p * make_rat(1, 2) - atan_point(Rat(1) / x, bits + 4), bits + 8);
    }
    if (x <= make_rat(2, 5)) return atan_small(x, bits);
    // atan(x) = pi/4 + atan((x-1)/(x+1)), argument in (-3/7, 0]
    Iv p = pi_iv(bits + 4);
    return round_out(p * make_rat(1, 4) + atan_small((x - 1) / (x + 1), bits + 4), bits + 8);
}

Iv atan_iv(const Iv& x, long bits) {
    return Iv(atan_point(x.lo, bits).lo, atan_point(x.hi, bits).hi);
}

Iv arg_iv(const Iv& re, const Iv& im, long bits) {
    if (im.lo == 0 && im.hi == 0) {
        if (re.gt(Rat(0))) return Iv(Rat(0));
        if (re.lt(Rat(0))) return pi_iv(bits);
        throw std::domain_error("argument of a box containing zero");
    }
    if (im.gt(Rat(0))) {
        // arg = pi/2 - atan(re/im)
        Iv p = pi_iv(bits + 4);
        return round_out(p * make_rat(1, 2) - atan_iv(re / im, bits + 4), bits + 8);
    }
    if (im.lt(Rat(0))) {
        Iv p = pi_iv(bits + 4);
        return round_out(-(p * make_rat(1, 2)) - atan_iv(re / im, bits + 4), bits + 8);
    }
    if (re.gt(Rat(0))) return round_out(atan_iv(im / re, bits + 4), bits + 8);
    throw std::domain_error("argument of a box straddling the branch cut");
}

Iv abs_log_iv(const Iv& re, const Iv& im, long bits) {
    Iv sq = re * re + im * im;
    if (!sq.gt(Rat(0))) throw std::domain_error("log of a box containing zero");
    // log|z| = log(|z|^2)/2
    Iv lg = log_iv(sq, bits + 4) * make_rat(1, 2);
    Iv ag = arg_iv(re, im, bits + 4);
    Iv s = lg * lg + ag * ag;
    return round_out(sqrt_iv(Iv(std::max(Rat(0), s.lo), s.hi), bits + 4), bits + 8);
}

}  // namespace dyndeg
