#include "dyndeg/polynomial.hpp"

#include <algorithm>

namespace dyndeg {

void poly_trim(PolyQ& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

PolyQ poly_add(const PolyQ& a, const PolyQ& b) {
    PolyQ r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

PolyQ poly_sub(const PolyQ& a, const PolyQ& b) {
    PolyQ r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    poly_trim(r);
    return r;
}

PolyQ poly_mul(const PolyQ& a, const PolyQ& b) {
    if (a.empty() || b.empty()) return {};
    PolyQ r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

PolyQ poly_scale(const PolyQ& a, const Rat& s) {
    if (s == 0) return {};
    PolyQ r = a;
    for (auto& c : r) c *= s;
    return r;
}

PolyQ poly_derivative(const PolyQ& p) {
    if (p.size() <= 1) return {};
    PolyQ r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rat(static_cast<long>(i));
    poly_trim(r);
    return r;
}

std::pair<PolyQ, PolyQ> poly_divmod(const PolyQ& a, const PolyQ& b) {
    if (b.empty()) throw std::invalid_argument("polynomial division by zero");
    PolyQ rem = a, quo;
    if (a.size() >= b.size()) quo.assign(a.size() - b.size() + 1, Rat(0));
    while (!rem.empty() && rem.size() >= b.size()) {
        size_t k = rem.size() - b.size();
        Rat s = rem.back() / b.back();
        quo[k] = s;
        for (size_t i = 0; i < b.size(); ++i) rem[i + k] -= s * b[i];
        poly_trim(rem);
    }
    poly_trim(quo);
    return {std::move(quo), std::move(rem)};
}

PolyQ poly_gcd(PolyQ a, PolyQ b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        auto [q, r] = poly_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        Rat inv = Rat(1) / a.back();
        for (auto& c : a) c *= inv;
    }
    return a;
}

PolyQ poly_squarefree_part(const PolyQ& p) {
    if (p.size() <= 1) return p;
    PolyQ g = poly_gcd(p, poly_derivative(p));
    auto [q, r] = poly_divmod(p, g);
    if (!poly_is_zero(r)) throw std::logic_error("squarefree part: non-exact division");
    return q;
}

Rat poly_eval(const PolyQ& p, const Rat& x) {
    Rat acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

BigInt poly_eval(const PolyZ& p, const BigInt& x) {
    BigInt acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Iv poly_eval_iv(const PolyQ& p, const Iv& x) {
    Iv acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Iv poly_eval_iv(const PolyZ& p, const Iv& x) {
    Iv acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

PolyZ poly_primitive(const PolyQ& p) {
    if (p.empty()) return {};
    BigInt den(1);
    for (const auto& c : p) den = lcm(den, c.get_den());
    PolyZ ip;
    ip.reserve(p.size());
    for (const auto& c : p) ip.push_back(c.get_num() * (den / c.get_den()));
    BigInt g(0);
    for (const auto& c : ip) g = gcd(g, c);
    if (ip.back() < 0) g = -g;
    for (auto& c : ip) c /= g;
    return ip;
}

bool poly_is_integer(const PolyQ& p) {
    return std::all_of(p.begin(), p.end(), [](const Rat& c) { return c.get_den() == 1; });
}

BigInt cubic_discriminant_monic(const BigInt& b, const BigInt& c, const BigInt& d) {
    return 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d;
}

BigInt cubic_discriminant(const PolyQ& p) {
    if (poly_degree(p) != 3 || p[3] != 1 || !poly_is_integer(p))
        throw std::invalid_argument("expected a monic integer cubic");
    return cubic_discriminant_monic(p[2].get_num(), p[1].get_num(), p[0].get_num());
}

bool cubic_irreducible(const PolyQ& p) {
    if (poly_degree(p) != 3 || p[3] != 1 || !poly_is_integer(p))
        throw std::invalid_argument("expected a monic integer cubic");
    BigInt d = p[0].get_num();
    if (d == 0) return false;  // root 0
    // rational roots of a monic integer cubic are integer divisors of the
    // constant term
    BigInt ad = abs(d);
    PolyZ ip = poly_primitive(p);
    for (BigInt k(1); k * k <= ad; ++k) {
        if (ad % k != 0) continue;
        for (const BigInt& divisor : {BigInt(k), BigInt(ad / k)}) {
            if (poly_eval(ip, divisor) == 0 || poly_eval(ip, BigInt(-divisor)) == 0) return false;
        }
    }
    return true;
}

const std::vector<PolyZ>& cyclotomics_degree_le6() {
    static const std::vector<PolyZ> table = {
        {-1, 1},                    // k=1
        {1, 1},                     // k=2
        {1, 1, 1},                  // k=3
        {1, 0, 1},                  // k=4
        {1, 1, 1, 1, 1},            // k=5
        {1, -1, 1},                 // k=6
        {1, 1, 1, 1, 1, 1, 1},      // k=7
        {1, 0, 0, 0, 1},            // k=8
        {1, 0, 0, 1, 0, 0, 1},      // k=9
        {1, -1, 1, -1, 1},          // k=10
        {1, 0, -1, 0, 1},           // k=12
        {1, -1, 1, -1, 1, -1, 1},   // k=14
        {1, 0, 0, -1, 0, 0, 1},     // k=18
    };
    return table;
}

}  // namespace dyndeg
