#pragma once

#include <array>
#include <memory>
#include <mutex>

#include "dyndeg/polynomial.hpp"
#include "dyndeg/roots.hpp"

namespace dyndeg {

class KElem;

// Splitting field K of a monic integer irreducible cubic with negative
// discriminant, realized as Q(theta)[delta] with theta the real root and
// delta^2 = disc. [K:Q] = 6 and complex conjugation under the embedding
// theta -> real root, delta -> +i*sqrt|disc| is delta -> -delta.
class KField : public std::enable_shared_from_this<KField> {
public:
    static std::shared_ptr<const KField> make(const PolyQ& cubic);

    const PolyQ& cubic() const { return cubic_; }
    const BigInt& disc() const { return disc_; }
    BigInt b() const { return cubic_[2].get_num(); }
    BigInt c() const { return cubic_[1].get_num(); }
    BigInt d() const { return cubic_[0].get_num(); }

    // enclosure of the real root, width <= 2^-bits (monotone refinement)
    Iv theta_enclosure(long bits) const;
    // enclosure of sqrt|disc|
    Iv sqrt_abs_disc(long bits) const;

    KElem zero() const;
    KElem one() const;
    KElem from_rat(const Rat& r) const;
    KElem theta() const;
    KElem delta() const;

private:
    explicit KField(PolyQ cubic, BigInt disc);
    PolyQ cubic_;
    BigInt disc_;
    mutable std::mutex mu_;
    mutable Rat theta_lo_, theta_hi_;  // current bracket, refined on demand

    friend class KElem;
};

struct ThetaPart {
    // a0 + a1*theta + a2*theta^2
    std::array<Rat, 3> a{Rat(0), Rat(0), Rat(0)};
};

// Element of K over the basis {1, theta, theta^2, delta, theta*delta,
// theta^2*delta}; stored as p + q*delta with p, q in Q(theta).
class KElem {
public:
    KElem() : field_(nullptr) {}
    KElem(std::shared_ptr<const KField> f, ThetaPart p, ThetaPart q)
        : field_(std::move(f)), p_(std::move(p)), q_(std::move(q)) {}

    const std::shared_ptr<const KField>& field() const { return field_; }
    std::array<Rat, 6> coords() const;
    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;  // requires is_rational()

    KElem operator-() const;
    KElem operator+(const KElem& o) const;
    KElem operator-(const KElem& o) const;
    KElem operator*(const KElem& o) const;
    KElem operator/(const KElem& o) const;
    KElem inverse() const;
    bool operator==(const KElem& o) const;

    // negates the delta-part; a field automorphism equal to complex
    // conjugation under the fixed embedding
    KElem conj() const;

    friend class KField;
    const ThetaPart& p() const { return p_; }
    const ThetaPart& q() const { return q_; }

private:
    std::shared_ptr<const KField> field_;
    ThetaPart p_, q_;
};

// theta and the conjugate complex pair (xi_plus has positive imaginary part
// under the embedding); all three satisfy cubic(.) = 0 exactly in K.
struct CubicRoots {
    KElem theta, xi_plus, xi_minus;
};
CubicRoots roots_in_field(const std::shared_ptr<const KField>& F);

// monic minimal polynomial over Q, via the squarefree part of the
// characteristic polynomial of the 6x6 multiplication matrix
PolyQ min_poly(const KElem& a);

// unit of the ring of integers of K: integral minimal polynomial with
// constant term +-1
bool is_unit(const KElem& a);

// minimal polynomial equal to some cyclotomic of degree <= 6
bool is_root_of_unity(const KElem& a);

// certified complex enclosure of the embedded element, widths <= eps
struct ComplexBox {
    Iv re, im;
};
ComplexBox embed(const KElem& a, const Rat& eps);

// the paper's relative height h = [K:Q] * absolute height, via the Mahler
// measure of the primitive integer minimal polynomial
Iv height_rel(const KElem& a, const Rat& eps);

// h'(a) = (1/6) max{ h(a), |log a|, 1 }, principal branch
Iv h_prime(const KElem& a, const Rat& eps);

// 6x6 rational multiplication matrix (basis as above) and its characteristic
// polynomial; exposed for tests
std::array<std::array<Rat, 6>, 6> mult_matrix(const KElem& a);
PolyQ char_poly6(const std::array<std::array<Rat, 6>, 6>& m);
Rat field_norm(const KElem& a);

}  // namespace dyndeg
