#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "rootclust/errors.hpp"

namespace rootclust {

// Exact binary floating-point value mantissa * 2^exponent with an unbounded
// mantissa. Canonical form: mantissa odd or zero, and zero carries exponent 0,
// so structural equality is value equality. Addition, subtraction and
// multiplication are exact; nothing here ever rounds implicitly.
class Dyadic {
public:
    Dyadic() : man_(0), exp_(0) {}
    Dyadic(long v) : man_(v), exp_(0) { canonicalize(); }  // NOLINT: implicit by design
    Dyadic(mpz_class mantissa, long exponent) : man_(std::move(mantissa)), exp_(exponent) {
        canonicalize();
    }

    static Dyadic pow2(long e) { return Dyadic(1, e); }

    // Nearest point of the grid 2^-prec; |result - q| <= 2^-prec.
    static Dyadic from_mpq_rounded(const mpq_class& q, long prec);
    // Exact conversion when the reduced denominator is a power of two.
    static std::optional<Dyadic> from_mpq_exact(const mpq_class& q);

    const mpz_class& mantissa() const { return man_; }
    long exponent() const { return exp_; }
    bool is_zero() const { return man_ == 0; }
    int sign() const { return mpz_sgn(man_.get_mpz_t()); }
    std::size_t mantissa_bits() const {
        return is_zero() ? 0 : mpz_sizeinbase(man_.get_mpz_t(), 2);
    }
    // e such that 2^e <= |x| < 2^{e+1}; requires a nonzero value.
    long floor_log2() const;

    Dyadic operator-() const;
    Dyadic abs() const;
    Dyadic mul_pow2(long k) const;  // exact scaling by 2^k
    Dyadic sqr() const { return *this * *this; }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    friend int cmp(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp_ == b.exp_ && a.man_ == b.man_;
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

    double to_double() const;
    mpq_class to_mpq() const;

    // Serialized form "m*2^e" (decimal mantissa and exponent), e.g. "3*2^-2".
    std::string to_string() const;
    static std::optional<Dyadic> parse(std::string_view s);
    // Accepts "m*2^e", "2^-k" shorthand, or a plain decimal string. Decimals
    // that are not exactly representable are rounded at `decimal_prec` bits.
    static std::optional<Dyadic> parse_flexible(std::string_view s, long decimal_prec = 64);

private:
    void canonicalize();

    mpz_class man_;
    long exp_;
};

// Value within 2^-L of x whose mantissa bit-length is minimal subject to that
// bound (shortest dyadic in [x - 2^-L, x + 2^-L]).
Dyadic round_to(const Dyadic& x, long L);

// Upper bound on x with a mantissa of at most 16 bits; used to keep ball radii
// cheap. Requires x >= 0.
Dyadic round_up_coarse(const Dyadic& x);

// floor(a / b) as an integer; b nonzero.
mpz_class floor_div(const Dyadic& a, const Dyadic& b);

// Directed dyadic division onto the grid 2^-L: result <= a/b (down) or
// >= a/b (up), within 2^-L of the true quotient. b nonzero.
Dyadic div_down(const Dyadic& a, const Dyadic& b, long L);
Dyadic div_up(const Dyadic& a, const Dyadic& b, long L);

struct DyadicInterval {
    Dyadic lo, hi;
};

// lo <= sqrt(x) <= hi with hi - lo <= 2^{1-prec} * sqrt(x) (relative
// bracketing, so tiny values stay tight). Requires x >= 0.
DyadicInterval sqrt_bracket(const Dyadic& x, long prec);

struct ComplexDyadic {
    Dyadic re, im;

    ComplexDyadic() = default;
    ComplexDyadic(Dyadic r, Dyadic i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    ComplexDyadic conj() const { return {re, -im}; }
    Dyadic norm_sqr() const { return re.sqr() + im.sqr(); }  // |z|^2, exact
    ComplexDyadic mul_pow2(long k) const { return {re.mul_pow2(k), im.mul_pow2(k)}; }

    friend ComplexDyadic operator+(const ComplexDyadic& a, const ComplexDyadic& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexDyadic operator-(const ComplexDyadic& a, const ComplexDyadic& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexDyadic operator*(const ComplexDyadic& a, const ComplexDyadic& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexDyadic operator-(const ComplexDyadic& a) { return {-a.re, -a.im}; }
    friend bool operator==(const ComplexDyadic& a, const ComplexDyadic& b) {
        return a.re == b.re && a.im == b.im;
    }
};

// Complex disc enclosure: every exact value consistent with a Ball lies within
// distance `radius` of `center`. Centers stay exact dyadics; radii are kept as
// coarse upper bounds (16-bit mantissas, rounded up).
class Ball {
public:
    Ball() = default;
    explicit Ball(ComplexDyadic center, Dyadic radius = Dyadic(0))
        : c_(std::move(center)), r_(std::move(radius)) {}
    static Ball exact(ComplexDyadic z) { return Ball(std::move(z)); }
    static Ball exact_real(Dyadic x) { return Ball(ComplexDyadic(std::move(x), Dyadic(0))); }

    const ComplexDyadic& center() const { return c_; }
    const Dyadic& radius() const { return r_; }
    bool is_exact() const { return r_.is_zero(); }

    friend Ball operator+(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a, const Ball& b);
    friend Ball operator*(const Ball& a, const Ball& b);
    Ball& operator+=(const Ball& o) { return *this = *this + o; }

    Ball scale(const Dyadic& s) const;              // multiply by an exact real
    Ball scale_complex(const ComplexDyadic& s) const;  // multiply by an exact complex
    Ball mul_pow2(long k) const { return Ball(c_.mul_pow2(k), r_.mul_pow2(k)); }

    // Round the center onto the grid 2^-L, absorbing the motion into the radius.
    Ball rounded(long L) const;

    // [lo, hi] bracketing |z| over the ball; the center-magnitude bracket has
    // absolute width <= 2^{-prec-1} (the ball radius widens it further).
    DyadicInterval magnitude_interval(long prec) const;
    // Cheap 16-bit upper bound on |z| over the ball.
    Dyadic magnitude_upper() const;

    bool contains_zero() const { return c_.norm_sqr() <= r_.sqr(); }
    bool contains(const ComplexDyadic& p) const {
        return (p - c_).norm_sqr() <= r_.sqr();
    }

    // Enclosure of 1/z; throws DivisorStraddlesZero when the ball meets zero.
    Ball reciprocal(long prec) const;

private:
    ComplexDyadic c_;
    Dyadic r_;  // >= 0
};

inline Ball div_ball(const Ball& a, const Ball& b, long prec) {
    return a * b.reciprocal(prec);
}

// Horner evaluation of sum c_i z^i; the result contains the exact value for
// every choice of exact inputs consistent with the argument balls.
Ball ball_horner(const std::vector<Ball>& coeffs, const Ball& z);

}  // namespace rootclust
