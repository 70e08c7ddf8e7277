#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "rootclust/dyadic.hpp"

namespace rootclust {

struct ComplexRational {
    mpq_class re, im;

    ComplexRational() : re(0), im(0) {}
    ComplexRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    static ComplexRational from_dyadic(const ComplexDyadic& z) {
        return {z.re.to_mpq(), z.im.to_mpq()};
    }

    bool is_zero() const { return re == 0 && im == 0; }
    mpq_class norm_sqr() const { return re * re + im * im; }

    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

struct RootSpec {
    ComplexRational z;
    int multiplicity = 1;
};

// A complex number known only through an oracle: approx(L) is within 2^-L of
// the represented value, and its bit-size stays O(tau + L).
class OracularNumber {
public:
    using Fn = std::function<ComplexDyadic(long)>;

    OracularNumber() = default;
    OracularNumber(Fn fn, long tau) : fn_(std::move(fn)), tau_(tau) {}

    static OracularNumber from_rational(const ComplexRational& q);
    static OracularNumber from_dyadic(const ComplexDyadic& z);

    ComplexDyadic approx(long L) const { return fn_(L); }
    Ball ball(long L) const { return Ball(fn_(L), Dyadic::pow2(-L)); }
    long tau() const { return tau_; }

    OracularNumber scaled_pow2(long k) const;

private:
    Fn fn_;
    long tau_ = 0;
};

// Degree-n polynomial whose coefficients answer approximation requests at any
// absolute precision. `tau_f` bounds log2 of the largest coefficient
// magnitude. When built via from_roots the exact roots ride along privately
// for the validation oracle; the solver never reads them.
class OraclePolynomial {
public:
    OraclePolynomial(std::vector<OracularNumber> coeffs, long tau_f, bool lcf_scaled);

    static OraclePolynomial from_exact(const std::vector<ComplexRational>& coeffs);
    static OraclePolynomial from_roots(const std::vector<RootSpec>& roots,
                                       const mpq_class& lcf);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const OracularNumber& coeff(int i) const { return coeffs_[static_cast<size_t>(i)]; }
    Ball coeff_ball(int i, long L) const { return coeff(i).ball(L); }
    long tau_f() const { return tau_f_; }
    bool lcf_scaled() const { return lcf_scaled_; }

    const std::vector<RootSpec>* known_roots() const {
        return roots_ ? roots_.get() : nullptr;
    }
    OraclePolynomial with_roots(std::vector<RootSpec> roots) const;

private:
    std::vector<OracularNumber> coeffs_;
    long tau_f_ = 0;
    bool lcf_scaled_ = false;
    std::shared_ptr<const std::vector<RootSpec>> roots_;
};

// Coefficients of F(m + r z) as balls at a stated working precision. A
// uniform power-of-two rescale (recorded in scale_log2) keeps the largest
// coefficient magnitude near 1; Pellet-style term comparisons are unaffected.
struct LocalPolynomial {
    std::vector<Ball> coeffs;
    ComplexDyadic shift_center;
    Dyadic shift_radius;
    long precision = 0;
    long scale_log2 = 0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    // Coefficient with the uniform rescale undone (contains the exact
    // Taylor coefficient F_i(m) r^i when the polynomial came from localize).
    Ball logical_coeff(int i) const {
        return coeffs[static_cast<std::size_t>(i)].mul_pow2(-scale_log2);
    }
};

// Rescale all coefficients of F by a power of two so |lcf| lands in [1/4, 1).
// Detects lcf != 0 by precision doubling; roots are unchanged.
OraclePolynomial normalize_leading(const OraclePolynomial& F);

// Taylor coefficients of F(m + r z); each ball contains the exact coefficient
// and, after the uniform rescale, has radius <= 2^-L.
LocalPolynomial localize(const OraclePolynomial& F, const ComplexDyadic& m,
                         const Dyadic& r, long L);

// One root-squaring step: for p = pe(z^2) + z po(z^2) the result is
// (-1)^n (pe^2 - z po^2), whose roots are exactly the squares of p's roots,
// followed by the uniform power-of-two rescale.
LocalPolynomial graeffe_step(const LocalPolynomial& p);
LocalPolynomial graeffe_iterate(const LocalPolynomial& p, int count);

// ceil(log2(1 + log2 n)) + 4, the iteration count the counting tests use.
int graeffe_default_iterations(int degree);

// F(x) and F'(x) as balls from coefficient approximations at precision L.
Ball eval_ball(const OraclePolynomial& F, const ComplexDyadic& x, long L);
Ball eval_derivative_ball(const OraclePolynomial& F, const ComplexDyadic& x, long L);

}  // namespace rootclust
