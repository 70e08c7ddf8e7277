#include "rootclust/dyadic.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace rootclust {

namespace {

mpz_class shifted_left(const mpz_class& m, long k) {
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return r;
}

mpz_class shifted_right_floor(const mpz_class& m, long k) {
    mpz_class r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return r;
}

// Both mantissas brought to the common exponent min(ea, eb).
void align(const Dyadic& a, const Dyadic& b, mpz_class& ma, mpz_class& mb, long& e) {
    e = std::min(a.exponent(), b.exponent());
    ma = a.mantissa();
    mb = b.mantissa();
    if (a.exponent() > e) ma = shifted_left(ma, a.exponent() - e);
    if (b.exponent() > e) mb = shifted_left(mb, b.exponent() - e);
}

}  // namespace

void Dyadic::canonicalize() {
    if (man_ == 0) {
        exp_ = 0;
        return;
    }
    auto tz = mpz_scan1(man_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), tz);
        exp_ += static_cast<long>(tz);
    }
}

long Dyadic::floor_log2() const {
    return static_cast<long>(mantissa_bits()) - 1 + exp_;
}

Dyadic Dyadic::operator-() const {
    Dyadic r;
    r.man_ = -man_;
    r.exp_ = exp_;
    return r;
}

Dyadic Dyadic::abs() const { return sign() < 0 ? -*this : *this; }

Dyadic Dyadic::mul_pow2(long k) const {
    if (is_zero()) return Dyadic();
    Dyadic r;
    r.man_ = man_;
    r.exp_ = exp_ + k;
    return r;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    mpz_class ma, mb;
    long e;
    align(a, b, ma, mb, e);
    return Dyadic(ma + mb, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    mpz_class ma, mb;
    long e;
    align(a, b, ma, mb, e);
    return Dyadic(ma - mb, e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return Dyadic();
    Dyadic r(a.man_ * b.man_, a.exp_ + b.exp_);
    return r;
}

int cmp(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    mpz_class ma, mb;
    long e;
    align(a, b, ma, mb, e);
    return ::cmp(ma, mb) < 0 ? -1 : (ma == mb ? 0 : 1);
}

Dyadic Dyadic::from_mpq_rounded(const mpq_class& q, long prec) {
    // round(q * 2^prec) / 2^prec, ties toward +inf; error <= 2^{-prec-1}.
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();  // > 0 in canonical mpq
    if (prec > 0) num = shifted_left(num, prec);
    mpz_class twice = 2 * num + den;  // 2*num/den + 1, then floor-halve
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    return Dyadic(r, -prec);
}

std::optional<Dyadic> Dyadic::from_mpq_exact(const mpq_class& q) {
    mpz_class den = q.get_den();
    if (den == 0) return std::nullopt;
    if (den == 1) return Dyadic(q.get_num(), 0);
    auto tz = mpz_scan1(den.get_mpz_t(), 0);
    if (mpz_sizeinbase(den.get_mpz_t(), 2) != tz + 1) return std::nullopt;  // not 2^k
    return Dyadic(q.get_num(), -static_cast<long>(tz));
}

double Dyadic::to_double() const {
    if (is_zero()) return 0.0;
    // Keep at most 64 mantissa bits so get_d cannot lose the exponent.
    long bits = static_cast<long>(mantissa_bits());
    if (bits <= 64) return std::ldexp(man_.get_d(), static_cast<int>(exp_));
    mpz_class top = shifted_right_floor(man_, bits - 64);
    return std::ldexp(top.get_d(), static_cast<int>(exp_ + bits - 64));
}

mpq_class Dyadic::to_mpq() const {
    mpq_class q(man_);
    if (exp_ >= 0) {
        q *= mpq_class(shifted_left(mpz_class(1), exp_));
    } else {
        q /= mpq_class(shifted_left(mpz_class(1), -exp_));
    }
    q.canonicalize();
    return q;
}

std::string Dyadic::to_string() const {
    return man_.get_str() + "*2^" + std::to_string(exp_);
}

std::optional<Dyadic> Dyadic::parse(std::string_view s) {
    auto pos = s.find("*2^");
    if (pos == std::string_view::npos) return std::nullopt;
    std::string mant(s.substr(0, pos));
    std::string expo(s.substr(pos + 3));
    if (mant.empty() || expo.empty()) return std::nullopt;
    mpz_class m;
    if (mpz_set_str(m.get_mpz_t(), mant.c_str(), 10) != 0) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    long e = std::strtol(expo.c_str(), &end, 10);
    if (errno != 0 || end == nullptr || *end != '\0') return std::nullopt;
    return Dyadic(m, e);
}

std::optional<Dyadic> Dyadic::parse_flexible(std::string_view s, long decimal_prec) {
    if (s.empty()) return std::nullopt;
    if (auto d = parse(s)) return d;
    if (s.rfind("2^", 0) == 0 || s.rfind("-2^", 0) == 0) {
        bool neg = s[0] == '-';
        std::string expo(s.substr(neg ? 3 : 2));
        errno = 0;
        char* end = nullptr;
        long e = std::strtol(expo.c_str(), &end, 10);
        if (errno != 0 || end == nullptr || *end != '\0' || expo.empty()) return std::nullopt;
        return Dyadic(neg ? -1 : 1, e);
    }
    // Plain decimal: [+-]digits[.digits]
    std::string digits;
    long frac_digits = 0;
    bool neg = false, seen_dot = false, seen_digit = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (i == 0 && (ch == '+' || ch == '-')) {
            neg = ch == '-';
        } else if (ch == '.') {
            if (seen_dot) return std::nullopt;
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch);
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else {
            return std::nullopt;
        }
    }
    if (!seen_digit) return std::nullopt;
    mpz_class num(digits, 10);
    if (neg) num = -num;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac_digits));
    mpq_class q(num, den);
    q.canonicalize();
    if (auto exact = from_mpq_exact(q)) return exact;
    return from_mpq_rounded(q, decimal_prec);
}

Dyadic round_to(const Dyadic& x, long L) {
    Dyadic u = Dyadic::pow2(-L);
    Dyadic lo = x - u, hi = x + u;
    if (lo.sign() <= 0 && hi.sign() >= 0) return Dyadic();
    if (hi.sign() < 0) return -round_to(-x, L);
    // 0 < lo <= hi: shortest dyadic is on the coarsest grid hitting [lo, hi].
    long e;
    mpz_class A, B;
    align(lo, hi, A, B, e);
    mpz_class gap = B - A;  // >= 2 * 2^{-L} / 2^e > 0
    long h = static_cast<long>(mpz_sizeinbase(gap.get_mpz_t(), 2)) - 1;
    mpz_class best_m;
    long best_t = 0;
    for (long t = h;; ++t) {
        mpz_class m;
        mpz_cdiv_q_2exp(m.get_mpz_t(), A.get_mpz_t(), static_cast<mp_bitcnt_t>(t));
        mpz_class back = shifted_left(m, t);
        if (back > B) {
            if (t == h) {
                // Guaranteed hit at h by the gap bound; defensive fallback.
                return x;
            }
            break;
        }
        best_m = m;
        best_t = t;
        if (best_m == 0) break;
    }
    return Dyadic(best_m, e + best_t);
}

Dyadic round_up_coarse(const Dyadic& x) {
    constexpr long kRadiusBits = 16;
    long bits = static_cast<long>(x.mantissa_bits());
    if (bits <= kRadiusBits) return x;
    long drop = bits - kRadiusBits;
    mpz_class m;
    mpz_cdiv_q_2exp(m.get_mpz_t(), x.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(drop));
    return Dyadic(m, x.exponent() + drop);
}

mpz_class floor_div(const Dyadic& a, const Dyadic& b) {
    // a/b = (ma/mb) * 2^{ea-eb}
    mpz_class ma = a.mantissa(), mb = b.mantissa();
    long k = a.exponent() - b.exponent();
    if (k > 0) ma = shifted_left(ma, k);
    if (k < 0) mb = shifted_left(mb, -k);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), ma.get_mpz_t(), mb.get_mpz_t());
    return q;
}

namespace {

Dyadic div_directed(const Dyadic& a, const Dyadic& b, long L, bool up) {
    // Quotient on the grid 2^-L: floor/ceil(a * 2^L / b).
    mpz_class ma = a.mantissa(), mb = b.mantissa();
    long k = a.exponent() - b.exponent() + L;
    if (k > 0) ma = shifted_left(ma, k);
    if (k < 0) mb = shifted_left(mb, -k);
    mpz_class q;
    if (up) {
        mpz_cdiv_q(q.get_mpz_t(), ma.get_mpz_t(), mb.get_mpz_t());
    } else {
        mpz_fdiv_q(q.get_mpz_t(), ma.get_mpz_t(), mb.get_mpz_t());
    }
    return Dyadic(q, -L);
}

}  // namespace

Dyadic div_down(const Dyadic& a, const Dyadic& b, long L) {
    return div_directed(a, b, L, false);
}

Dyadic div_up(const Dyadic& a, const Dyadic& b, long L) {
    return div_directed(a, b, L, true);
}

DyadicInterval sqrt_bracket(const Dyadic& x, long prec) {
    if (x.sign() < 0) throw std::invalid_argument("sqrt_bracket: negative input");
    if (x.is_zero()) return {Dyadic(), Dyadic()};
    // Work on the grid 2^g with g ~ floor_log2(x)/2 - prec, so the bracket
    // width 2*2^g is ~2^{1-prec} relative to sqrt(x).
    long fl = x.floor_log2();
    long g = (fl >= 0 ? fl / 2 : (fl - 1) / 2) - prec;
    long shift = x.exponent() - 2 * g;
    mpz_class n;
    bool exact_shift = shift >= 0;
    if (exact_shift) {
        n = shifted_left(x.mantissa(), shift);
    } else {
        n = shifted_right_floor(x.mantissa(), -shift);
    }
    mpz_class s_lo;
    mpz_sqrt(s_lo.get_mpz_t(), n.get_mpz_t());
    mpz_class s_hi;
    if (exact_shift) {
        s_hi = s_lo + 1;
    } else {
        mpz_class n1 = n + 1;
        mpz_sqrt(s_hi.get_mpz_t(), n1.get_mpz_t());
        s_hi += 1;
    }
    return {Dyadic(s_lo, g), Dyadic(s_hi, g)};
}

// ---- Ball -------------------------------------------------------------

Ball operator+(const Ball& a, const Ball& b) {
    return Ball(a.c_ + b.c_, round_up_coarse(a.r_ + b.r_));
}

Ball operator-(const Ball& a, const Ball& b) {
    return Ball(a.c_ - b.c_, round_up_coarse(a.r_ + b.r_));
}

Ball operator*(const Ball& a, const Ball& b) {
    ComplexDyadic c = a.c_ * b.c_;
    if (a.is_exact() && b.is_exact()) return Ball(c);
    // |a*b - ca*cb| <= |ca| rb + |cb| ra + ra rb
    Dyadic ma = Ball(a.c_).magnitude_upper();
    Dyadic mb = Ball(b.c_).magnitude_upper();
    return Ball(c, round_up_coarse(ma * b.r_ + mb * a.r_ + a.r_ * b.r_));
}

Ball Ball::scale(const Dyadic& s) const {
    return Ball(ComplexDyadic(c_.re * s, c_.im * s), round_up_coarse(r_ * s.abs()));
}

Ball Ball::scale_complex(const ComplexDyadic& s) const {
    Dyadic smag = Ball(s).magnitude_upper();
    return Ball(c_ * s, round_up_coarse(r_ * smag));
}

Ball Ball::rounded(long L) const {
    ComplexDyadic c(round_to(c_.re, L), round_to(c_.im, L));
    // Componentwise motion <= 2^-L, so |shift| <= sqrt(2)*2^-L <= 3*2^{-L-1}.
    return Ball(c, round_up_coarse(r_ + Dyadic(3, -L - 1)));
}

DyadicInterval Ball::magnitude_interval(long prec) const {
    Dyadic n2 = c_.norm_sqr();
    if (n2.is_zero()) return {Dyadic(), r_};
    // sqrt_bracket is relative; widen its precision by the magnitude so the
    // returned interval has absolute width ~2^-prec.
    long mag_log = n2.floor_log2() / 2;
    long rel = prec + 2 + std::max(0L, mag_log + 1);
    DyadicInterval m = sqrt_bracket(n2, rel);
    Dyadic lo = m.lo - r_;
    if (lo.sign() < 0) lo = Dyadic();
    return {lo, m.hi + r_};
}

Dyadic Ball::magnitude_upper() const {
    if (c_.is_zero()) return r_;
    DyadicInterval m = sqrt_bracket(c_.norm_sqr(), 12);
    return round_up_coarse(m.hi + r_);
}

Ball ball_horner(const std::vector<Ball>& coeffs, const Ball& z) {
    if (coeffs.empty()) throw std::invalid_argument("ball_horner: empty coefficients");
    Ball acc = coeffs.back();
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

Ball Ball::reciprocal(long prec) const {
    // Exact image of a zero-free disc under inversion: for D(c, r) with
    // |c| > r, 1/D(c,r) = D(conj(c)/(|c|^2 - r^2), r/(|c|^2 - r^2)).
    Dyadic denom = c_.norm_sqr() - r_.sqr();
    if (denom.sign() <= 0) throw DivisorStraddlesZero();
    Dyadic qre = div_down(c_.re, denom, prec);
    Dyadic qim = div_down(-c_.im, denom, prec);
    // Center rounding moved each component by < 2^-prec.
    Dyadic rad = div_up(r_, denom, prec) + Dyadic(3, -prec - 1);
    return Ball(ComplexDyadic(qre, qim), round_up_coarse(rad));
}

}  // namespace rootclust
