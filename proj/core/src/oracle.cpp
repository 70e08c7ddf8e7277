#include "rootclust/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace rootclust {

namespace {

long ceil_log2(const Dyadic& d) {
    long fl = d.floor_log2();
    bool pow2 = d.mantissa() == 1 || d.mantissa() == -1;
    return pow2 ? fl : fl + 1;
}

// Upper bound on log2(|q|) for nonzero q, from numerator/denominator bit sizes.
long log2_upper(const mpq_class& q) {
    if (q == 0) return 0;
    long nb = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
    long db = static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    return nb - db + 1;
}

long rational_tau(const ComplexRational& q) {
    long t = std::max(log2_upper(q.re), log2_upper(q.im)) + 1;
    return std::max(0L, t);
}

}  // namespace

OracularNumber OracularNumber::from_rational(const ComplexRational& q) {
    long tau = rational_tau(q);
    ComplexRational copy = q;
    return OracularNumber(
        [copy](long L) {
            // Componentwise error <= 2^{-L-2}, so |approx - z| < 2^-L.
            return ComplexDyadic(Dyadic::from_mpq_rounded(copy.re, L + 2),
                                 Dyadic::from_mpq_rounded(copy.im, L + 2));
        },
        tau);
}

OracularNumber OracularNumber::from_dyadic(const ComplexDyadic& z) {
    long tau = 0;
    if (!z.re.is_zero()) tau = std::max(tau, z.re.floor_log2() + 1);
    if (!z.im.is_zero()) tau = std::max(tau, z.im.floor_log2() + 1);
    tau = std::max(0L, tau + 1);
    return OracularNumber([z](long) { return z; }, tau);
}

OracularNumber OracularNumber::scaled_pow2(long k) const {
    Fn base = fn_;
    return OracularNumber(
        [base, k](long L) {
            long inner = std::max(1L, L + k);
            return base(inner).mul_pow2(k);
        },
        std::max(0L, tau_ + k));
}

namespace {

long compute_tau(const std::vector<OracularNumber>& coeffs) {
    Dyadic max_u;
    for (const auto& c : coeffs) {
        Ball b = c.ball(4);
        Dyadic u = b.magnitude_upper();
        if (u > max_u) max_u = u;
    }
    if (max_u.is_zero()) return 0;
    return std::max(0L, ceil_log2(max_u));
}

}  // namespace

OraclePolynomial::OraclePolynomial(std::vector<OracularNumber> coeffs, long tau_f,
                                   bool lcf_scaled)
    : coeffs_(std::move(coeffs)), tau_f_(tau_f), lcf_scaled_(lcf_scaled) {
    if (coeffs_.size() < 2) {
        throw std::invalid_argument("OraclePolynomial: degree must be >= 1");
    }
}

OraclePolynomial OraclePolynomial::from_exact(const std::vector<ComplexRational>& coeffs) {
    if (coeffs.size() < 2) throw std::invalid_argument("from_exact: degree must be >= 1");
    if (coeffs.back().is_zero()) throw ZeroLeadingCoefficient();
    std::vector<OracularNumber> nums;
    nums.reserve(coeffs.size());
    for (const auto& c : coeffs) nums.push_back(OracularNumber::from_rational(c));
    long tau = compute_tau(nums);
    return OraclePolynomial(std::move(nums), tau, false);
}

OraclePolynomial OraclePolynomial::from_roots(const std::vector<RootSpec>& roots,
                                              const mpq_class& lcf) {
    if (lcf == 0) throw ZeroLeadingCoefficient();
    // Low-to-high coefficients of lcf * prod (z - z_j)^{n_j}.
    std::vector<ComplexRational> c{ComplexRational(lcf, mpq_class(0))};
    for (const auto& rs : roots) {
        for (int t = 0; t < rs.multiplicity; ++t) {
            c.emplace_back();
            for (std::size_t j = c.size() - 1; j >= 1; --j) {
                c[j] = c[j - 1] - rs.z * c[j];
            }
            c[0] = -rs.z * c[0];
        }
    }
    return from_exact(c).with_roots(roots);
}

OraclePolynomial OraclePolynomial::with_roots(std::vector<RootSpec> roots) const {
    OraclePolynomial copy = *this;
    copy.roots_ = std::make_shared<const std::vector<RootSpec>>(std::move(roots));
    return copy;
}

OraclePolynomial normalize_leading(const OraclePolynomial& F) {
    constexpr long kCeiling = 1L << 22;
    int n = F.degree();
    long s = 0;
    bool found = false;
    for (long L = 8; L <= kCeiling; L *= 2) {
        Ball lead = F.coeff_ball(n, L);
        if (lead.contains_zero()) continue;
        DyadicInterval mag = lead.magnitude_interval(L);
        if (mag.lo.sign() <= 0) continue;
        if (mag.hi * Dyadic(2, 0) >= mag.lo * Dyadic(3, 0)) continue;  // want hi < 1.5 lo
        s = -(mag.hi.floor_log2() + 1);  // |lcf|*2^s in (1/3, 1)
        found = true;
        break;
    }
    if (!found) throw ZeroLeadingCoefficient();

    std::vector<OracularNumber> scaled;
    scaled.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) scaled.push_back(F.coeff(i).scaled_pow2(s));
    OraclePolynomial out(std::move(scaled), std::max(0L, F.tau_f() + s), true);
    if (F.known_roots()) out = out.with_roots(*F.known_roots());
    return out;
}

namespace {

// Rescale so the largest coefficient magnitude (upper bound) lies in [1/2, 1),
// then round onto the grid 2^-(L+2). Returns the applied exponent.
long rescale_and_round(std::vector<Ball>& coeffs, long L) {
    Dyadic max_u;
    for (const auto& b : coeffs) {
        Dyadic u = b.magnitude_upper();
        if (u > max_u) max_u = u;
    }
    long s = 0;
    if (!max_u.is_zero()) s = -(max_u.floor_log2() + 1);
    for (auto& b : coeffs) b = b.mul_pow2(s).rounded(L + 2);
    return s;
}

bool radii_within(const std::vector<Ball>& coeffs, long L) {
    Dyadic bound = Dyadic::pow2(-L);
    for (const auto& b : coeffs) {
        if (b.radius() > bound) return false;
    }
    return true;
}

}  // namespace

LocalPolynomial localize(const OraclePolynomial& F, const ComplexDyadic& m,
                         const Dyadic& r, long L) {
    if (r.sign() <= 0) throw std::invalid_argument("localize: radius must be positive");
    int n = F.degree();
    constexpr long kCeiling = 1L << 24;
    for (long L1 = L + 16;; L1 *= 2) {
        if (L1 > kCeiling) throw PrecisionExhausted("localize");
        std::vector<Ball> a;
        a.reserve(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) a.push_back(F.coeff_ball(i, L1));
        if (!m.is_zero()) {
            Ball mb = Ball::exact(m);
            for (int i = 0; i < n; ++i) {
                for (int j = n - 1; j >= i; --j) {
                    a[static_cast<std::size_t>(j)] =
                        a[static_cast<std::size_t>(j)] +
                        a[static_cast<std::size_t>(j + 1)] * mb;
                }
            }
        }
        Dyadic rp(1);
        for (int i = 1; i <= n; ++i) {
            rp *= r;
            a[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)].scale(rp);
        }
        long s = rescale_and_round(a, L);
        if (!radii_within(a, L)) continue;
        LocalPolynomial out;
        out.coeffs = std::move(a);
        out.shift_center = m;
        out.shift_radius = r;
        out.precision = L;
        out.scale_log2 = s;
        return out;
    }
}

namespace {

std::vector<Ball> square_poly(const std::vector<Ball>& p) {
    if (p.empty()) return {};
    std::vector<Ball> out(2 * p.size() - 1, Ball());
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            out[i + j] += p[i] * p[j];
        }
    }
    return out;
}

}  // namespace

LocalPolynomial graeffe_step(const LocalPolynomial& p) {
    int n = p.degree();
    if (n < 1) throw std::invalid_argument("graeffe_step: degree must be >= 1");
    std::vector<Ball> even, odd;
    for (int i = 0; i <= n; ++i) {
        if (i % 2 == 0) {
            even.push_back(p.coeffs[static_cast<std::size_t>(i)]);
        } else {
            odd.push_back(p.coeffs[static_cast<std::size_t>(i)]);
        }
    }
    std::vector<Ball> pe2 = square_poly(even);
    std::vector<Ball> po2 = square_poly(odd);
    std::vector<Ball> res(static_cast<std::size_t>(n) + 1, Ball());
    for (std::size_t k = 0; k < res.size(); ++k) {
        Ball v;
        if (k < pe2.size()) v = pe2[k];
        if (k >= 1 && k - 1 < po2.size()) v = v - po2[k - 1];
        res[k] = n % 2 == 0 ? v : Ball() - v;  // (-1)^n factor
    }
    long s = rescale_and_round(res, p.precision);
    LocalPolynomial out;
    out.coeffs = std::move(res);
    out.shift_center = p.shift_center;
    out.shift_radius = p.shift_radius;
    out.precision = p.precision;
    // The step is quadratic in the coefficients, so prior scaling doubles.
    out.scale_log2 = 2 * p.scale_log2 + s;
    return out;
}

LocalPolynomial graeffe_iterate(const LocalPolynomial& p, int count) {
    if (count < 1) throw std::invalid_argument("graeffe_iterate: count must be >= 1");
    LocalPolynomial out = graeffe_step(p);
    for (int i = 1; i < count; ++i) out = graeffe_step(out);
    return out;
}

int graeffe_default_iterations(int degree) {
    // Smallest N0 with 2^(2^N0) >= 2*degree gives ceil(log2(1 + log2 degree)).
    int n0 = 0;
    mpz_class pow(2);  // 2^(2^0)
    while (pow < 2 * degree) {
        pow = pow * pow;
        ++n0;
    }
    return n0 + 4;
}

Ball eval_ball(const OraclePolynomial& F, const ComplexDyadic& x, long L) {
    std::vector<Ball> coeffs;
    coeffs.reserve(static_cast<std::size_t>(F.degree()) + 1);
    for (int i = 0; i <= F.degree(); ++i) coeffs.push_back(F.coeff_ball(i, L));
    return ball_horner(coeffs, Ball::exact(x));
}

Ball eval_derivative_ball(const OraclePolynomial& F, const ComplexDyadic& x, long L) {
    std::vector<Ball> coeffs;
    coeffs.reserve(static_cast<std::size_t>(F.degree()));
    for (int i = 1; i <= F.degree(); ++i) {
        coeffs.push_back(F.coeff_ball(i, L).scale(Dyadic(i)));
    }
    return ball_horner(coeffs, Ball::exact(x));
}

}  // namespace rootclust
