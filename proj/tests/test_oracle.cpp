#include <doctest.h>

#include <random>

#include "rootclust/oracle.hpp"

using namespace rootclust;

namespace {

ComplexRational cr(long re_num, long re_den, long im_num = 0, long im_den = 1) {
    return ComplexRational(mpq_class(re_num, re_den), mpq_class(im_num, im_den));
}

mpq_class sqr_dist(const ComplexRational& a, const ComplexRational& b) {
    return (a - b).norm_sqr();
}

// Exact coefficients of lcf * prod (z - z_j)^{m_j}, low to high.
std::vector<ComplexRational> expand(const std::vector<RootSpec>& roots, const mpq_class& lcf) {
    std::vector<ComplexRational> c{ComplexRational(lcf, mpq_class(0))};
    for (const auto& rs : roots) {
        for (int t = 0; t < rs.multiplicity; ++t) {
            c.emplace_back();
            for (std::size_t j = c.size() - 1; j >= 1; --j) c[j] = c[j - 1] - rs.z * c[j];
            c[0] = -rs.z * c[0];
        }
    }
    return c;
}

}  // namespace

TEST_CASE("oracle answers satisfy the precision contract across L (fuzz)") {
    std::mt19937_64 eng(100);
    for (int i = 0; i < 40; ++i) {
        ComplexRational z(mpq_class(static_cast<long>(eng() % 2001) - 1000,
                                    1 + static_cast<long>(eng() % 97)),
                          mpq_class(static_cast<long>(eng() % 2001) - 1000,
                                    1 + static_cast<long>(eng() % 89)));
        OracularNumber num = OracularNumber::from_rational(z);
        for (long L : {1L, 2L, 7L, 32L, 130L, 512L}) {
            ComplexDyadic a = num.approx(L);
            mpq_class err = sqr_dist(ComplexRational::from_dyadic(a), z);
            mpq_class bound = Dyadic::pow2(-L).to_mpq();
            CHECK(err <= bound * bound);
            // Regularity: the answer carries O(tau + L) bits.
            CHECK(static_cast<long>(a.re.mantissa_bits()) <= 2 * (num.tau() + L) + 8);
            CHECK(static_cast<long>(a.im.mantissa_bits()) <= 2 * (num.tau() + L) + 8);
        }
    }
}

TEST_CASE("from_exact: dyadic coefficients come back exactly") {
    auto F = OraclePolynomial::from_exact({cr(-2, 1), cr(0, 1), cr(1, 1)});
    CHECK(F.degree() == 2);
    ComplexDyadic c0 = F.coeff(0).approx(53);
    CHECK(c0.re == Dyadic(-2));
    CHECK(c0.im == Dyadic(0));

    auto G = OraclePolynomial::from_exact({cr(1, 3), cr(1, 1)});
    ComplexDyadic g0 = G.coeff(0).approx(10);
    CHECK(abs(g0.re.to_mpq() - mpq_class(1, 3)) <= Dyadic::pow2(-10).to_mpq());

    CHECK_THROWS_AS(OraclePolynomial::from_exact({cr(0, 1), cr(0, 1)}),
                    ZeroLeadingCoefficient);
}

TEST_CASE("from_roots: expansion matches hand results") {
    auto F = OraclePolynomial::from_roots({{cr(1, 1), 2}}, 1);
    CHECK(F.degree() == 2);
    CHECK(F.coeff(0).approx(40).re == Dyadic(1));
    CHECK(F.coeff(1).approx(40).re == Dyadic(-2));
    CHECK(F.coeff(2).approx(40).re == Dyadic(1));

    // (z - i)(z + i) = z^2 + 1
    auto G = OraclePolynomial::from_roots({{cr(0, 1, 1, 1), 1}, {cr(0, 1, -1, 1), 1}}, 1);
    CHECK(G.coeff(0).approx(40).re == Dyadic(1));
    CHECK(G.coeff(0).approx(40).im == Dyadic(0));
    CHECK(G.coeff(1).approx(40).re == Dyadic(0));
    CHECK(G.coeff(2).approx(40).re == Dyadic(1));

    // Degree-5 expansion checked at z = 0 against prod (-z_j)^{n_j}.
    std::vector<RootSpec> roots = {{cr(1, 1), 3},
                                   {ComplexRational(mpq_class(1) + mpq_class(1, 1 << 20),
                                                    mpq_class(0)),
                                    2}};
    auto H = OraclePolynomial::from_roots(roots, 1);
    CHECK(H.degree() == 5);
    ComplexRational expected(mpq_class(-1) * mpq_class(-1) * mpq_class(-1), mpq_class(0));
    for (int t = 0; t < 2; ++t) expected = expected * ComplexRational(-(mpq_class(1) + mpq_class(1, 1 << 20)), mpq_class(0));
    ComplexDyadic h0 = H.coeff(0).approx(120);
    CHECK(sqr_dist(ComplexRational::from_dyadic(h0), expected) <=
          Dyadic::pow2(-119).to_mpq() * Dyadic::pow2(-119).to_mpq());
    REQUIRE(H.known_roots() != nullptr);
    CHECK(H.known_roots()->size() == 2);
}

TEST_CASE("tau_f bounds every precision-4 coefficient approximation") {
    std::mt19937_64 eng(4141);
    for (int i = 0; i < 20; ++i) {
        std::vector<ComplexRational> coeffs;
        int n = 1 + static_cast<int>(eng() % 6);
        for (int j = 0; j <= n; ++j) {
            coeffs.emplace_back(mpq_class(static_cast<long>(eng() % 20001) - 10000,
                                          1 + static_cast<long>(eng() % 30)),
                                mpq_class(static_cast<long>(eng() % 20001) - 10000,
                                          1 + static_cast<long>(eng() % 30)));
        }
        if (coeffs.back().is_zero()) coeffs.back().re = 1;
        OraclePolynomial F = OraclePolynomial::from_exact(coeffs);
        Dyadic bound = Dyadic::pow2(F.tau_f()) + Dyadic::pow2(-4);
        for (int j = 0; j <= n; ++j) {
            Ball b(F.coeff(j).approx(4), Dyadic());
            auto mag = b.magnitude_interval(20);
            CHECK(mag.lo <= bound);
        }
    }
}

TEST_CASE("normalize_leading lands the (scaled) lcf in [1/4, 1)") {
    auto check_scaled = [](const OraclePolynomial& F) {
        OraclePolynomial N = normalize_leading(F);
        CHECK(N.lcf_scaled());
        Ball lead = N.coeff_ball(N.degree(), 80);
        auto mag = lead.magnitude_interval(80);
        CHECK(mag.hi < Dyadic(1));
        CHECK(mag.lo >= Dyadic(1, -2) - Dyadic::pow2(-40));
    };
    check_scaled(OraclePolynomial::from_exact({cr(-8, 1), cr(8, 1)}));   // 8z - 8
    check_scaled(OraclePolynomial::from_exact({cr(-1, 1), cr(1, 1)}));   // z - 1
    check_scaled(OraclePolynomial::from_exact({cr(0, 1), cr(1, 5)}));    // z/5
    // 8z - 8 scales by 2^-4: lcf becomes 1/2.
    OraclePolynomial N = normalize_leading(OraclePolynomial::from_exact({cr(-8, 1), cr(8, 1)}));
    CHECK(N.coeff(1).approx(40).re == Dyadic(1, -1));
}

TEST_CASE("localize: identity shift, scaled shift, and root-centered shift") {
    auto F = OraclePolynomial::from_exact({cr(-2, 1), cr(0, 1), cr(1, 1)});  // z^2 - 2
    ComplexDyadic zero(Dyadic(0), Dyadic(0));

    LocalPolynomial ident = localize(F, zero, Dyadic(1), 64);
    CHECK(ident.logical_coeff(0).contains(ComplexDyadic(Dyadic(-2), Dyadic(0))));
    CHECK(ident.logical_coeff(1).contains(zero));
    CHECK(ident.logical_coeff(2).contains(ComplexDyadic(Dyadic(1), Dyadic(0))));

    // F(3/2 + z/5): coefficients [1/4, 3/5, 1/25].
    LocalPolynomial sh = localize(F, ComplexDyadic(Dyadic(3, -1), Dyadic(0)), Dyadic(1, -2), 64);
    // r = 1/4 here keeps everything dyadic: [1/4, 3/4, 1/16].
    CHECK(sh.logical_coeff(0).contains(ComplexDyadic(Dyadic(1, -2), Dyadic(0))));
    CHECK(sh.logical_coeff(1).contains(ComplexDyadic(Dyadic(3, -2), Dyadic(0))));
    CHECK(sh.logical_coeff(2).contains(ComplexDyadic(Dyadic(1, -4), Dyadic(0))));

    auto G = OraclePolynomial::from_roots({{cr(1, 1), 2}}, 1);  // (z-1)^2
    LocalPolynomial at_root = localize(G, ComplexDyadic(Dyadic(1), Dyadic(0)), Dyadic(1), 64);
    CHECK(at_root.logical_coeff(0).contains(zero));
    CHECK(at_root.logical_coeff(1).contains(zero));
    CHECK(at_root.logical_coeff(0).radius() <= Dyadic::pow2(-60));
}

TEST_CASE("localize: shift consistency with direct evaluation (fuzz)") {
    std::mt19937_64 eng(321);
    for (int i = 0; i < 25; ++i) {
        std::vector<RootSpec> roots;
        int m = 1 + static_cast<int>(eng() % 3);
        for (int j = 0; j < m; ++j) {
            roots.push_back({ComplexRational(mpq_class(static_cast<long>(eng() % 19) - 9,
                                                       1 + static_cast<long>(eng() % 7)),
                                             mpq_class(static_cast<long>(eng() % 19) - 9,
                                                       1 + static_cast<long>(eng() % 5))),
                             1 + static_cast<int>(eng() % 2)});
        }
        OraclePolynomial F = OraclePolynomial::from_roots(roots, 1);
        ComplexDyadic m0(Dyadic(static_cast<long>(eng() % 33) - 16, -3),
                         Dyadic(static_cast<long>(eng() % 33) - 16, -3));
        Dyadic r = Dyadic(1 + static_cast<long>(eng() % 15), -4);
        LocalPolynomial local = localize(F, m0, r, 80);
        // Coefficient 0 contains F(m): compare against ball_horner directly.
        std::vector<Ball> cb;
        for (int d = 0; d <= F.degree(); ++d) cb.push_back(F.coeff_ball(d, 120));
        Ball direct = ball_horner(cb, Ball::exact(m0));
        Ball c0 = local.logical_coeff(0);
        // The two enclosures must overlap (both contain F(m)).
        Dyadic gap_sqr = (c0.center() - direct.center()).norm_sqr();
        Dyadic reach = c0.radius() + direct.radius();
        CHECK(gap_sqr <= reach.sqr());
    }
}

TEST_CASE("graeffe_step: root squaring on explicit cases") {
    // z^2 - 1 -> (z - 1)^2 up to scaling: roots +-1 square to a double root 1.
    auto F = OraclePolynomial::from_exact({cr(-1, 1), cr(0, 1), cr(1, 1)});
    LocalPolynomial p = localize(F, ComplexDyadic(Dyadic(0), Dyadic(0)), Dyadic(1), 64);
    LocalPolynomial g = graeffe_step(p);
    // Monic-normalize: c1/c2 = -2, c0/c2 = 1.
    Ball lead = g.coeffs[2];
    Ball r1 = div_ball(g.coeffs[1], lead, 80);
    Ball r0 = div_ball(g.coeffs[0], lead, 80);
    CHECK(r1.contains(ComplexDyadic(Dyadic(-2), Dyadic(0))));
    CHECK(r0.contains(ComplexDyadic(Dyadic(1), Dyadic(0))));

    // z - c -> z - c^2 (monic-normalized).
    auto G = OraclePolynomial::from_exact({cr(-3, 1), cr(1, 1)});  // z - 3
    LocalPolynomial q = graeffe_step(localize(G, ComplexDyadic(Dyadic(0), Dyadic(0)), Dyadic(1), 64));
    Ball c0 = div_ball(q.coeffs[0], q.coeffs[1], 80);
    CHECK(c0.contains(ComplexDyadic(Dyadic(-9), Dyadic(0))));
}

TEST_CASE("graeffe_iterate: 2^N-th powers of the roots") {
    // z - 2, N = 2: root 2 -> 2^4 = 16.
    auto F = OraclePolynomial::from_exact({cr(-2, 1), cr(1, 1)});
    LocalPolynomial it = graeffe_iterate(
        localize(F, ComplexDyadic(Dyadic(0), Dyadic(0)), Dyadic(1), 80), 2);
    Ball c0 = div_ball(it.coeffs[0], it.coeffs[1], 96);
    CHECK(c0.contains(ComplexDyadic(Dyadic(-16), Dyadic(0))));

    // z^2 - 1, N = 3: both roots to (+-1)^8 = 1, i.e. (z-1)^2.
    auto G = OraclePolynomial::from_exact({cr(-1, 1), cr(0, 1), cr(1, 1)});
    LocalPolynomial it3 = graeffe_iterate(
        localize(G, ComplexDyadic(Dyadic(0), Dyadic(0)), Dyadic(1), 80), 3);
    Ball b1 = div_ball(it3.coeffs[1], it3.coeffs[2], 96);
    Ball b0 = div_ball(it3.coeffs[0], it3.coeffs[2], 96);
    CHECK(b1.contains(ComplexDyadic(Dyadic(-2), Dyadic(0))));
    CHECK(b0.contains(ComplexDyadic(Dyadic(1), Dyadic(0))));

    // z^n with all roots at 0 is a fixed point (monic-normalized).
    auto H = OraclePolynomial::from_exact({cr(0, 1), cr(0, 1), cr(1, 1)});
    LocalPolynomial fixed = graeffe_iterate(
        localize(H, ComplexDyadic(Dyadic(0), Dyadic(0)), Dyadic(1), 80), 4);
    Ball f0 = div_ball(fixed.coeffs[0], fixed.coeffs[2], 96);
    Ball f1 = div_ball(fixed.coeffs[1], fixed.coeffs[2], 96);
    CHECK(f0.contains(ComplexDyadic(Dyadic(0), Dyadic(0))));
    CHECK(f1.contains(ComplexDyadic(Dyadic(0), Dyadic(0))));
}

TEST_CASE("graeffe root map: coefficients match exact 2^N powers (property)") {
    // Monic comparison is done cross-multiplied (g_i - want_i * g_n contains
    // zero) so a tiny rescaled leading coefficient never forces a division
    // by a zero-straddling ball.
    std::mt19937_64 eng(606);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<RootSpec> roots;
        int m = 1 + static_cast<int>(eng() % 3);
        int total = 0;
        for (int j = 0; j < m && total < 6; ++j) {
            int mult = 1 + static_cast<int>(eng() % 2);
            total += mult;
            roots.push_back({ComplexRational(mpq_class(static_cast<long>(eng() % 9) - 4, 4),
                                             mpq_class(static_cast<long>(eng() % 9) - 4, 4)),
                             mult});
        }
        OraclePolynomial F = OraclePolynomial::from_roots(roots, 1);
        int n = F.degree();
        int N = graeffe_default_iterations(n);
        LocalPolynomial g = graeffe_iterate(
            localize(F, ComplexDyadic(Dyadic(0), Dyadic(0)), Dyadic(1), 1024), N);

        // Exact roots to the 2^N-th power, then elementary symmetric.
        std::vector<RootSpec> powered;
        for (const auto& rs : roots) {
            ComplexRational acc = rs.z;
            for (int b = 0; b < N; ++b) acc = acc * acc;
            powered.push_back({acc, rs.multiplicity});
        }
        std::vector<ComplexRational> want = expand(powered, 1);

        Ball lead = g.coeffs[static_cast<std::size_t>(n)];
        for (int i = 0; i <= n; ++i) {
            ComplexRational w = want[static_cast<std::size_t>(i)];
            Ball want_ball(ComplexDyadic(Dyadic::from_mpq_rounded(w.re, 900),
                                         Dyadic::from_mpq_rounded(w.im, 900)),
                           Dyadic::pow2(-898));
            Ball diff = g.coeffs[static_cast<std::size_t>(i)] - want_ball * lead;
            CHECK(diff.contains_zero());
            // The check has real strength: the enclosure is far tighter than
            // the coefficient scale.
            CHECK(diff.radius() <= Dyadic::pow2(-64));
        }
    }
}

TEST_CASE("graeffe_default_iterations matches the ceil(log2(1+log2 n))+4 rule") {
    CHECK(graeffe_default_iterations(1) == 4);
    CHECK(graeffe_default_iterations(2) == 5);
    CHECK(graeffe_default_iterations(3) == 6);
    CHECK(graeffe_default_iterations(6) == 6);
    CHECK(graeffe_default_iterations(8) == 6);
    CHECK(graeffe_default_iterations(12) == 7);
}
