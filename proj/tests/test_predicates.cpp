#include <doctest.h>

#include <random>

#include "rootclust/predicates.hpp"
#include "rootclust/validation.hpp"

using namespace rootclust;

namespace {

RealOracle constant_oracle(const mpq_class& v) {
    return RealOracle{[v](long L) { return Dyadic::from_mpq_rounded(v, L + 1); }};
}

ComplexRational cr(long re_num, long re_den, long im_num = 0, long im_den = 1) {
    return ComplexRational(mpq_class(re_num, re_den), mpq_class(im_num, im_den));
}

Disc disc_at(long re_num, long re_den, long rad_num, long rad_den) {
    // Denominators must be powers of two here.
    return Disc(ComplexDyadic(*Dyadic::from_mpq_exact(mpq_class(re_num, re_den)), Dyadic(0)),
                *Dyadic::from_mpq_exact(mpq_class(rad_num, rad_den)));
}

InstanceSpec wrap(std::vector<RootSpec> roots) {
    InstanceSpec spec;
    spec.roots = std::move(roots);
    return spec;
}

}  // namespace

TEST_CASE("soft_compare: forced signs and the soft zone") {
    CHECK(soft_compare(constant_oracle(1), constant_oracle(2)) == SoftSign::Negative);
    CHECK(soft_compare(constant_oracle(1), constant_oracle(1)) == SoftSign::Zero);
    CHECK(soft_compare(constant_oracle(4), constant_oracle(1)) == SoftSign::Positive);
    // Ratio 1.4 sits inside (2/3, 3/2): 0 or -1 are both contract-valid.
    SoftSign s = soft_compare(constant_oracle(1), constant_oracle(mpq_class(7, 5)));
    CHECK(s != SoftSign::Positive);
}

TEST_CASE("soft_compare trichotomy (fuzz)") {
    std::mt19937_64 eng(808);
    for (int i = 0; i < 400; ++i) {
        mpq_class a(static_cast<long>(eng() % 4000), 1 + static_cast<long>(eng() % 64));
        mpq_class b(static_cast<long>(eng() % 4000), 1 + static_cast<long>(eng() % 64));
        if (a == 0 && b == 0) continue;
        a /= 256;
        b /= 256;
        SoftSign s = soft_compare(constant_oracle(a), constant_oracle(b));
        if (s == SoftSign::Zero) {
            CHECK(2 * a < 3 * b);
            CHECK(2 * b < 3 * a);
        } else if (s == SoftSign::Positive) {
            CHECK(a > b);
        } else {
            CHECK(b > a);
        }
    }
}

TEST_CASE("soft_compare requests precision bounded by the operand scale") {
    std::mt19937_64 eng(909);
    for (int i = 0; i < 120; ++i) {
        long e = static_cast<long>(eng() % 120);
        mpq_class v = mpq_class(1 + static_cast<long>(eng() % 9)) / (mpz_class(1) << e);
        mpq_class w = v * mpq_class(1 + static_cast<long>(eng() % 3), 2);
        PredicateStats stats;
        soft_compare(constant_oracle(v), constant_oracle(w), &stats);
        mpq_class mx = std::max(v, w);
        // LOG(max^-1) = max(1, log2(1/max)); the doubling loop stays within a
        // factor two of the analytic bound.
        long log_inv = 1;
        while (mpq_class(1) > mx * (mpz_class(1) << log_inv)) ++log_inv;
        CHECK(stats.max_oracle_bits <= 2 * (log_inv + 8));
    }
}

TEST_CASE("soft_pellet on localized polynomials") {
    // z^2 - 2 localized at m = 3/2, r = 1/4: coefficients [1/4, 3/4, 1/16];
    // the linear term dominates, so k = 1 succeeds.
    auto F = OraclePolynomial::from_exact({cr(-2, 1), cr(0, 1), cr(1, 1)});
    LocalPolynomial p = localize(F, ComplexDyadic(Dyadic(3, -1), Dyadic(0)), Dyadic(1, -2), 64);
    CHECK(soft_pellet(p, 1));
    CHECK_FALSE(soft_pellet(p, 0));
    CHECK_FALSE(soft_pellet(p, 2));

    // z - 10 on the unit disc: constant term dominates, k = 0.
    auto G = OraclePolynomial::from_exact({cr(-10, 1), cr(1, 1)});
    LocalPolynomial q = localize(G, ComplexDyadic(Dyadic(0), Dyadic(0)), Dyadic(1), 64);
    CHECK(soft_pellet(q, 0));

    // (z-1)^2 at its root: the zero constant term can never win.
    auto H = OraclePolynomial::from_roots({{cr(1, 1), 2}}, 1);
    LocalPolynomial r = localize(H, ComplexDyadic(Dyadic(1), Dyadic(0)), Dyadic(1), 64);
    CHECK_FALSE(soft_pellet(r, 0));
    CHECK(soft_pellet(r, 2));
}

TEST_CASE("graeffe_pellet_k: counts, far discs, soundness") {
    auto sq = OraclePolynomial::from_roots({{cr(1, 1), 2}}, 1);  // (z-1)^2
    CHECK(graeffe_pellet_k(sq, disc_at(1, 1, 1, 4), 2));

    auto F = OraclePolynomial::from_exact({cr(-2, 1), cr(0, 1), cr(1, 1)});  // z^2 - 2
    CHECK(graeffe_pellet_k(F, disc_at(1000000, 1, 3, 4), 0));
    // Disc around 3/2 of radius 3/4 contains sqrt(2); k = 0 must fail.
    CHECK_FALSE(graeffe_pellet_k(F, disc_at(3, 2, 3, 4), 0));
}

TEST_CASE("graeffe_pellet_star: examples") {
    // (z-1)^2 (z+1): disc around 1 of radius 1/8 holds the double root.
    auto F = OraclePolynomial::from_roots({{cr(1, 1), 2}, {cr(-1, 1), 1}}, 1);
    CountResult c = graeffe_pellet_star(F, disc_at(1, 1, 1, 8), 3);
    CHECK(c.k == 2);

    auto G = OraclePolynomial::from_exact({cr(0, 1), cr(1, 1)});  // z
    CHECK(graeffe_pellet_star(G, disc_at(10, 1, 1, 2), 1).k == 0);

    // Both roots of z^2 - 2 near the rho-boundary of Delta(0, 727/512):
    // -1 is permitted; any count must be the true one (2).
    auto H = OraclePolynomial::from_exact({cr(-2, 1), cr(0, 1), cr(1, 1)});
    CountResult s = graeffe_pellet_star(H, disc_at(0, 1, 727, 512), 2);
    CHECK((s.k == -1 || s.k == 2));
}

TEST_CASE("exclusion_test via the box frame") {
    // B0 centered at 1000 of width 4: z^2 - 2 has no roots anywhere near, so
    // the root box's children all exclude.
    auto F = OraclePolynomial::from_exact({cr(-2, 1), cr(0, 1), cr(1, 1)});
    Frame far = Frame::from_query_box(ComplexDyadic(Dyadic(1000), Dyadic(0)), Dyadic(4));
    for (const Box& child : split(far.root_box())) {
        CHECK(exclusion_test(F, far, child) == ExclusionResult::Excluded);
    }

    // B0 centered at 3/2 of width 1: the root box covers sqrt(2), so it is
    // included (soundness forbids excluding it).
    Frame near = Frame::from_query_box(ComplexDyadic(Dyadic(3, -1), Dyadic(0)), Dyadic(1));
    CHECK(exclusion_test(F, near, near.root_box()) == ExclusionResult::Included);

    // F = z with a box centered on the root: always included.
    auto G = OraclePolynomial::from_exact({cr(0, 1), cr(1, 1)});
    Frame at0 = Frame::from_query_box(ComplexDyadic(Dyadic(0), Dyadic(0)), Dyadic(2));
    CHECK(exclusion_test(G, at0, at0.root_box()) == ExclusionResult::Included);
}

TEST_CASE("predicate soundness against exact counts (fuzz)") {
    std::mt19937_64 eng(7070);
    auto coord = [&eng]() {
        long num = static_cast<long>(eng() % 257) - 128;
        if (num % 3 == 0) ++num;  // keep the 3 in the denominator: never dyadic
        return mpq_class(num, 3 * (1 + static_cast<long>(eng() % 21)));
    };
    int checked = 0;
    for (int i = 0; i < 250; ++i) {
        std::vector<RootSpec> roots;
        int m = 1 + static_cast<int>(eng() % 4);
        for (int j = 0; j < m; ++j) {
            roots.push_back({ComplexRational(coord(), coord()),
                             1 + static_cast<int>(eng() % 2)});
        }
        OraclePolynomial F = OraclePolynomial::from_roots(roots, 1);
        InstanceSpec spec = wrap(roots);

        Disc d(ComplexDyadic(Dyadic(static_cast<long>(eng() % 129) - 64, -4),
                             Dyadic(static_cast<long>(eng() % 129) - 64, -4)),
               Dyadic::pow2(-(static_cast<long>(eng() % 8))));
        CountResult c = graeffe_pellet_star(F, d, F.degree());
        if (c.k >= 0) {
            CHECK(count_roots_in_disc(spec, d) == c.k);
            ++checked;
        } else {
            // Failure annulus: #((4/3) D) > #((2 sqrt(2)/3) D). With exact
            // rationals: scale radii by 4/3 and by sqrt(8)/3 (compare squared).
            int outer = count_roots_in_disc(spec, d, mpq_class(4, 3));
            // #(rho1 D): |z - c|^2 <= (8/9) r^2.
            mpq_class r2 = d.radius.to_mpq() * d.radius.to_mpq() * mpq_class(8, 9);
            int inner = 0;
            ComplexRational center(d.center.re.to_mpq(), d.center.im.to_mpq());
            for (const auto& rs : spec.roots) {
                if ((rs.z - center).norm_sqr() <= r2) inner += rs.multiplicity;
            }
            CHECK(outer > inner);
        }
    }
    CHECK(checked > 20);  // the sampler must actually exercise the success path
}

TEST_CASE("completeness on the guarantee region (sampled)") {
    std::mt19937_64 eng(515);
    auto coord = [&eng]() {
        long num = static_cast<long>(eng() % 65) - 32;
        if (num % 3 == 0) ++num;
        return mpq_class(num, 3 * (1 + static_cast<long>(eng() % 9)));
    };
    int qualified = 0;
    for (int i = 0; i < 400 && qualified < 60; ++i) {
        std::vector<RootSpec> roots;
        int m = 1 + static_cast<int>(eng() % 3);
        for (int j = 0; j < m; ++j) {
            roots.push_back({ComplexRational(coord(), coord()),
                             1 + static_cast<int>(eng() % 3)});
        }
        OraclePolynomial F = OraclePolynomial::from_roots(roots, 1);
        InstanceSpec spec = wrap(roots);
        int n = F.degree();

        // Candidate discs: around a root (tiny) or far away (count 0).
        Disc d = (eng() % 2 == 0)
                     ? Disc(ComplexDyadic(Dyadic::from_mpq_rounded(roots[0].z.re, 40),
                                          Dyadic::from_mpq_rounded(roots[0].z.im, 40)),
                            Dyadic::pow2(-(20 + static_cast<long>(eng() % 10))))
                     : Disc(ComplexDyadic(Dyadic(300 + static_cast<long>(eng() % 100)),
                                          Dyadic(static_cast<long>(eng() % 50))),
                            Dyadic::pow2(-(10 + static_cast<long>(eng() % 10))));

        // Guarantee region: #((2/(21n)) D) = #(18 n^3 D) = k.
        mpq_class inner_scale(2, 21 * n);
        mpq_class outer_scale(18L * n * n * n, 1);
        int inner = count_roots_in_disc(spec, d, inner_scale);
        int outer = count_roots_in_disc(spec, d, outer_scale);
        if (inner != outer) continue;
        ++qualified;
        CHECK(graeffe_pellet_k(F, d, inner));
    }
    CHECK(qualified >= 40);
}

TEST_CASE("scaling the coefficients never changes a Pellet outcome") {
    std::mt19937_64 eng(1122);
    auto F = OraclePolynomial::from_roots(
        {{cr(1, 3), 2}, {cr(-5, 7, 1, 3), 1}, {cr(9, 4, -2, 3), 1}}, 1);
    for (int i = 0; i < 20; ++i) {
        ComplexDyadic m(Dyadic(static_cast<long>(eng() % 65) - 32, -4),
                        Dyadic(static_cast<long>(eng() % 65) - 32, -4));
        Dyadic r = Dyadic::pow2(-(1 + static_cast<long>(eng() % 6)));
        LocalPolynomial p = localize(F, m, r, 96);
        LocalPolynomial scaled = p;
        long shift = static_cast<long>(eng() % 41) - 20;
        for (auto& b : scaled.coeffs) b = b.mul_pow2(shift);
        scaled.scale_log2 += shift;
        for (int k = 0; k <= F.degree(); ++k) {
            bool a, b;
            bool a_throws = false, b_throws = false;
            try {
                a = soft_pellet(p, k);
            } catch (const PrecisionExhausted&) {
                a_throws = true;
            }
            try {
                b = soft_pellet(scaled, k);
            } catch (const PrecisionExhausted&) {
                b_throws = true;
            }
            CHECK(a_throws == b_throws);
            if (!a_throws && !b_throws) CHECK(a == b);
        }
    }
}
