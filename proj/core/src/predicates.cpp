#include "rootclust/predicates.hpp"

#include <sstream>

namespace rootclust {

namespace {

std::string disc_context(const Disc& d) {
    std::ostringstream os;
    os << "disc center (" << d.center.re.to_string() << ", " << d.center.im.to_string()
       << ") radius " << d.radius.to_string();
    return os.str();
}

}  // namespace

SoftSign soft_compare(const RealOracle& zl, const RealOracle& zr, PredicateStats* stats,
                      const PredicateConfig& cfg) {
    if (stats) ++stats->soft_compares;
    for (long L = 1; L <= cfg.ceiling_bits; L *= 2) {
        if (stats && L > stats->max_oracle_bits) stats->max_oracle_bits = L;
        Dyadic al = zl.approx(L);
        Dyadic ar = zr.approx(L);
        Dyadic u = Dyadic::pow2(-L);
        Dyadic two_u = u.mul_pow2(1);
        Dyadic diff = al - ar;
        if (diff > two_u) return SoftSign::Positive;
        if (-diff > two_u) return SoftSign::Negative;
        // Certify (2/3) zl < zr < (3/2) zl from the approximations:
        //   2 (al + u) < 3 (ar - u)  and  2 (ar + u) < 3 (al - u).
        Dyadic two(2), three(3);
        if (two * (al + u) < three * (ar - u) && two * (ar + u) < three * (al - u)) {
            return SoftSign::Zero;
        }
    }
    throw PrecisionExhausted("soft_compare");
}

namespace {

enum class Verdict { True, False, Inconclusive };

// Interval magnitudes of all coefficients plus their total, shared across the
// per-k Pellet checks of one polynomial.
struct MagTable {
    std::vector<DyadicInterval> mag;
    Dyadic total_lo, total_hi;
};

MagTable magnitude_table(const LocalPolynomial& p) {
    MagTable t;
    t.mag.reserve(p.coeffs.size());
    long prec = p.precision + 4;
    for (const Ball& b : p.coeffs) {
        DyadicInterval m = b.magnitude_interval(prec);
        t.total_lo += m.lo;
        t.total_hi += m.hi;
        t.mag.push_back(std::move(m));
    }
    return t;
}

// One-shot soft Pellet verdict for term k on the unit disc. True and False
// are certified (False covers both a certified sign and a certified soft
// zero); Inconclusive asks for more working precision.
Verdict pellet_verdict(const MagTable& t, int k) {
    const DyadicInterval& zl = t.mag[static_cast<std::size_t>(k)];
    Dyadic zr_lo = t.total_lo - zl.lo;
    Dyadic zr_hi = t.total_hi - zl.hi;
    if (zl.lo > zr_hi) return Verdict::True;
    if (zr_lo > zl.hi) return Verdict::False;
    Dyadic two(2), three(3);
    if (two * zl.hi < three * zr_lo && two * zr_hi < three * zl.lo) {
        return Verdict::False;  // certified soft zero
    }
    return Verdict::Inconclusive;
}

Verdict pellet_verdict(const LocalPolynomial& p, int k) {
    return pellet_verdict(magnitude_table(p), k);
}

}  // namespace

bool soft_pellet(const LocalPolynomial& p, int k, PredicateStats* stats) {
    if (k < 0 || k > p.degree()) throw std::invalid_argument("soft_pellet: k out of range");
    if (stats) {
        ++stats->tests_run;
        stats->note_precision(p.precision);
    }
    switch (pellet_verdict(p, k)) {
        case Verdict::True:
            return true;
        case Verdict::False:
            return false;
        default:
            throw PrecisionExhausted("soft_pellet at working precision " +
                                     std::to_string(p.precision));
    }
}

bool graeffe_pellet_k(const OraclePolynomial& F, const Disc& disc, int k,
                      PredicateStats* stats, const PredicateConfig& cfg) {
    if (k < 0 || k > F.degree()) {
        throw std::invalid_argument("graeffe_pellet_k: k out of range");
    }
    if (disc.radius.sign() <= 0) {
        throw std::invalid_argument("graeffe_pellet_k: disc radius must be > 0");
    }
    int iters = graeffe_default_iterations(F.degree());
    for (long L = cfg.start_bits; L <= cfg.ceiling_bits; L *= 2) {
        if (stats) {
            ++stats->tests_run;
            stats->note_precision(L);
        }
        LocalPolynomial g =
            graeffe_iterate(localize(F, disc.center, disc.radius, L), iters);
        switch (pellet_verdict(g, k)) {
            case Verdict::True:
                return true;
            case Verdict::False:
                return false;
            default:
                break;
        }
    }
    throw PrecisionExhausted("T~G_" + std::to_string(k) + " on " + disc_context(disc));
}

CountResult graeffe_pellet_star(const OraclePolynomial& F, const Disc& disc, int k_max,
                                PredicateStats* stats, const PredicateConfig& cfg) {
    if (k_max < 1 || k_max > F.degree()) {
        throw std::invalid_argument("graeffe_pellet_star: k_max out of range");
    }
    int iters = graeffe_default_iterations(F.degree());
    for (long L = cfg.start_bits; L <= cfg.ceiling_bits; L *= 2) {
        if (stats) stats->note_precision(L);
        LocalPolynomial g =
            graeffe_iterate(localize(F, disc.center, disc.radius, L), iters);
        MagTable table = magnitude_table(g);
        bool all_false = true;
        for (int k = 0; k <= k_max; ++k) {
            if (stats) ++stats->tests_run;
            Verdict v = pellet_verdict(table, k);
            if (v == Verdict::True) return CountResult{k};
            if (v == Verdict::Inconclusive) all_false = false;
        }
        if (all_false) return CountResult{-1};
    }
    throw PrecisionExhausted("T~G_* on " + disc_context(disc));
}

ExclusionResult exclusion_test(const OraclePolynomial& F, const Frame& frame, const Box& b,
                               PredicateStats* stats, const PredicateConfig& cfg) {
    Disc d = frame.box_disc(b);
    return graeffe_pellet_k(F, d, 0, stats, cfg) ? ExclusionResult::Excluded
                                                 : ExclusionResult::Included;
}

}  // namespace rootclust
