#pragma once

#include <functional>

#include "rootclust/geometry.hpp"
#include "rootclust/oracle.hpp"

namespace rootclust {

// Outcome of SoftCompare: 0 certifies (2/3) zl < zr < (3/2) zl; +-1 is the
// exact sign of zl - zr.
enum class SoftSign : int { Negative = -1, Zero = 0, Positive = 1 };

// Result of the combined counting test: k >= 0 certifies the disc holds
// exactly k roots counted with multiplicity; -1 means no k succeeded.
struct CountResult {
    int k = -1;
    bool counted() const { return k >= 0; }
};

// Nonnegative real quantity known through approximations: approx(L) must be
// within 2^-L of the value.
struct RealOracle {
    std::function<Dyadic(long)> approx;
};

struct PredicateConfig {
    long start_bits = 64;
    long ceiling_bits = 1L << 20;
};

// Counters exported to the solver's run statistics.
struct PredicateStats {
    long tests_run = 0;
    long soft_compares = 0;
    long max_precision_bits = 0;
    long max_oracle_bits = 0;  // deepest precision requested from a RealOracle

    void note_precision(long bits) {
        if (bits > max_precision_bits) max_precision_bits = bits;
    }
};

// Adaptive soft comparison of two nonnegative oracular reals (zl + zr > 0).
SoftSign soft_compare(const RealOracle& zl, const RealOracle& zr,
                      PredicateStats* stats = nullptr, const PredicateConfig& cfg = {});

// Soft Pellet test on the unit disc for a localized polynomial: true means
// the k-th term certifiably dominates, so the localized disc holds exactly k
// roots. Throws PrecisionExhausted when p's working precision cannot decide.
bool soft_pellet(const LocalPolynomial& p, int k, PredicateStats* stats = nullptr);

// Graeffe-Pellet counting test T~G_k: localize to the disc, run the standard
// number of root-squaring steps, then soft Pellet; retries with doubled
// working precision up to cfg.ceiling_bits.
bool graeffe_pellet_k(const OraclePolynomial& F, const Disc& disc, int k,
                      PredicateStats* stats = nullptr, const PredicateConfig& cfg = {});

// T~G_*: first k in {0..k_max} that succeeds, else -1. A -1 certifies that
// every per-k test failed at a single shared working precision.
CountResult graeffe_pellet_star(const OraclePolynomial& F, const Disc& disc, int k_max,
                                PredicateStats* stats = nullptr,
                                const PredicateConfig& cfg = {});

enum class ExclusionResult { Excluded, Included };

// T~G_0(Delta(B)): Excluded certifies #(B) = 0; Included certifies #(2B) > 0.
ExclusionResult exclusion_test(const OraclePolynomial& F, const Frame& frame,
                               const Box& b, PredicateStats* stats = nullptr,
                               const PredicateConfig& cfg = {});

}  // namespace rootclust
