#pragma once

#include <string>
#include <vector>

#include "rootclust/solver.hpp"

namespace rootclust {

// Ground-truth instance: exact rational roots with multiplicities, the query
// box, and the target radius. The verification oracle works from this record
// alone, in exact rational arithmetic, sharing no numerics with the solver.
struct InstanceSpec {
    std::vector<RootSpec> roots;
    mpq_class lcf = 1;
    ComplexDyadic b0_center;
    Dyadic b0_width = Dyadic(4);
    Dyadic eps = Dyadic::pow2(-12);
    unsigned long seed = 0;
    std::string profile;

    int degree() const {
        int n = 0;
        for (const auto& r : roots) n += r.multiplicity;
        return n;
    }
    OraclePolynomial polynomial() const {
        return OraclePolynomial::from_roots(roots, lcf);
    }
};

// Number of roots (with multiplicity) in the closed disc radius_scale * disc,
// computed exactly. Throws BoundaryAmbiguity if a root sits exactly on the
// circle and strict counting was requested.
int count_roots_in_disc(const std::vector<RootSpec>& roots, const ComplexRational& center,
                        const mpq_class& radius, bool strict = false);
int count_roots_in_disc(const InstanceSpec& spec, const Disc& disc,
                        const mpq_class& radius_scale = mpq_class(1), bool strict = false);

struct Violation {
    std::string rule;
    std::string detail;
};

struct VerificationReport {
    bool ok = true;
    std::vector<Violation> violations;
    std::size_t cluster_count = 0;
    int total_multiplicity = 0;
    Dyadic max_radius;
};

// Checks, in order: radii <= eps; pairwise disc disjointness; the isolator
// law count(D) = multiplicity = count(3D) per cluster; every root in B0
// covered; every covered root inside 2B0.
VerificationReport verify_solution(const InstanceSpec& spec,
                                   const std::vector<Cluster>& clusters);

enum class CorpusProfile {
    WellSeparated,
    ClusteredPairs,
    StrongCluster,
    BoundaryStress,
    Adventitious,
};

const char* profile_name(CorpusProfile p);

// Deterministic per seed. Root jitters use denominators divisible by 3, so
// generated roots are never dyadic and never land on grid lines or tested
// circles.
std::vector<InstanceSpec> gen_corpus(unsigned long seed, CorpusProfile profile, int count);

// For strong-cluster instances: the witness disc (radius <= eps/12) whose
// root group must never be split across output clusters.
struct StrongClusterWitness {
    ComplexRational center;
    mpq_class radius;
    std::vector<std::size_t> root_indices;  // indices into spec.roots
};
StrongClusterWitness strong_cluster_witness(const InstanceSpec& spec);

struct DepthBenchRow {
    Dyadic eps;
    int max_tree_depth = 0;
    long boxes_created = 0;
    long max_precision_bits = 0;
    double wall_seconds = 0.0;
};

// Runs solve once per eps and records scaling data (tree depth, boxes,
// precision).
std::vector<DepthBenchRow> depth_benchmark(const InstanceSpec& spec,
                                           const std::vector<Dyadic>& eps_list,
                                           bool use_newton);

}  // namespace rootclust
