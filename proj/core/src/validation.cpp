#include "rootclust/validation.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace rootclust {

namespace {

mpq_class norm_sqr(const ComplexRational& z) { return z.re * z.re + z.im * z.im; }

bool in_box(const ComplexRational& z, const ComplexDyadic& center, const Dyadic& width) {
    mpq_class half = width.to_mpq() / 2;
    mpq_class dx = z.re - center.re.to_mpq();
    mpq_class dy = z.im - center.im.to_mpq();
    return abs(dx) <= half && abs(dy) <= half;
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

}  // namespace

int count_roots_in_disc(const std::vector<RootSpec>& roots, const ComplexRational& center,
                        const mpq_class& radius, bool strict) {
    mpq_class r2 = radius * radius;
    int total = 0;
    for (const auto& rs : roots) {
        mpq_class d2 = norm_sqr(rs.z - center);
        if (d2 == r2) {
            if (strict) throw BoundaryAmbiguity();
            total += rs.multiplicity;
        } else if (d2 < r2) {
            total += rs.multiplicity;
        }
    }
    return total;
}

int count_roots_in_disc(const InstanceSpec& spec, const Disc& disc,
                        const mpq_class& radius_scale, bool strict) {
    ComplexRational c(disc.center.re.to_mpq(), disc.center.im.to_mpq());
    return count_roots_in_disc(spec.roots, c, disc.radius.to_mpq() * radius_scale, strict);
}

VerificationReport verify_solution(const InstanceSpec& spec,
                                   const std::vector<Cluster>& clusters) {
    VerificationReport rep;
    rep.cluster_count = clusters.size();
    auto fail = [&rep](std::string rule, std::string detail) {
        rep.ok = false;
        rep.violations.push_back({std::move(rule), std::move(detail)});
    };

    // (1) radii <= eps
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        const Dyadic& r = clusters[i].disc.radius;
        if (r > rep.max_radius) rep.max_radius = r;
        if (r > spec.eps) {
            fail("radius", "cluster " + std::to_string(i) + " radius " + r.to_string() +
                               " exceeds eps " + spec.eps.to_string());
        }
        rep.total_multiplicity += clusters[i].multiplicity;
    }

    // (2) pairwise disjoint closed discs: |ci - cj| > ri + rj
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        for (std::size_t j = i + 1; j < clusters.size(); ++j) {
            ComplexDyadic d = clusters[i].disc.center - clusters[j].disc.center;
            Dyadic rr = clusters[i].disc.radius + clusters[j].disc.radius;
            if (d.norm_sqr() <= rr.sqr()) {
                fail("disjointness",
                     "clusters " + std::to_string(i) + " and " + std::to_string(j) +
                         " are not disjoint");
            }
        }
    }

    // (3) isolator law: count(D) = multiplicity = count(3D)
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        int inner = count_roots_in_disc(spec, clusters[i].disc);
        int outer = count_roots_in_disc(spec, clusters[i].disc, mpq_class(3));
        if (inner != clusters[i].multiplicity || outer != clusters[i].multiplicity) {
            std::ostringstream os;
            os << "cluster " << i << ": #(D)=" << inner << " #(3D)=" << outer
               << " declared=" << clusters[i].multiplicity;
            fail("isolator", os.str());
        }
    }

    // (4) every root in B0 is covered; (5) covered roots lie in 2B0
    Dyadic twice_b0 = spec.b0_width.mul_pow2(1);
    for (std::size_t ri = 0; ri < spec.roots.size(); ++ri) {
        const RootSpec& rs = spec.roots[ri];
        bool covered = false;
        for (const Cluster& cl : clusters) {
            ComplexRational c(cl.disc.center.re.to_mpq(), cl.disc.center.im.to_mpq());
            mpq_class r = cl.disc.radius.to_mpq();
            if (norm_sqr(rs.z - c) <= r * r) {
                covered = true;
                break;
            }
        }
        if (in_box(rs.z, spec.b0_center, spec.b0_width) && !covered) {
            fail("coverage", "root (" + rational_str(rs.z.re) + ", " +
                                 rational_str(rs.z.im) + ") in B0 is not covered");
        }
        if (covered && !in_box(rs.z, spec.b0_center, twice_b0)) {
            fail("adventitious-bound",
                 "covered root (" + rational_str(rs.z.re) + ", " + rational_str(rs.z.im) +
                     ") lies outside 2B0");
        }
    }
    return rep;
}

const char* profile_name(CorpusProfile p) {
    switch (p) {
        case CorpusProfile::WellSeparated: return "well-separated";
        case CorpusProfile::ClusteredPairs: return "clustered-pairs";
        case CorpusProfile::StrongCluster: return "strong-cluster";
        case CorpusProfile::BoundaryStress: return "boundary-stress";
        case CorpusProfile::Adventitious: return "adventitious";
    }
    return "?";
}

namespace {

// Deterministic helpers built on raw engine draws only; the distributions in
// <random> are not portable across standard libraries.
long rnd_range(std::mt19937_64& eng, long lo, long hi) {
    return lo + static_cast<long>(eng() % static_cast<unsigned long>(hi - lo + 1));
}

// Jitter in [-1/12, 1/12] with a denominator divisible by 3 and a numerator
// that is not, so base + jitter is never a dyadic number.
mpq_class jitter(std::mt19937_64& eng) {
    long num = rnd_range(eng, -1024, 1024);
    if (num % 3 == 0) ++num;
    return mpq_class(num, 12288);  // 3 * 2^12
}

struct LatticeSampler {
    std::vector<std::pair<int, int>> free_cells;
    explicit LatticeSampler(std::mt19937_64& eng) {
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) free_cells.emplace_back(i, j);
        }
        // Fisher-Yates with raw draws.
        for (std::size_t i = free_cells.size(); i > 1; --i) {
            std::size_t j = eng() % i;
            std::swap(free_cells[i - 1], free_cells[j]);
        }
    }
    // Lattice points (-15/8 + 5/4 i, -15/8 + 5/4 j), spacing 5/4 inside B0.
    ComplexRational take(std::mt19937_64& eng) {
        auto [i, j] = free_cells.back();
        free_cells.pop_back();
        mpq_class x = mpq_class(-15, 8) + mpq_class(5 * i, 4) + jitter(eng);
        mpq_class y = mpq_class(-15, 8) + mpq_class(5 * j, 4) + jitter(eng);
        return ComplexRational(x, y);
    }
};

InstanceSpec base_instance(unsigned long seed, CorpusProfile profile) {
    InstanceSpec spec;
    spec.seed = seed;
    spec.profile = profile_name(profile);
    spec.b0_center = ComplexDyadic(Dyadic(0), Dyadic(0));
    spec.b0_width = Dyadic(4);
    spec.eps = Dyadic::pow2(-12);
    return spec;
}

InstanceSpec gen_well_separated(std::mt19937_64& eng, unsigned long seed) {
    InstanceSpec spec = base_instance(seed, CorpusProfile::WellSeparated);
    LatticeSampler lattice(eng);
    int m = static_cast<int>(rnd_range(eng, 3, 6));
    int budget = 12;
    for (int i = 0; i < m && budget > 0; ++i) {
        int mult = static_cast<int>(rnd_range(eng, 1, 2));
        if (eng() % 8 == 0) mult = static_cast<int>(rnd_range(eng, 3, 4));
        mult = std::min(mult, budget);
        budget -= mult;
        spec.roots.push_back({lattice.take(eng), mult});
    }
    return spec;
}

InstanceSpec gen_clustered_pairs(std::mt19937_64& eng, unsigned long seed) {
    InstanceSpec spec = base_instance(seed, CorpusProfile::ClusteredPairs);
    LatticeSampler lattice(eng);
    int pairs = static_cast<int>(rnd_range(eng, 2, 3));
    for (int i = 0; i < pairs; ++i) {
        ComplexRational c = lattice.take(eng);
        long scale = 10 + 10 * rnd_range(eng, 0, 7);  // separation 2^-10 .. 2^-80
        mpq_class sep = Dyadic::pow2(-scale).to_mpq();
        int m1 = static_cast<int>(rnd_range(eng, 1, 2));
        int m2 = static_cast<int>(rnd_range(eng, 1, 2));
        spec.roots.push_back({c, m1});
        bool horizontal = eng() % 2 == 0;
        ComplexRational other = horizontal ? ComplexRational(c.re + sep, c.im)
                                           : ComplexRational(c.re, c.im + sep);
        spec.roots.push_back({other, m2});
    }
    return spec;
}

InstanceSpec gen_strong_cluster(std::mt19937_64& eng, unsigned long seed) {
    InstanceSpec spec = base_instance(seed, CorpusProfile::StrongCluster);
    spec.eps = Dyadic::pow2(-(10 + rnd_range(eng, 0, 5)));
    LatticeSampler lattice(eng);
    ComplexRational center = lattice.take(eng);
    mpq_class spread = spec.eps.to_mpq() / 48;
    int group = static_cast<int>(rnd_range(eng, 2, 3));
    for (int g = 0; g < group; ++g) {
        // Offsets within L-inf distance eps/48 of the witness center.
        mpq_class dx = spread * (g % 2 == 0 ? 1 : -1) * mpq_class(g + 1, group + 1);
        mpq_class dy = spread * (g % 2 == 0 ? -1 : 1) * mpq_class(g, group + 1);
        spec.roots.push_back(
            {ComplexRational(center.re + dx, center.im + dy),
             static_cast<int>(rnd_range(eng, 1, 2))});
    }
    int extras = static_cast<int>(rnd_range(eng, 1, 2));
    for (int i = 0; i < extras; ++i) {
        spec.roots.push_back({lattice.take(eng), 1});
    }
    // The witness disc must satisfy #(D) = #(114 D) exactly.
    StrongClusterWitness w = strong_cluster_witness(spec);
    int inner = count_roots_in_disc(spec.roots, w.center, w.radius);
    int outer = count_roots_in_disc(spec.roots, w.center, w.radius * 114);
    if (inner != outer || w.root_indices.size() < static_cast<std::size_t>(group)) {
        throw std::logic_error("strong-cluster generator produced an invalid witness");
    }
    return spec;
}

InstanceSpec gen_boundary_stress(std::mt19937_64& eng, unsigned long seed) {
    InstanceSpec spec = base_instance(seed, CorpusProfile::BoundaryStress);
    LatticeSampler lattice(eng);
    int near_edge = static_cast<int>(rnd_range(eng, 2, 3));
    for (int i = 0; i < near_edge; ++i) {
        long k = rnd_range(eng, 3, 8);
        mpq_class off = Dyadic::pow2(-k).to_mpq();
        bool outside = eng() % 2 == 0;
        mpq_class x = mpq_class(2) + (outside ? off : -off) + jitter(eng) / 16;
        if (eng() % 2 == 0) x = -x;
        mpq_class y = mpq_class(rnd_range(eng, -3, 3), 2) + jitter(eng);
        bool swap = eng() % 2 == 0;
        ComplexRational z = swap ? ComplexRational(y, x) : ComplexRational(x, y);
        spec.roots.push_back({z, static_cast<int>(rnd_range(eng, 1, 2))});
    }
    // A couple of roots in the 2B0 \ B0 ring, clear of the critical boundary.
    int ring = static_cast<int>(rnd_range(eng, 1, 2));
    for (int i = 0; i < ring; ++i) {
        mpq_class x = mpq_class(11, 4) + mpq_class(rnd_range(eng, 0, 8), 8) + jitter(eng);
        if (eng() % 2 == 0) x = -x;
        mpq_class y = mpq_class(rnd_range(eng, -7, 7), 4) + jitter(eng);
        bool swap = eng() % 2 == 0;
        ComplexRational z = swap ? ComplexRational(y, x) : ComplexRational(x, y);
        spec.roots.push_back({z, 1});
    }
    if (eng() % 2 == 0) spec.roots.push_back({lattice.take(eng), 1});
    return spec;
}

InstanceSpec gen_adventitious(std::mt19937_64& eng, unsigned long seed) {
    InstanceSpec spec = base_instance(seed, CorpusProfile::Adventitious);
    int m = static_cast<int>(rnd_range(eng, 2, 4));
    for (int i = 0; i < m; ++i) {
        // One coordinate pushed outside B0 (magnitude in (2.1, 3.8)).
        mpq_class x = mpq_class(21, 10) + mpq_class(rnd_range(eng, 0, 17), 10) + jitter(eng);
        if (eng() % 2 == 0) x = -x;
        mpq_class y = mpq_class(rnd_range(eng, -15, 15), 8) + jitter(eng);
        bool swap = eng() % 2 == 0;
        ComplexRational z = swap ? ComplexRational(y, x) : ComplexRational(x, y);
        spec.roots.push_back({z, static_cast<int>(rnd_range(eng, 1, 2))});
    }
    return spec;
}

}  // namespace

StrongClusterWitness strong_cluster_witness(const InstanceSpec& spec) {
    StrongClusterWitness w;
    if (spec.roots.empty()) return w;
    w.center = spec.roots.front().z;
    w.radius = spec.eps.to_mpq() / 16;
    mpq_class r2 = w.radius * w.radius;
    for (std::size_t i = 0; i < spec.roots.size(); ++i) {
        if (norm_sqr(spec.roots[i].z - w.center) <= r2) w.root_indices.push_back(i);
    }
    return w;
}

std::vector<InstanceSpec> gen_corpus(unsigned long seed, CorpusProfile profile, int count) {
    std::vector<InstanceSpec> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        unsigned long s = seed + static_cast<unsigned long>(i);
        std::mt19937_64 eng(s * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL);
        switch (profile) {
            case CorpusProfile::WellSeparated: out.push_back(gen_well_separated(eng, s)); break;
            case CorpusProfile::ClusteredPairs: out.push_back(gen_clustered_pairs(eng, s)); break;
            case CorpusProfile::StrongCluster: out.push_back(gen_strong_cluster(eng, s)); break;
            case CorpusProfile::BoundaryStress: out.push_back(gen_boundary_stress(eng, s)); break;
            case CorpusProfile::Adventitious: out.push_back(gen_adventitious(eng, s)); break;
        }
    }
    return out;
}

std::vector<DepthBenchRow> depth_benchmark(const InstanceSpec& spec,
                                           const std::vector<Dyadic>& eps_list,
                                           bool use_newton) {
    std::vector<DepthBenchRow> rows;
    OraclePolynomial F = spec.polynomial();
    for (const Dyadic& eps : eps_list) {
        SolverOptions opt;
        opt.use_newton = use_newton;
        auto t0 = std::chrono::steady_clock::now();
        SolveResult res = solve(F, spec.b0_center, spec.b0_width, eps, opt);
        auto t1 = std::chrono::steady_clock::now();
        DepthBenchRow row;
        row.eps = eps;
        row.max_tree_depth = res.stats.max_tree_depth;
        row.boxes_created = res.stats.boxes_created;
        row.max_precision_bits = res.stats.max_precision_bits;
        row.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rootclust
