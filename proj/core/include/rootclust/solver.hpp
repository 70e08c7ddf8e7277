#pragma once

#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "rootclust/predicates.hpp"

namespace rootclust {

// Output record: an isolator disc of radius <= eps with the exact number of
// roots (counted with multiplicity) it contains.
struct Cluster {
    Disc disc;
    int multiplicity = 1;
};

struct RunStats {
    long boxes_created = 0;
    long components_processed = 0;
    long newton_success = 0;
    long newton_fail = 0;
    long tests_run = 0;
    long soft_compares = 0;
    long max_precision_bits = 0;
    int max_tree_depth = 0;
    long preprocessing_boxes = 0;
    long main_boxes = 0;
    // Newton children wider than the expected 4-box cover are logged, never
    // clamped away.
    long newton_children_gt4 = 0;
    Dyadic eps_eff;
    Dyadic min_preprocessing_width;          // smallest w_C seen in preprocessing
    std::vector<Dyadic> output_widths;       // w_C per output cluster
    std::vector<Dyadic> output_square_widths;  // W_C per output cluster, pop order
    double wall_seconds = 0.0;  // filled by callers that time the run
};

class ClusterSolver;

struct SolverOptions {
    bool use_newton = true;
    long precision_ceiling = 1L << 20;
    bool record_boxes = false;  // retain per-depth included boxes for rendering
    int max_depth = 0;          // 0 = derive a generous cap from eps
    // Diagnostic hook, called with the popped component id at the top of each
    // main-loop iteration (invariant checks in tests).
    std::function<void(const ClusterSolver&, long)> iteration_hook;
};

// Everything a renderer needs to draw a run.
struct RunRecord {
    Frame frame;
    std::vector<std::pair<int, Box>> boxes;
    std::vector<Cluster> clusters;
};

struct SolveResult {
    std::vector<Cluster> clusters;
    RunStats stats;
    RunRecord record;
    Dyadic eps_eff;
};

struct NormalizedInstance {
    OraclePolynomial poly;
    Frame frame;
    Dyadic eps_eff;
};

// Scale the leading coefficient into [1/4, 1), build the (5/4)B0 frame, and
// round min{eps, 1, w(B0)/(96 n)} down to a power of two.
NormalizedInstance normalize_instance(const OraclePolynomial& F,
                                      const ComplexDyadic& b0_center,
                                      const Dyadic& b0_width, const Dyadic& eps);

// The subdivision loop. Component state lives in an arena indexed by id;
// queues hold ids. Exposed (rather than a single free function) so tests can
// drive preprocessing, bisection and Newton steps individually.
class ClusterSolver {
public:
    ClusterSolver(NormalizedInstance instance, SolverOptions options);

    void preprocess();
    void main_loop();
    SolveResult take_result();

    // One bisection step: split every constituent box, drop excluded
    // children, regroup, route adventitious groups to the discard queue, and
    // return the ids of the surviving child components.
    std::vector<long> bisect_step(long id, bool preprocessing_phase);

    // Order-k_C Newton step; empty on any failure (failures are safe, the
    // caller bisects).
    std::optional<long> newton_step(long id);

    const Component& component(long id) const { return comps_[static_cast<size_t>(id)]; }
    const std::vector<Component>& components() const { return comps_; }
    const std::vector<long>& queue_main() const { return q1_; }
    const std::vector<long>& queue_discarded() const { return qdis_; }
    const std::vector<long>& queue_output() const { return qout_; }
    const Frame& frame() const { return frame_; }
    const Dyadic& eps_eff() const { return eps_eff_; }
    const RunStats& stats() const { return stats_; }

private:
    long add_component(Component c);
    long pop_max_width();
    bool passes_separation_gate(const Component& c) const;
    std::vector<Box> newton_child_boxes(const Component& c, const Disc& target,
                                        int child_depth) const;
    std::optional<ComplexDyadic> pick_newton_center(const Component& c) const;
    std::optional<Ball> newton_correction(const ComplexDyadic& x, int k,
                                          const Dyadic& r_new) const;
    RealOracle magnitude_oracle(const ComplexDyadic& x, bool derivative,
                                const Dyadic& scale) const;
    void record_box(const Box& b);
    void check_depth(const Component& c) const;

    OraclePolynomial F_;
    Frame frame_;
    Dyadic eps_eff_;
    SolverOptions opt_;
    PredicateConfig pcfg_;
    RunStats stats_;
    mutable PredicateStats pstats_;
    std::vector<Component> comps_;
    std::deque<long> q0_;
    std::vector<long> q1_, qdis_, qout_;
    std::vector<std::pair<int, Box>> recorded_;
    int depth_cap_ = 0;
    bool preprocessed_ = false;
};

SolveResult solve(const OraclePolynomial& F, const ComplexDyadic& b0_center,
                  const Dyadic& b0_width, const Dyadic& eps,
                  const SolverOptions& options = {});

}  // namespace rootclust
