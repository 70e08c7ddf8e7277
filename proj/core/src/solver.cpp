#include "rootclust/solver.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rootclust {

namespace {

Dyadic pow2_floor(const Dyadic& d) {
    return Dyadic::pow2(d.floor_log2());
}

// Largest power of two <= w0 / (96 n), exactly.
Dyadic pow2_floor_quotient(const Dyadic& w0, long denom) {
    long e = w0.floor_log2() - (Dyadic(denom).floor_log2() + 1);
    while (Dyadic(denom) * Dyadic::pow2(e + 1) <= w0) ++e;
    while (Dyadic(denom) * Dyadic::pow2(e) > w0) --e;
    return Dyadic::pow2(e);
}

long ceil_log2_ratio(const Dyadic& a, const Dyadic& b) {
    // smallest t with a <= 2^t b
    long t = a.floor_log2() - b.floor_log2();
    while (a > b.mul_pow2(t)) ++t;
    while (t > 0 && a <= b.mul_pow2(t - 1)) --t;
    return t;
}

}  // namespace

NormalizedInstance normalize_instance(const OraclePolynomial& F,
                                      const ComplexDyadic& b0_center,
                                      const Dyadic& b0_width, const Dyadic& eps) {
    if (eps.sign() <= 0) throw std::invalid_argument("normalize_instance: eps must be > 0");
    if (b0_width.sign() <= 0) {
        throw std::invalid_argument("normalize_instance: box width must be > 0");
    }
    NormalizedInstance out{normalize_leading(F),
                           Frame::from_query_box(b0_center, b0_width), Dyadic()};
    Dyadic cand = pow2_floor(eps);
    if (Dyadic(1) < cand) cand = Dyadic(1);
    Dyadic small = pow2_floor_quotient(b0_width, 96L * F.degree());
    out.eps_eff = cand < small ? cand : small;
    return out;
}

ClusterSolver::ClusterSolver(NormalizedInstance instance, SolverOptions options)
    : F_(std::move(instance.poly)),
      frame_(instance.frame),
      eps_eff_(instance.eps_eff),
      opt_(options) {
    pcfg_.ceiling_bits = opt_.precision_ceiling;
    stats_.eps_eff = eps_eff_;

    int n = F_.degree();
    if (opt_.max_depth > 0) {
        depth_cap_ = opt_.max_depth;
    } else {
        long base = ceil_log2_ratio(frame_.root_width(), eps_eff_);
        long slack = static_cast<long>(n) * (8 + ceil_log2_ratio(Dyadic(n + 1), Dyadic(1)));
        depth_cap_ = static_cast<int>(std::max(64L, base + slack + 32));
    }

    Component root = make_component(frame_, {frame_.root_box()});
    root.from_preprocessing = true;
    stats_.boxes_created += 1;
    stats_.preprocessing_boxes += 1;
    stats_.min_preprocessing_width = root.width;
    record_box(frame_.root_box());
    q0_.push_back(add_component(std::move(root)));
}

long ClusterSolver::add_component(Component c) {
    c.id = static_cast<long>(comps_.size());
    stats_.max_tree_depth = std::max(stats_.max_tree_depth, c.tree_depth);
    comps_.push_back(std::move(c));
    return comps_.back().id;
}

void ClusterSolver::record_box(const Box& b) {
    if (opt_.record_boxes) recorded_.emplace_back(b.depth, b);
}

void ClusterSolver::check_depth(const Component& c) const {
    if (c.depth > depth_cap_) {
        std::ostringstream os;
        os << "subdivision depth " << c.depth << " exceeded cap " << depth_cap_
           << " (suspected root on the critical boundary of (5/4)B0)";
        throw PrecisionExhausted(os.str());
    }
}

std::vector<long> ClusterSolver::bisect_step(long id, bool preprocessing_phase) {
    // Copy what we need first: comps_ may reallocate while children are added.
    const Component parent = comps_[static_cast<size_t>(id)];
    check_depth(parent);

    std::vector<Box> kept;
    for (const Box& b : parent.boxes) {
        for (const Box& child : split(b)) {
            ++stats_.boxes_created;
            if (preprocessing_phase) {
                ++stats_.preprocessing_boxes;
            } else {
                ++stats_.main_boxes;
            }
            ExclusionResult res;
            try {
                res = exclusion_test(F_, frame_, child, &pstats_, pcfg_);
            } catch (const PrecisionExhausted&) {
                // Escalate the ceiling once; a second failure aborts the run.
                PredicateConfig esc = pcfg_;
                esc.ceiling_bits = pcfg_.ceiling_bits * 16;
                try {
                    res = exclusion_test(F_, frame_, child, &pstats_, esc);
                } catch (const PrecisionExhausted& e) {
                    throw PrecisionExhausted("exclusion test at depth " +
                                             std::to_string(child.depth) + ": " +
                                             e.context());
                }
            }
            if (res == ExclusionResult::Included) {
                record_box(child);
                kept.push_back(child);
            }
        }
    }

    std::vector<long> survivors;
    if (kept.empty()) return survivors;

    auto groups = connected_components(kept);
    bool single_group = groups.size() == 1;
    for (auto& group : groups) {
        Component child = make_component(frame_, std::move(group));
        child.parent = parent.id;
        child.tree_depth = parent.tree_depth + 1;
        child.from_preprocessing = preprocessing_phase;
        child.speed_log2 = single_group ? 2 : std::max(2L, parent.speed_log2 / 2);
        child.count_upper = parent.count >= 0 ? parent.count : parent.count_upper;
        if (preprocessing_phase &&
            (stats_.min_preprocessing_width.is_zero() ||
             child.width < stats_.min_preprocessing_width)) {
            stats_.min_preprocessing_width = child.width;
        }
        bool adventitious = child.adventitious;
        long cid = add_component(std::move(child));
        if (adventitious) {
            qdis_.push_back(cid);
        } else {
            survivors.push_back(cid);
        }
    }
    return survivors;
}

void ClusterSolver::preprocess() {
    Dyadic half_b0 = frame_.b0_width().mul_pow2(-1);
    while (!q0_.empty()) {
        long id = q0_.front();
        q0_.pop_front();
        const Component& c = comps_[static_cast<size_t>(id)];
        if (c.confined && c.square_width <= half_b0) {
            q1_.push_back(id);
            continue;
        }
        for (long child : bisect_step(id, true)) q0_.push_back(child);
    }
    preprocessed_ = true;
}

long ClusterSolver::pop_max_width() {
    // Ties resolve to the earliest insertion (q1_ is kept in push order).
    std::size_t best = 0;
    for (std::size_t i = 1; i < q1_.size(); ++i) {
        const Component& a = comps_[static_cast<size_t>(q1_[i])];
        const Component& b = comps_[static_cast<size_t>(q1_[best])];
        if (a.square_width > b.square_width) best = i;
    }
    long id = q1_[best];
    q1_.erase(q1_.begin() + static_cast<std::ptrdiff_t>(best));
    return id;
}

bool ClusterSolver::passes_separation_gate(const Component& c) const {
    std::vector<const Component*> others;
    others.reserve(q1_.size() + qdis_.size());
    for (long id : q1_) others.push_back(&comps_[static_cast<size_t>(id)]);
    for (long id : qdis_) others.push_back(&comps_[static_cast<size_t>(id)]);
    return separation_gate(frame_, c, others);
}

void ClusterSolver::main_loop() {
    if (!preprocessed_) throw std::logic_error("main_loop requires preprocess() first");
    while (!q1_.empty()) {
        long id = pop_max_width();
        ++stats_.components_processed;
        if (opt_.iteration_hook) opt_.iteration_hook(*this, id);
        const Component& c = comps_[static_cast<size_t>(id)];
        check_depth(c);

        if (passes_separation_gate(c)) {
            int n = F_.degree();
            int k_max = c.count_upper >= 1 ? std::min(c.count_upper, n) : n;
            CountResult count;
            try {
                count = graeffe_pellet_star(F_, c.delta, k_max, &pstats_, pcfg_);
            } catch (const PrecisionExhausted&) {
                PredicateConfig esc = pcfg_;
                esc.ceiling_bits = pcfg_.ceiling_bits * 16;
                count = graeffe_pellet_star(F_, c.delta, k_max, &pstats_, esc);
            }
            if (count.k > 0) {
                comps_[static_cast<size_t>(id)].count = count.k;
                const Component& cc = comps_[static_cast<size_t>(id)];
                if (cc.square_width >= eps_eff_) {
                    if (opt_.use_newton) {
                        if (auto child = newton_step(id)) {
                            ++stats_.newton_success;
                            q1_.push_back(*child);
                            continue;
                        }
                        ++stats_.newton_fail;
                    }
                } else if (cc.compact()) {
                    qout_.push_back(id);
                    stats_.output_widths.push_back(cc.width);
                    stats_.output_square_widths.push_back(cc.square_width);
                    continue;
                }
            }
        }
        for (long child : bisect_step(id, false)) q1_.push_back(child);
    }
}

RealOracle ClusterSolver::magnitude_oracle(const ComplexDyadic& x, bool derivative,
                                           const Dyadic& scale) const {
    const OraclePolynomial& F = F_;
    long ceiling = pcfg_.ceiling_bits;
    PredicateStats* ps = &pstats_;
    return RealOracle{[&F, x, derivative, scale, ceiling, ps](long L) {
        long extra = scale.is_zero() ? 0 : std::max(0L, scale.floor_log2() + 1);
        long target = L + extra + 1;
        for (long P = std::max(64L, target + 8); P <= ceiling * 16; P *= 2) {
            ps->note_precision(P);
            Ball b = derivative ? eval_derivative_ball(F, x, P) : eval_ball(F, x, P);
            DyadicInterval m = b.magnitude_interval(target + 4);
            if (m.hi - m.lo <= Dyadic::pow2(-target + 1)) {
                Dyadic mid = (m.lo + m.hi).mul_pow2(-1);
                return scale.is_zero() ? mid : round_to(mid * scale, L + 2);
            }
        }
        throw PrecisionExhausted("magnitude oracle");
    }};
}

std::optional<ComplexDyadic> ClusterSolver::pick_newton_center(const Component& c) const {
    // Candidates: midpoints of the edges of B_C pushed outward by w_C/2.
    Dyadic off = c.square_width.mul_pow2(-1) + c.width.mul_pow2(-1);
    const Dyadic& cx = c.square_center.re;
    const Dyadic& cy = c.square_center.im;
    ComplexDyadic candidates[4] = {
        {cx + off, cy}, {cx - off, cy}, {cx, cy + off}, {cx, cy - off}};
    // 4 R_C = 3 W_C.
    Dyadic four_r = Dyadic(3) * c.square_width;
    for (const ComplexDyadic& x : candidates) {
        try {
            RealOracle lhs = magnitude_oracle(x, true, four_r);
            RealOracle rhs = magnitude_oracle(x, false, Dyadic());
            if (soft_compare(lhs, rhs, &pstats_, pcfg_) == SoftSign::Positive) {
                return x;
            }
        } catch (const PrecisionExhausted&) {
            // This candidate cannot be certified; try the next one.
        }
    }
    return std::nullopt;
}

std::optional<Ball> ClusterSolver::newton_correction(const ComplexDyadic& x, int k,
                                                     const Dyadic& r_new) const {
    Dyadic target = r_new.mul_pow2(-4);
    for (long P = 128; P <= pcfg_.ceiling_bits; P *= 2) {
        pstats_.note_precision(P);
        Ball fb = eval_ball(F_, x, P);
        Ball db = eval_derivative_ball(F_, x, P);
        if (db.contains_zero()) continue;
        Ball q = div_ball(fb.scale(Dyadic(k)), db, P);
        if (q.radius() <= target) return q;
    }
    return std::nullopt;
}

std::vector<Box> ClusterSolver::newton_child_boxes(const Component& c, const Disc& target,
                                                   int child_depth) const {
    std::set<std::pair<mpz_class, mpz_class>> parent_cells;
    for (const Box& b : c.boxes) parent_cells.insert({b.ix, b.iy});
    int shift = child_depth - c.depth;

    mpz_class ix_lo = frame_.grid_index_x(target.center.re - target.radius, child_depth);
    mpz_class ix_hi = frame_.grid_index_x(target.center.re + target.radius, child_depth);
    mpz_class iy_lo = frame_.grid_index_y(target.center.im - target.radius, child_depth);
    mpz_class iy_hi = frame_.grid_index_y(target.center.im + target.radius, child_depth);
    mpz_class last = (mpz_class(1) << child_depth) - 1;
    ix_lo = std::max(mpz_class(0), ix_lo);
    iy_lo = std::max(mpz_class(0), iy_lo);
    ix_hi = std::min(last, ix_hi);
    iy_hi = std::min(last, iy_hi);

    std::vector<Box> out;
    for (mpz_class iy = iy_lo; iy <= iy_hi; ++iy) {
        for (mpz_class ix = ix_lo; ix <= ix_hi; ++ix) {
            Box b{child_depth, ix, iy};
            if (!disc_intersects_box(frame_, target, b)) continue;
            mpz_class ax, ay;
            mpz_fdiv_q_2exp(ax.get_mpz_t(), ix.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
            mpz_fdiv_q_2exp(ay.get_mpz_t(), iy.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
            if (parent_cells.count({ax, ay}) == 0) continue;
            out.push_back(std::move(b));
        }
    }
    return out;
}

std::optional<long> ClusterSolver::newton_step(long id) {
    const Component parent = comps_[static_cast<size_t>(id)];
    if (parent.count < 1) return std::nullopt;
    int k = parent.count;

    // r' := max{eps, w_C / (8 N_C)}
    Dyadic r_new = parent.width.mul_pow2(-3 - parent.speed_log2);
    if (r_new < eps_eff_) r_new = eps_eff_;

    // Child grid: deepest t >= 1 with w / 2^t >= 4 r', i.e. child boxes of
    // width in [4 r', 8 r'). Matches w' = w_C/(2 N_C) whenever the eps floor
    // is inactive, and keeps the child a <= 4-box cover otherwise.
    Dyadic four_r = r_new.mul_pow2(2);
    if (parent.width.mul_pow2(-1) < four_r) return std::nullopt;
    int t = 1;
    while (parent.width.mul_pow2(-(t + 1)) >= four_r) ++t;

    auto x = pick_newton_center(parent);
    if (!x) return std::nullopt;
    auto correction = newton_correction(*x, k, r_new);
    if (!correction) return std::nullopt;

    long round_bits = 4 - r_new.floor_log2();
    ComplexDyadic x_new(round_to(x->re - correction->center().re, round_bits),
                        round_to(x->im - correction->center().im, round_bits));
    Disc target(x_new, r_new);

    bool ok;
    try {
        ok = graeffe_pellet_k(F_, target, k, &pstats_, pcfg_);
    } catch (const PrecisionExhausted&) {
        ok = false;
    }
    if (!ok) return std::nullopt;

    std::vector<Box> boxes = newton_child_boxes(parent, target, parent.depth + t);
    if (boxes.empty()) return std::nullopt;
    auto groups = connected_components(boxes);
    if (groups.size() != 1) return std::nullopt;

    if (boxes.size() > 4) ++stats_.newton_children_gt4;
    stats_.boxes_created += static_cast<long>(boxes.size());
    stats_.main_boxes += static_cast<long>(boxes.size());
    for (const Box& b : boxes) record_box(b);

    Component child = make_component(frame_, std::move(boxes));
    child.parent = parent.id;
    child.tree_depth = parent.tree_depth + 1;
    child.speed_log2 = parent.speed_log2 * 2;
    child.count_upper = k;
    return add_component(std::move(child));
}

SolveResult ClusterSolver::take_result() {
    SolveResult out;
    out.eps_eff = eps_eff_;
    for (long id : qout_) {
        const Component& c = comps_[static_cast<size_t>(id)];
        out.clusters.push_back(Cluster{c.delta, c.count});
    }
    stats_.tests_run = pstats_.tests_run;
    stats_.soft_compares = pstats_.soft_compares;
    stats_.max_precision_bits = pstats_.max_precision_bits;
    out.stats = stats_;
    out.record.frame = frame_;
    out.record.boxes = std::move(recorded_);
    out.record.clusters = out.clusters;
    return out;
}

SolveResult solve(const OraclePolynomial& F, const ComplexDyadic& b0_center,
                  const Dyadic& b0_width, const Dyadic& eps, const SolverOptions& options) {
    ClusterSolver solver(normalize_instance(F, b0_center, b0_width, eps), options);
    solver.preprocess();
    solver.main_loop();
    return solver.take_result();
}

}  // namespace rootclust
