#pragma once

#include <array>
#include <vector>

#include "rootclust/dyadic.hpp"

namespace rootclust {

struct Disc {
    ComplexDyadic center;
    Dyadic radius;

    Disc() = default;
    Disc(ComplexDyadic c, Dyadic r) : center(std::move(c)), radius(std::move(r)) {}

    // k*Delta scales the radius only.
    Disc scaled(const Dyadic& k) const { return Disc(center, radius * k); }
};

// Axes-aligned closed rectangle with exact dyadic corners.
struct Rect {
    Dyadic xlo, xhi, ylo, yhi;

    bool intersects(const Rect& o) const {
        return xlo <= o.xhi && o.xlo <= xhi && ylo <= o.yhi && o.ylo <= yhi;
    }
    bool contains_point(const Dyadic& x, const Dyadic& y) const {
        return xlo <= x && x <= xhi && ylo <= y && y <= yhi;
    }
};

// Grid-aligned square inside the root box (5/4)B0, identified by subdivision
// depth and integer grid coordinates. All geometry (centers, corners, widths)
// is derived exactly from the frame, so adjacency and hashing never round.
struct Box {
    int depth = 0;
    mpz_class ix, iy;

    friend bool operator==(const Box& a, const Box& b) {
        return a.depth == b.depth && a.ix == b.ix && a.iy == b.iy;
    }
    friend bool operator<(const Box& a, const Box& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        int c = cmp(a.iy, b.iy);
        if (c != 0) return c < 0;
        return cmp(a.ix, b.ix) < 0;
    }
};

// Children tile the parent exactly: grid coordinates double, depth + 1.
std::array<Box, 4> split(const Box& b);

// The subdivision frame: the root box (5/4)B0 and the query box B0.
class Frame {
public:
    Frame() = default;
    // B0 is the square of width w0 centered at (cx, cy); the root box is the
    // concentric square of width (5/4) w0.
    static Frame from_query_box(const ComplexDyadic& b0_center, const Dyadic& b0_width);

    const Dyadic& root_width() const { return root_width_; }
    const Dyadic& b0_width() const { return b0_width_; }
    Rect root_rect() const;
    Rect b0_rect() const;

    Dyadic box_width(int depth) const { return root_width_.mul_pow2(-depth); }
    Rect box_rect(const Box& b) const;
    ComplexDyadic box_center(const Box& b) const;
    // Delta(B) = Delta(center, (3/4) w).
    Disc box_disc(const Box& b) const;

    bool box_touches_root_boundary(const Box& b) const;
    bool box_intersects_b0(const Box& b) const;

    // floor((x - origin_x)/w_depth): grid column of a point, unclamped.
    mpz_class grid_index_x(const Dyadic& x, int depth) const;
    mpz_class grid_index_y(const Dyadic& y, int depth) const;

    Box root_box() const { return Box{0, 0, 0}; }

private:
    ComplexDyadic origin_;  // lower-left corner of the root box
    Dyadic root_width_;
    ComplexDyadic b0_center_;
    Dyadic b0_width_;
};

// Squared distance from a point to a closed rectangle (0 inside).
Dyadic point_rect_dist_sqr(const ComplexDyadic& p, const Rect& r);

// Closed disc meets closed box (boundary contact counts).
bool disc_intersects_box(const Frame& frame, const Disc& d, const Box& b);
bool disc_intersects_rect(const Disc& d, const Rect& r);

// Connected union of same-depth boxes together with the metrics the solver
// needs: constituent width w, component box B_C (smallest enclosing square
// clamped into the root box), its width W, and the disc Delta_C of radius
// (3/4) W. Newton speed and verified counts ride along as solver state.
struct Component {
    std::vector<Box> boxes;  // nonempty, same depth, sorted
    int depth = 0;

    Dyadic width;               // w_C
    ComplexDyadic square_center;  // center of B_C
    Dyadic square_width;        // W_C
    Disc delta;                 // Delta_C, radius (3/4) W_C
    bool confined = false;
    bool adventitious = false;

    long speed_log2 = 2;  // N_C = 2^speed_log2, so >= 4
    int count = -1;       // k_C when verified by a counting test
    int count_upper = -1; // inherited upper bound on k_C (-1 = none)

    long id = 0;          // creation order, used for deterministic tie-breaks
    long parent = -1;
    int tree_depth = 0;
    bool from_preprocessing = false;

    const Dyadic& radius() const { return delta.radius; }  // R_C = (3/4) W_C
    bool compact() const { return square_width <= Dyadic(3) * width; }
};

// Group interior-disjoint same-depth boxes into maximal 8-connected
// components (corner contact counts, matching closed-box intersection).
std::vector<std::vector<Box>> connected_components(const std::vector<Box>& boxes);

// Compute metrics for a connected group; does not set solver fields.
Component make_component(const Frame& frame, std::vector<Box> boxes);

// True iff 4*Delta_C meets no constituent box of any other component.
bool separation_gate(const Frame& frame, const Component& c,
                     const std::vector<const Component*>& others);

// Exact lower bound on Sep(C, C')^2 (minimum over box pairs); test support.
Dyadic separation_sqr(const Frame& frame, const Component& a, const Component& b);

// Extended component support: union of 2B over constituent boxes. Exposed for
// tests of the #(C) = #(C+) property; not maintained incrementally.
std::vector<Rect> extended_support(const Frame& frame, const Component& c);

}  // namespace rootclust
