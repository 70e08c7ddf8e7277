#include "rootclust/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rootclust {

std::array<Box, 4> split(const Box& b) {
    std::array<Box, 4> out;
    int d = b.depth + 1;
    mpz_class x2 = 2 * b.ix, y2 = 2 * b.iy;
    out[0] = Box{d, x2, y2};
    out[1] = Box{d, x2 + 1, y2};
    out[2] = Box{d, x2, y2 + 1};
    out[3] = Box{d, x2 + 1, y2 + 1};
    return out;
}

Frame Frame::from_query_box(const ComplexDyadic& b0_center, const Dyadic& b0_width) {
    if (b0_width.sign() <= 0) throw std::invalid_argument("Frame: box width must be > 0");
    Frame f;
    f.b0_center_ = b0_center;
    f.b0_width_ = b0_width;
    f.root_width_ = Dyadic(5) * b0_width.mul_pow2(-2);  // (5/4) w0
    Dyadic half = f.root_width_.mul_pow2(-1);
    f.origin_ = ComplexDyadic(b0_center.re - half, b0_center.im - half);
    return f;
}

Rect Frame::root_rect() const {
    return Rect{origin_.re, origin_.re + root_width_, origin_.im, origin_.im + root_width_};
}

Rect Frame::b0_rect() const {
    Dyadic half = b0_width_.mul_pow2(-1);
    return Rect{b0_center_.re - half, b0_center_.re + half, b0_center_.im - half,
                b0_center_.im + half};
}

Rect Frame::box_rect(const Box& b) const {
    Dyadic w = box_width(b.depth);
    Dyadic xlo = origin_.re + Dyadic(b.ix, 0) * w;
    Dyadic ylo = origin_.im + Dyadic(b.iy, 0) * w;
    return Rect{xlo, xlo + w, ylo, ylo + w};
}

ComplexDyadic Frame::box_center(const Box& b) const {
    Dyadic w = box_width(b.depth);
    Dyadic hw = w.mul_pow2(-1);
    return ComplexDyadic(origin_.re + Dyadic(b.ix, 0) * w + hw,
                         origin_.im + Dyadic(b.iy, 0) * w + hw);
}

Disc Frame::box_disc(const Box& b) const {
    Dyadic w = box_width(b.depth);
    return Disc(box_center(b), Dyadic(3) * w.mul_pow2(-2));  // (3/4) w
}

bool Frame::box_touches_root_boundary(const Box& b) const {
    if (b.ix == 0 || b.iy == 0) return true;
    mpz_class last = (mpz_class(1) << b.depth) - 1;
    return b.ix == last || b.iy == last;
}

bool Frame::box_intersects_b0(const Box& b) const {
    return box_rect(b).intersects(b0_rect());
}

mpz_class Frame::grid_index_x(const Dyadic& x, int depth) const {
    return floor_div(x - origin_.re, box_width(depth));
}

mpz_class Frame::grid_index_y(const Dyadic& y, int depth) const {
    return floor_div(y - origin_.im, box_width(depth));
}

Dyadic point_rect_dist_sqr(const ComplexDyadic& p, const Rect& r) {
    Dyadic dx, dy;
    if (p.re < r.xlo) {
        dx = r.xlo - p.re;
    } else if (p.re > r.xhi) {
        dx = p.re - r.xhi;
    }
    if (p.im < r.ylo) {
        dy = r.ylo - p.im;
    } else if (p.im > r.yhi) {
        dy = p.im - r.yhi;
    }
    return dx.sqr() + dy.sqr();
}

bool disc_intersects_rect(const Disc& d, const Rect& r) {
    return point_rect_dist_sqr(d.center, r) <= d.radius.sqr();
}

bool disc_intersects_box(const Frame& frame, const Disc& d, const Box& b) {
    return disc_intersects_rect(d, frame.box_rect(b));
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<std::vector<Box>> connected_components(const std::vector<Box>& boxes) {
    if (boxes.empty()) return {};
    std::vector<Box> sorted = boxes;
    std::sort(sorted.begin(), sorted.end());
    std::map<std::pair<mpz_class, mpz_class>, std::size_t> index;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        index[{sorted[i].ix, sorted[i].iy}] = i;
    }
    UnionFind uf(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                if (dx == 0 && dy == 0) continue;
                auto it = index.find({sorted[i].ix + dx, sorted[i].iy + dy});
                if (it != index.end()) uf.unite(i, it->second);
            }
        }
    }
    std::map<std::size_t, std::vector<Box>> groups;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        groups[uf.find(i)].push_back(sorted[i]);
    }
    std::vector<std::vector<Box>> out;
    out.reserve(groups.size());
    for (auto& [root, group] : groups) out.push_back(std::move(group));
    // Deterministic order: by smallest box of each group (input is sorted, so
    // groups are already keyed by first occurrence; normalize anyway).
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

Component make_component(const Frame& frame, std::vector<Box> boxes) {
    if (boxes.empty()) throw std::invalid_argument("make_component: empty box set");
    std::sort(boxes.begin(), boxes.end());
    Component c;
    c.depth = boxes.front().depth;
    c.width = frame.box_width(c.depth);

    mpz_class min_ix = boxes.front().ix, max_ix = boxes.front().ix;
    mpz_class min_iy = boxes.front().iy, max_iy = boxes.front().iy;
    bool touches = false;
    bool meets_b0 = false;
    for (const Box& b : boxes) {
        if (b.depth != c.depth) {
            throw std::invalid_argument("make_component: mixed box depths");
        }
        min_ix = std::min(min_ix, b.ix);
        max_ix = std::max(max_ix, b.ix);
        min_iy = std::min(min_iy, b.iy);
        max_iy = std::max(max_iy, b.iy);
        touches = touches || frame.box_touches_root_boundary(b);
        meets_b0 = meets_b0 || frame.box_intersects_b0(b);
    }
    c.confined = !touches;
    c.adventitious = !meets_b0;

    mpz_class nx = max_ix - min_ix + 1, ny = max_iy - min_iy + 1;
    mpz_class side_units = std::max(nx, ny);
    c.square_width = Dyadic(side_units, 0) * c.width;
    // Center the square on the bounding rectangle's center, then clamp into
    // the root box (any smallest enclosing square is acceptable).
    Rect lo_rect = frame.box_rect(Box{c.depth, min_ix, min_iy});
    Dyadic cx = lo_rect.xlo + Dyadic(nx, 0).mul_pow2(-1) * c.width;
    Dyadic cy = lo_rect.ylo + Dyadic(ny, 0).mul_pow2(-1) * c.width;
    Dyadic half = c.square_width.mul_pow2(-1);
    Rect root = frame.root_rect();
    if (cx - half < root.xlo) cx = root.xlo + half;
    if (cx + half > root.xhi) cx = root.xhi - half;
    if (cy - half < root.ylo) cy = root.ylo + half;
    if (cy + half > root.yhi) cy = root.yhi - half;
    c.square_center = ComplexDyadic(cx, cy);
    c.delta = Disc(c.square_center, Dyadic(3) * c.square_width.mul_pow2(-2));
    c.boxes = std::move(boxes);
    return c;
}

bool separation_gate(const Frame& frame, const Component& c,
                     const std::vector<const Component*>& others) {
    Disc four = Disc(c.delta.center, Dyadic(4) * c.delta.radius);
    for (const Component* o : others) {
        if (o == nullptr || o->id == c.id) continue;
        for (const Box& b : o->boxes) {
            if (disc_intersects_box(frame, four, b)) return false;
        }
    }
    return true;
}

namespace {

Dyadic rect_rect_dist_sqr(const Rect& a, const Rect& b) {
    Dyadic dx, dy;
    if (a.xhi < b.xlo) {
        dx = b.xlo - a.xhi;
    } else if (b.xhi < a.xlo) {
        dx = a.xlo - b.xhi;
    }
    if (a.yhi < b.ylo) {
        dy = b.ylo - a.yhi;
    } else if (b.yhi < a.ylo) {
        dy = a.ylo - b.yhi;
    }
    return dx.sqr() + dy.sqr();
}

}  // namespace

Dyadic separation_sqr(const Frame& frame, const Component& a, const Component& b) {
    bool first = true;
    Dyadic best;
    for (const Box& ba : a.boxes) {
        Rect ra = frame.box_rect(ba);
        for (const Box& bb : b.boxes) {
            Dyadic d = rect_rect_dist_sqr(ra, frame.box_rect(bb));
            if (first || d < best) {
                best = d;
                first = false;
            }
        }
    }
    return best;
}

std::vector<Rect> extended_support(const Frame& frame, const Component& c) {
    std::vector<Rect> out;
    out.reserve(c.boxes.size());
    Dyadic hw = c.width.mul_pow2(-1);
    for (const Box& b : c.boxes) {
        Rect r = frame.box_rect(b);
        out.push_back(Rect{r.xlo - hw, r.xhi + hw, r.ylo - hw, r.yhi + hw});
    }
    return out;
}

}  // namespace rootclust
