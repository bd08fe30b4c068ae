#include "skflt/cadlag_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace skflt {

namespace {

constexpr double kSnapTol = 1e-12;  // merge tolerance for coincident candidates

double interval_gap(double lo, double hi, double x) {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
}

struct Box {
    double t_lo, t_hi, y_lo, y_hi;
};

Box box_of(const GraphSegment& s) {
    return Box{std::min(s.ax, s.bx), std::max(s.ax, s.bx), std::min(s.ay, s.by),
               std::max(s.ay, s.by)};
}

double point_box_distance(double t, double y, const Box& b) {
    return std::max(interval_gap(b.t_lo, b.t_hi, t), interval_gap(b.y_lo, b.y_hi, y));
}

double box_box_distance(const Box& a, const Box& b) {
    const double gt = std::max(std::max(a.t_lo - b.t_hi, b.t_lo - a.t_hi), 0.0);
    const double gy = std::max(std::max(a.y_lo - b.y_hi, b.y_lo - a.y_hi), 0.0);
    return std::max(gt, gy);
}

// Completed graph plus precomputed boxes, segments ordered by time.
struct IndexedGraph {
    std::vector<Box> boxes;

    explicit IndexedGraph(const CompletedGraph& g) {
        boxes.reserve(g.segments.size());
        for (const auto& s : g.segments) boxes.push_back(box_of(s));
    }

    // Exact min distance from (t,y) to the graph. `hint` is the index of a
    // segment whose time range is near t; callers sweeping in time order keep
    // it monotone so the expansion below stays local.
    double distance(double t, double y, std::size_t& hint) const {
        const std::size_t m = boxes.size();
        if (hint >= m) hint = m - 1;
        // advance hint to the segment whose time interval covers t
        while (hint + 1 < m && boxes[hint].t_hi < t) ++hint;
        while (hint > 0 && boxes[hint].t_lo > t) --hint;
        double best = point_box_distance(t, y, boxes[hint]);
        // expand outward; time gap alone already bounds the distance
        for (std::size_t i = hint; i-- > 0;) {
            if (t - boxes[i].t_hi >= best) break;
            best = std::min(best, point_box_distance(t, y, boxes[i]));
        }
        for (std::size_t i = hint + 1; i < m; ++i) {
            if (boxes[i].t_lo - t >= best) break;
            best = std::min(best, point_box_distance(t, y, boxes[i]));
        }
        return best;
    }
};

// Point moving linearly along a segment: pos(lam) for lam in [0,1].
struct MovingPoint {
    double t0, y0, dt, dy;

    double t(double lam) const { return t0 + lam * dt; }
    double y(double lam) const { return y0 + lam * dy; }
};

void add_lam(std::vector<double>& out, double lam) {
    if (lam > 0.0 && lam < 1.0) out.push_back(lam);
}

void sort_snap(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(),
                        [](double a, double b) { return b - a <= kSnapTol; }),
            v.end());
}

// Exact supremum of lam -> min_j d(pos(lam), window_j) over [0,1].
// `window` indexes into boxes; every graph segment not in the window is known
// to stay farther than the supremum can reach, so the windowed minimum equals
// the true distance wherever it matters.
double segment_supremum(const MovingPoint& mp, const std::vector<Box>& boxes,
                        const std::vector<std::size_t>& window, double lower_bound) {
    if (window.empty()) return lower_bound;
    // structural kinks: clamp boundaries of the moving coordinate against each
    // box side (the |.|-kink at zero gap is one of these crossings)
    std::vector<double> base{0.0, 1.0};
    for (std::size_t j : window) {
        const Box& b = boxes[j];
        if (mp.dt != 0.0) {
            add_lam(base, (b.t_lo - mp.t0) / mp.dt);
            add_lam(base, (b.t_hi - mp.t0) / mp.dt);
        }
        if (mp.dy != 0.0) {
            add_lam(base, (b.y_lo - mp.y0) / mp.dy);
            add_lam(base, (b.y_hi - mp.y0) / mp.dy);
        }
    }
    sort_snap(base);

    auto f = [&](std::size_t j, double lam) {
        return point_box_distance(mp.t(lam), mp.y(lam), boxes[j]);
    };

    // refine with max-crossings (time gap vs value gap) per box, so every f_j
    // is linear on each refined interval
    std::vector<double> grid = base;
    for (std::size_t j : window) {
        const Box& b = boxes[j];
        for (std::size_t i = 0; i + 1 < base.size(); ++i) {
            const double la = base[i], lb = base[i + 1];
            const double da = interval_gap(b.t_lo, b.t_hi, mp.t(la)) -
                              interval_gap(b.y_lo, b.y_hi, mp.y(la));
            const double db = interval_gap(b.t_lo, b.t_hi, mp.t(lb)) -
                              interval_gap(b.y_lo, b.y_hi, mp.y(lb));
            if (da * db < 0.0) add_lam(grid, la + (lb - la) * da / (da - db));
        }
    }
    sort_snap(grid);

    const double rate = std::abs(mp.dt) + std::abs(mp.dy);  // one of them is 0
    const std::size_t w = window.size();
    std::vector<double> va(w), vb(w);
    double best = lower_bound;

    auto eval_min = [&](double lam) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t j : window) m = std::min(m, f(j, lam));
        return m;
    };

    double g_left = eval_min(grid.front());
    best = std::max(best, g_left);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double la = grid[i], lb = grid[i + 1];
        const double g_right = eval_min(lb);
        best = std::max(best, g_right);
        // Lipschitz cap over the interval
        const double cap = 0.5 * (g_left + g_right + rate * (lb - la));
        if (cap > best + kSnapTol) {
            for (std::size_t a = 0; a < w; ++a) {
                va[a] = f(window[a], la);
                vb[a] = f(window[a], lb);
            }
            // pairwise crossings of the (now linear) per-segment distances
            for (std::size_t a = 0; a < w; ++a) {
                for (std::size_t c = a + 1; c < w; ++c) {
                    const double da = va[a] - va[c];
                    const double db = vb[a] - vb[c];
                    if (da * db < 0.0) {
                        const double lam = la + (lb - la) * da / (da - db);
                        if (lam > la && lam < lb) best = std::max(best, eval_min(lam));
                    }
                }
            }
        }
        g_left = g_right;
    }
    return best;
}

// Directed Hausdorff part: sup over points of A of the distance to B.
double directed_supremum(const CompletedGraph& ga, const IndexedGraph& ib) {
    const auto& segs = ga.segments;
    const std::size_t m = segs.size();

    // endpoint distances (shared corners computed once per traversal point)
    std::vector<double> end_a(m), end_b(m);
    std::size_t hint = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        end_a[i] = (i > 0 && segs[i].ax == segs[i - 1].bx && segs[i].ay == segs[i - 1].by)
                       ? end_b[i - 1]
                       : ib.distance(segs[i].ax, segs[i].ay, hint);
        end_b[i] = ib.distance(segs[i].bx, segs[i].by, hint);
        best = std::max(best, std::max(end_a[i], end_b[i]));
    }

    for (std::size_t i = 0; i < m; ++i) {
        const GraphSegment& s = segs[i];
        const double len = s.length();
        if (len <= 0.0) continue;
        const double cap = 0.5 * (end_a[i] + end_b[i] + len);
        if (cap <= best + kSnapTol) continue;

        // window: all opposing segments that could come within `cap`
        const Box sbox = box_of(s);
        std::vector<std::size_t> window;
        for (std::size_t j = 0; j < ib.boxes.size(); ++j) {
            if (box_box_distance(sbox, ib.boxes[j]) <= cap) window.push_back(j);
        }
        const MovingPoint mp{s.ax, s.ay, s.bx - s.ax, s.by - s.ay};
        best = std::max(best, segment_supremum(mp, ib.boxes, window, best));
    }
    return best;
}

}  // namespace

double GraphSegment::length() const { return std::abs(bx - ax) + std::abs(by - ay); }

CompletedGraph CompletedGraph::from(const StepPath& path) {
    CompletedGraph g;
    g.segments.reserve(2 * path.times.size() + 1);
    double prev_t = 0.0;
    double prev_v = path.initial_value;
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        const double t = path.times[i];
        const double v = path.values[i];
        if (v == prev_v) continue;  // no jump: plateau keeps extending
        if (t > prev_t) {
            g.segments.push_back(GraphSegment{prev_t, prev_v, t, prev_v});
        }
        g.segments.push_back(GraphSegment{t, prev_v, t, v});
        prev_t = t;
        prev_v = v;
    }
    if (prev_t < 1.0) g.segments.push_back(GraphSegment{prev_t, prev_v, 1.0, prev_v});
    if (g.segments.empty())  // constant path with a jump time at t = 1
        g.segments.push_back(GraphSegment{0.0, prev_v, 1.0, prev_v});
    return g;
}

CompletedGraph completed_graph(const StepPath& path) { return CompletedGraph::from(path); }

double CompletedGraph::arc_length() const {
    double total = 0.0;
    for (const auto& s : segments) total += s.length();
    return total;
}

bool CompletedGraph::connected() const {
    for (std::size_t i = 1; i < segments.size(); ++i) {
        if (segments[i].ax != segments[i - 1].bx || segments[i].ay != segments[i - 1].by)
            return false;
    }
    return true;
}

double m2_distance(const StepPath& x1, const StepPath& x2) {
    const CompletedGraph g1 = CompletedGraph::from(x1);
    const CompletedGraph g2 = CompletedGraph::from(x2);
    const IndexedGraph i1(g1), i2(g2);
    return std::max(directed_supremum(g1, i2), directed_supremum(g2, i1));
}

DistanceInterval m2_distance_oracle(const StepPath& x1, const StepPath& x2, double grid_step) {
    if (!(grid_step > 0.0)) throw std::invalid_argument("m2_distance_oracle: grid_step > 0");
    const CompletedGraph g1 = CompletedGraph::from(x1);
    const CompletedGraph g2 = CompletedGraph::from(x2);

    // brute-force point-to-graph minimum, independent of the exact engine's
    // sweep; only the sound time-gap skip is applied
    auto dist_to = [](const CompletedGraph& g, double t, double y) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : g.segments) {
            const double tl = std::min(s.ax, s.bx), th = std::max(s.ax, s.bx);
            if (interval_gap(tl, th, t) >= best) continue;
            const double yl = std::min(s.ay, s.by), yh = std::max(s.ay, s.by);
            best = std::min(best, std::max(interval_gap(tl, th, t), interval_gap(yl, yh, y)));
        }
        return best;
    };

    auto directed = [&](const CompletedGraph& from, const CompletedGraph& to) {
        double sup = 0.0;
        for (const auto& s : from.segments) {
            const double len = s.length();
            const auto n = static_cast<std::size_t>(std::ceil(len / grid_step)) + 1;
            for (std::size_t k = 0; k <= n; ++k) {
                const double lam = static_cast<double>(k) / static_cast<double>(n);
                sup = std::max(sup, dist_to(to, s.ax + lam * (s.bx - s.ax),
                                            s.ay + lam * (s.by - s.ay)));
            }
        }
        return sup;
    };

    const double lower = std::max(directed(g1, g2), directed(g2, g1));
    return DistanceInterval{lower, lower + grid_step};
}

double uniform_distance(const StepPath& x1, const StepPath& x2) {
    double sup = std::abs(x1.initial_value - x2.initial_value);
    auto scan = [&](const StepPath& p) {
        for (double t : p.times) sup = std::max(sup, std::abs(x1.value_at(t) - x2.value_at(t)));
    };
    scan(x1);
    scan(x2);
    sup = std::max(sup, std::abs(x1.value_at_one() - x2.value_at_one()));
    return sup;
}

}  // namespace skflt
