#include "stitlab/mnw.hpp"

#include <cmath>
#include <optional>
#include <queue>

#include "stitlab/errors.hpp"

namespace stitlab::mnw {

using geometry::ConvexPolytope;
using geometry::FacetPolygon;
using geometry::Hyperplane;
using measures::HyperplaneMeasureSpec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxResamples = 1000;

struct Event {
    double time;
    std::size_t id;
    bool operator>(const Event& o) const { return time > o.time; }
};
using EventQueue = std::priority_queue<Event, std::vector<Event>, std::greater<Event>>;

class CheckpointTracker {
public:
    explicit CheckpointTracker(std::span<const double> times) : times_(times.begin(), times.end()), totals_(times.size()) {}

    void record(double birth, double measure) {
        while (next_ < times_.size() && times_[next_] < birth) totals_[next_++] = running_;
        running_ += measure;
    }
    void finish(Tessellation& y) {
        while (next_ < times_.size()) totals_[next_++] = running_;
        y.checkpoint_times = std::move(times_);
        y.checkpoint_totals = std::move(totals_);
        y.total_surface = running_;
    }

private:
    std::vector<double> times_;
    std::vector<double> totals_;
    std::size_t next_ = 0;
    double running_ = 0;
};

void validate(double t_end, std::span<const double> checkpoints) {
    if (!(t_end > 0)) throw DomainError("t_end must be positive");
    double prev = 0;
    for (double c : checkpoints) {
        if (!(c > 0) || c > t_end) throw DomainError("checkpoints must lie in (0, t_end]");
        if (c < prev) throw DomainError("checkpoints must be sorted");
        prev = c;
    }
}

FacetPolygon box_facet(int dim, const Vec3& lo, const Vec3& hi, int axis, const Hyperplane& h, double r) {
    FacetPolygon f;
    f.dim = dim;
    f.carrier = h;
    if (dim == 1) {
        f.vertices = {Vec3{r, 0, 0}};
        f.area = 1;
        return f;
    }
    if (dim == 2) {
        int o = 1 - axis;
        Vec3 a{}, b{};
        a[axis] = b[axis] = r;
        a[o] = lo[o];
        b[o] = hi[o];
        f.vertices = {a, b};
        f.area = hi[o] - lo[o];
        return f;
    }
    int o1 = (axis + 1) % 3, o2 = (axis + 2) % 3;
    std::vector<Vec3> v(4);
    double c1[4] = {lo[o1], hi[o1], hi[o1], lo[o1]};
    double c2[4] = {lo[o2], lo[o2], hi[o2], hi[o2]};
    for (int k = 0; k < 4; ++k) {
        v[k][axis] = r;
        v[k][o1] = c1[k];
        v[k][o2] = c2[k];
    }
    // (e_o1, e_o2) is positively oriented about e_axis; flip for -e_axis.
    if (h.normal[axis] < 0) std::swap(v[1], v[3]);
    f.vertices = std::move(v);
    f.area = (hi[o1] - lo[o1]) * (hi[o2] - lo[o2]);
    return f;
}

Tessellation run_axis_box(const HyperplaneMeasureSpec& spec, double t_end, const Window& window,
                          std::span<const double> checkpoints, Rng& rng, const RunOptions& options) {
    const int dim = spec.dim;
    struct Box {
        Vec3 lo, hi;
        double birth, death;
        bool alive;
    };
    Tessellation y;
    y.window = window;
    y.spec = spec;
    y.t_end = t_end;
    y.cells_kept = options.keep_cells;
    y.facets_kept = options.keep_facets;
    CheckpointTracker tracker(checkpoints);

    std::vector<Box> nodes;
    EventQueue queue;
    auto spawn = [&](const Vec3& lo, const Vec3& hi, double birth) {
        double rate = 0;
        for (int i = 0; i < dim; ++i) rate += hi[i] - lo[i];
        double death = birth + rng.exponential(rate);
        if (death >= t_end) death = kInf;
        std::size_t id = nodes.size();
        nodes.push_back({lo, hi, birth, death, true});
        if (death < kInf) queue.push({death, id});
    };
    auto [lo0, hi0] = window.frame.bounding_box();
    spawn(lo0, hi0, 0.0);

    std::size_t leaves = 1;
    while (!queue.empty()) {
        Event ev = queue.top();
        queue.pop();
        Box cell = nodes[ev.id];
        nodes[ev.id].alive = false;

        // Same draws, in the same order, as the general sampler.
        double total = 0;
        for (int i = 0; i < dim; ++i) total += cell.hi[i] - cell.lo[i];
        double x = rng.uniform() * total;
        int axis = 0;
        while (axis + 1 < dim && x >= cell.hi[axis] - cell.lo[axis]) {
            x -= cell.hi[axis] - cell.lo[axis];
            ++axis;
        }
        double r = rng.uniform(cell.lo[axis], cell.hi[axis]);
        Vec3 e{0, 0, 0};
        e[axis] = 1;
        Hyperplane h = Hyperplane::canonical(dim, e, r);

        double area = 1;
        for (int i = 0; i < dim; ++i)
            if (i != axis) area *= cell.hi[i] - cell.lo[i];
        tracker.record(ev.time, area);
        if (options.keep_facets) {
            IFacetRecord rec;
            rec.facet = box_facet(dim, cell.lo, cell.hi, axis, h, r);
            rec.birth_time = ev.time;
            rec.parent_cell = static_cast<long>(ev.id);
            rec.window_measure = area;
            y.facets.push_back(std::move(rec));
        }
        ++y.split_count;
        if (++leaves > options.max_cells) throw CellLimitExceeded("cell count exceeds the configured maximum");

        Vec3 upper_lo = cell.lo, lower_hi = cell.hi;
        upper_lo[axis] = r;
        lower_hi[axis] = r;
        if (h.normal[axis] > 0) {
            spawn(upper_lo, cell.hi, ev.time);
            spawn(cell.lo, lower_hi, ev.time);
        } else {
            spawn(cell.lo, lower_hi, ev.time);
            spawn(upper_lo, cell.hi, ev.time);
        }
    }
    tracker.finish(y);
    y.final_cell_count = leaves;
    if (options.keep_cells) {
        for (const auto& n : nodes)
            if (n.alive) y.cells.push_back({ConvexPolytope::box(dim, n.lo, n.hi), n.birth, n.death, true});
    }
    return y;
}

}  // namespace

bool is_axis_box(const ConvexPolytope& p) {
    if (p.vertices().size() != (std::size_t{1} << p.dim())) return false;
    auto [lo, hi] = p.bounding_box();
    double v = 1;
    for (int i = 0; i < p.dim(); ++i) v *= hi[i] - lo[i];
    return std::fabs(v - p.volume()) <= 1e-12 * v;
}

Tessellation run(const HyperplaneMeasureSpec& spec, double t_end, const Window& window,
                 std::span<const double> checkpoints, Rng& rng, const RunOptions& options) {
    validate(t_end, checkpoints);
    if (spec.dim != window.dim()) throw DomainError("measure and window dimensions differ");
    if (options.allow_box_fast_path && spec.kind == measures::MeasureKind::AxisCounting &&
        window.region == Window::Region::Frame && is_axis_box(window.frame))
        return run_axis_box(spec, t_end, window, checkpoints, rng, options);

    struct Node {
        std::optional<ConvexPolytope> poly;
        double birth, death;
        bool observed;
    };
    Tessellation y;
    y.window = window;
    y.spec = spec;
    y.t_end = t_end;
    y.cells_kept = options.keep_cells;
    y.facets_kept = options.keep_facets;
    CheckpointTracker tracker(checkpoints);
    const double eps_geom = window.eps_geom();
    const double eps_vol = window.eps_vol();

    std::vector<Node> nodes;
    EventQueue queue;
    auto spawn = [&](ConvexPolytope p, double birth) {
        bool obs = window.may_observe(p);
        double death = kInf;
        if (obs) {
            double rate = measures::measure_hitting(spec, p);
            if (rate > 0) death = birth + rng.exponential(rate);
            if (death >= t_end) death = kInf;
        }
        std::size_t id = nodes.size();
        nodes.push_back({std::move(p), birth, death, obs});
        if (death < kInf) queue.push({death, id});
    };
    spawn(window.frame, 0.0);

    std::size_t leaves = 1;
    while (!queue.empty()) {
        Event ev = queue.top();
        queue.pop();
        ConvexPolytope cell = std::move(*nodes[ev.id].poly);
        nodes[ev.id].poly.reset();

        std::optional<geometry::SplitResult> split;
        for (int attempt = 0; attempt < kMaxResamples && !split; ++attempt) {
            Hyperplane h = measures::sample_hitting(spec, cell, rng);
            auto a = geometry::try_split(cell, h, eps_geom, eps_vol);
            if (a.status == geometry::SplitStatus::Ok) split = std::move(a.result);
        }
        if (!split) throw DegenerateSplit("no admissible split after repeated resampling");

        double measure = window.facet_measure(split->facet);
        tracker.record(ev.time, measure);
        if (options.keep_facets) {
            IFacetRecord rec;
            rec.facet = std::move(split->facet);
            rec.birth_time = ev.time;
            rec.parent_cell = static_cast<long>(ev.id);
            rec.window_measure = measure;
            y.facets.push_back(std::move(rec));
        }
        ++y.split_count;
        if (++leaves > options.max_cells) throw CellLimitExceeded("cell count exceeds the configured maximum");
        spawn(std::move(split->plus), ev.time);
        spawn(std::move(split->minus), ev.time);
    }
    tracker.finish(y);
    y.final_cell_count = leaves;
    if (options.keep_cells) {
        for (auto& n : nodes)
            if (n.poly) y.cells.push_back({std::move(*n.poly), n.birth, n.death, n.observed});
    }
    return y;
}

Tessellation iterate(const Tessellation& y1, const HyperplaneMeasureSpec& spec, double u, Rng& rng,
                     std::span<const double> nested_checkpoints, const RunOptions& options) {
    if (!y1.cells_kept) throw DomainError("iterate needs the final cells of the frame tessellation");
    if (!(u > 0)) throw DomainError("iteration time must be positive");
    validate(u, nested_checkpoints);

    Tessellation out;
    out.window = y1.window;
    out.spec = spec;
    out.t_end = y1.t_end + u;
    out.cells_kept = options.keep_cells;
    out.facets_kept = options.keep_facets && y1.facets_kept;
    out.split_count = y1.split_count;
    if (out.facets_kept) out.facets = y1.facets;
    out.checkpoint_times = y1.checkpoint_times;
    out.checkpoint_totals = y1.checkpoint_totals;
    std::vector<double> nested_totals(nested_checkpoints.size(), 0.0);
    double nested_surface = 0;
    std::size_t cells = 0;

    RunOptions inner = options;
    inner.max_cells = options.max_cells;
    for (std::size_t ci = 0; ci < y1.cells.size(); ++ci) {
        const CellRecord& c = y1.cells[ci];
        if (!c.observed) {
            ++cells;
            if (options.keep_cells) out.cells.push_back(c);
            continue;
        }
        Window w = y1.window;
        w.frame = c.polytope;
        Tessellation sub = run(spec, u, w, nested_checkpoints, rng, inner);
        nested_surface += sub.total_surface;
        for (std::size_t k = 0; k < nested_totals.size(); ++k) nested_totals[k] += sub.checkpoint_totals[k];
        out.split_count += sub.split_count;
        cells += sub.final_cell_count;
        if (cells > options.max_cells) throw CellLimitExceeded("cell count exceeds the configured maximum");
        if (out.facets_kept) {
            for (auto& f : sub.facets) {
                f.birth_time += y1.t_end;
                f.parent_cell = static_cast<long>(ci);
                out.facets.push_back(std::move(f));
            }
        }
        if (options.keep_cells) {
            for (auto& cell : sub.cells) {
                cell.birth_time = cell.birth_time == 0 ? c.birth_time : cell.birth_time + y1.t_end;
                if (cell.death_time < kInf) cell.death_time += y1.t_end;
                out.cells.push_back(std::move(cell));
            }
        }
    }
    for (std::size_t k = 0; k < nested_checkpoints.size(); ++k) {
        out.checkpoint_times.push_back(y1.t_end + nested_checkpoints[k]);
        out.checkpoint_totals.push_back(y1.total_surface + nested_totals[k]);
    }
    out.total_surface = y1.total_surface + nested_surface;
    out.final_cell_count = cells;
    return out;
}

Tessellation rescale(const Tessellation& y, double m) {
    if (!(m > 0)) throw DomainError("rescale factor must be positive");
    const int d = y.window.dim();
    const double area_factor = std::pow(m, d - 1);
    Tessellation out = y;
    out.window = y.window.scaled(m);
    out.t_end = y.t_end / m;
    for (auto& c : out.cells) {
        c.polytope = c.polytope.scaled(m);
        c.birth_time /= m;
        c.death_time /= m;
    }
    for (auto& f : out.facets) {
        for (auto& v : f.facet.vertices) v = m * v;
        f.facet.carrier.offset *= m;
        if (d > 1) f.facet.area *= area_factor;
        if (d > 1) f.window_measure *= area_factor;
        f.birth_time /= m;
    }
    for (auto& t : out.checkpoint_times) t /= m;
    for (auto& s : out.checkpoint_totals) s *= area_factor;
    out.total_surface = y.total_surface * area_factor;
    return out;
}

std::vector<std::pair<double, double>> checkpoint_totals(const Tessellation& y) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < y.checkpoint_times.size(); ++i)
        out.emplace_back(y.checkpoint_times[i], y.checkpoint_totals[i]);
    return out;
}

}  // namespace stitlab::mnw
