#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "stitlab/geometry.hpp"
#include "stitlab/measures.hpp"
#include "stitlab/random.hpp"
#include "stitlab/window.hpp"

namespace stitlab::mnw {

struct CellRecord {
    geometry::ConvexPolytope polytope;
    double birth_time = 0;
    double death_time = std::numeric_limits<double>::infinity();
    // False for cells dropped because they cannot meet the observation
    // region; such cells are never split.
    bool observed = true;
};

struct IFacetRecord {
    geometry::FacetPolygon facet;
    double birth_time = 0;
    long parent_cell = -1;
    // Vol_{d-1} of the facet inside the observation region.
    double window_measure = 0;
};

struct Tessellation {
    Window window;
    measures::HyperplaneMeasureSpec spec;
    double t_end = 0;
    std::vector<CellRecord> cells;
    std::vector<IFacetRecord> facets;
    std::vector<double> checkpoint_times;
    std::vector<double> checkpoint_totals;
    // Always maintained, even when cells/facets are not kept.
    double total_surface = 0;
    std::size_t split_count = 0;
    std::size_t final_cell_count = 1;
    bool cells_kept = false;
    bool facets_kept = false;
};

struct RunOptions {
    bool keep_cells = false;
    bool keep_facets = true;
    std::size_t max_cells = 10'000'000;
    // Axis-counting measure on an axis-parallel box keeps every cell a box.
    bool allow_box_fast_path = true;
};

Tessellation run(const measures::HyperplaneMeasureSpec& spec, double t_end, const Window& window,
                 std::span<const double> checkpoints, Rng& rng, const RunOptions& options = {});

// Refines each observed final cell of y1 by an independent run of duration u.
// Nested birth times are offset by y1.t_end; nested checkpoints are given
// relative to that offset. Requires y1 to carry its cells.
Tessellation iterate(const Tessellation& y1, const measures::HyperplaneMeasureSpec& spec, double u, Rng& rng,
                     std::span<const double> nested_checkpoints = {}, const RunOptions& options = {});

// Scales all lengths by m. Since every supported measure is translation
// invariant and homogeneous of degree one, the result is a realization of
// Y(t/m, mW); times are divided by m accordingly.
Tessellation rescale(const Tessellation& y, double m);

std::vector<std::pair<double, double>> checkpoint_totals(const Tessellation& y);

bool is_axis_box(const geometry::ConvexPolytope& p);

}  // namespace stitlab::mnw
