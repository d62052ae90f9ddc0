#pragma once

#include <string>
#include <vector>

#include "stitlab/geometry.hpp"
#include "stitlab/random.hpp"

namespace stitlab::measures {

enum class MeasureKind { Isotropic, DiscreteDirectional, AxisCounting };

struct WeightedDirection {
    Vec3 direction{};
    double weight = 0;
};

// The driving hyperplane measure. Isotropic: Λ([K]) is the mean width of K.
// DiscreteDirectional: Σ p_i w_K(u_i). AxisCounting: Σ extents along the
// coordinate axes.
struct HyperplaneMeasureSpec {
    MeasureKind kind = MeasureKind::Isotropic;
    int dim = 2;
    std::vector<WeightedDirection> directions;

    static HyperplaneMeasureSpec isotropic(int dim);
    static HyperplaneMeasureSpec axis_counting(int dim);
    // Normalizes directions and weights; throws DomainError if the weights
    // are not positive or, when require_span is set, the directions do not
    // span the space.
    static HyperplaneMeasureSpec discrete(int dim, std::vector<WeightedDirection> dirs, bool require_span = true);

    bool translation_invariant() const { return true; }
    std::string name() const;
};

struct TimeScaledMeasure {
    HyperplaneMeasureSpec spec;
    double t = 1;
};

double measure_hitting(const HyperplaneMeasureSpec& m, const geometry::ConvexPolytope& k);
// Λ([B(c,R)]); a ball has width 2R in every direction.
double measure_hitting_ball(const HyperplaneMeasureSpec& m, double radius);
double segment_measure(const HyperplaneMeasureSpec& m, const Vec3& x, const Vec3& y);

geometry::Hyperplane sample_hitting(const HyperplaneMeasureSpec& m, const geometry::ConvexPolytope& k, Rng& rng);
// Uniform direction on S^{d-1}.
Vec3 sample_direction(int dim, Rng& rng);

}  // namespace stitlab::measures
