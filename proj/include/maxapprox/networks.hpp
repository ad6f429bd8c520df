#pragma once

#include <stdexcept>
#include <utility>

#include "maxapprox/linalg.hpp"

namespace maxapprox {

enum class Activation { relu, identity };

struct Layer {
    Matrix weights;  // out x in
    Vector bias;     // out
    Activation activation = Activation::identity;
    /// Per output neuron, the 1-based coordinate tuple whose subpool max
    /// that neuron helps compute; empty when the layer carries none.
    std::vector<std::vector<int>> annotations;
    /// Carried subpool maxes after this stage; 0 when not applicable.
    std::size_t value_width = 0;
};

/// Alternating affine/activation network over exact rationals. Forward
/// evaluation is exact for rational inputs and weights.
struct ReluNetwork {
    std::size_t input_dim = 0;
    std::size_t output_dim = 0;
    std::vector<Layer> layers;

    Vector forward(const Vector& x) const;
    std::size_t relu_stage_count() const;
    /// Carried-value widths per ReLU stage (the counts the layer-size
    /// formulas speak in).
    std::vector<std::size_t> value_widths() const;
    /// ReLU unit counts per stage; the sign-split pairwise gadget spends
    /// four units per carried max.
    std::vector<std::size_t> relu_widths() const;
};

/// One hidden layer of d units computing sum_k ReLU(x_k - xi). The output
/// is <= 0 exactly when max(x) <= xi.
ReluNetwork heaviside_gate(int d, const Rational& xi);

/// Divide-and-conquer exact max: inputs are padded to the next power of
/// two by duplicating coordinate 1, then ceil(log2 d) stages of pairwise
/// maxes, each pair spending four ReLUs on (a-b, b-a, a+b, -a-b) combined
/// as (r1 + r2 + r3 - r4)/2.
ReluNetwork pairwise_max_network(int d);

struct WidthSchedule {
    int depth;                        // ceil(log2(d-1))
    std::vector<std::size_t> widths;  // w(d,1), ..., w(d,depth)
};

/// Layer widths for computing all d order-(d-1) subpool maxes with reuse:
/// w(d,1) = 2^floor(log2(d-2)) + (d-1) and
/// w(d,j) = 2^(depth-j) (1 + zeta(d, depth-j)) with
/// zeta(d,j) = ceil((d-1)/2^j).
WidthSchedule width_schedule(int d);

struct TupleScheduleError : std::logic_error {
    TupleScheduleError(const std::string& what, int bad_layer)
        : std::logic_error(what), layer(bad_layer) {}
    int layer;
};

/// Index tuples carried at every layer when computing the d drop-one
/// subpool maxes, with the split points that generate them.
struct TupleSchedule {
    int d = 0;
    int depth = 0;
    /// psi[j-1]: inclusive 1-based position ranges into the final tuples.
    std::vector<std::vector<std::pair<int, int>>> psi;
    /// tuples[j-1]: distinct coordinate tuples at layer j, lex sorted.
    std::vector<std::vector<std::vector<int>>> tuples;
    /// parents[j-1][i]: indices of the two layer-(j-1) values whose max
    /// forms tuple i; for j = 1 these are 0-based input coordinates.
    /// Lexicographically smallest valid pair, so builds are deterministic.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> parents;
    /// Tuples appearing in more than one (final tuple, range) slot.
    std::vector<std::size_t> repeated_counts;
};

/// Builds the schedule and verifies its shape on the way: layer sizes
/// match width_schedule, the last layer is the d drop-one tuples, and every
/// tuple is the union of exactly two tuples of the previous layer. A
/// violation throws TupleScheduleError naming the layer.
TupleSchedule tuple_schedule(int d);

/// The optimal {0, d-1} estimator compiled to a network: hidden structure
/// follows tuple_schedule(d), the output layer is
/// 1/(2d) + (1/d) sum of the d order-(d-1) subpool maxes.
ReluNetwork d1_estimator_network(int d);

/// Distinct subpool maxes of each intermediate order needed by a full-R
/// estimator: (C(d,2), ..., C(d,d-1)).
std::vector<unsigned long long> full_estimator_widths(int d);

}  // namespace maxapprox
