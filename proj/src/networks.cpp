#include "maxapprox/networks.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace maxapprox {

namespace {

int ceil_log2(int n) {
    int k = 0;
    while ((1 << k) < n) ++k;
    return k;
}

int floor_log2(int n) {
    int k = 0;
    while ((1 << (k + 1)) <= n) ++k;
    return k;
}

int zeta(int d, int j) {
    return (d - 1 + (1 << j) - 1) / (1 << j);  // ceil((d-1)/2^j)
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0;
    for (int v : a) {
        while (i < b.size() && b[i] < v) ++i;
        if (i == b.size() || b[i] != v) return false;
        ++i;
    }
    return true;
}

std::vector<int> tuple_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Combiner mapping each gadget's four ReLU outputs back to one max value.
Matrix gadget_combiner(std::size_t pairs) {
    Matrix a(pairs, 4 * pairs);
    const Rational half = rat(1, 2);
    for (std::size_t q = 0; q < pairs; ++q) {
        a(q, 4 * q) = half;
        a(q, 4 * q + 1) = half;
        a(q, 4 * q + 2) = half;
        a(q, 4 * q + 3) = -half;
    }
    return a;
}

// Pre-activations (a-b, b-a, a+b, -a-b) per pair, over the previous value
// vector. Coinciding parents accumulate.
Matrix gadget_preactivation(const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                            std::size_t in_dim) {
    Matrix h(4 * pairs.size(), in_dim);
    for (std::size_t q = 0; q < pairs.size(); ++q) {
        const auto [a, b] = pairs[q];
        h(4 * q, a) += 1;
        h(4 * q, b) -= 1;
        h(4 * q + 1, a) -= 1;
        h(4 * q + 1, b) += 1;
        h(4 * q + 2, a) += 1;
        h(4 * q + 2, b) += 1;
        h(4 * q + 3, a) -= 1;
        h(4 * q + 3, b) -= 1;
    }
    return h;
}

}  // namespace

Vector ReluNetwork::forward(const Vector& x) const {
    if (x.size() != input_dim) throw std::invalid_argument("network input length mismatch");
    Vector v = x;
    for (const Layer& layer : layers) {
        Vector next = layer.weights * v;
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] += layer.bias[i];
            if (layer.activation == Activation::relu && sgn(next[i]) < 0) next[i] = 0;
        }
        v = std::move(next);
    }
    return v;
}

std::size_t ReluNetwork::relu_stage_count() const {
    std::size_t n = 0;
    for (const Layer& layer : layers)
        if (layer.activation == Activation::relu) ++n;
    return n;
}

std::vector<std::size_t> ReluNetwork::value_widths() const {
    std::vector<std::size_t> out;
    for (const Layer& layer : layers)
        if (layer.activation == Activation::relu) out.push_back(layer.value_width);
    return out;
}

std::vector<std::size_t> ReluNetwork::relu_widths() const {
    std::vector<std::size_t> out;
    for (const Layer& layer : layers)
        if (layer.activation == Activation::relu) out.push_back(layer.weights.rows());
    return out;
}

ReluNetwork heaviside_gate(int d, const Rational& xi) {
    if (d < 1) throw std::invalid_argument("heaviside gate requires d >= 1");
    const auto n = static_cast<std::size_t>(d);
    ReluNetwork net;
    net.input_dim = n;
    net.output_dim = 1;

    Layer hidden;
    hidden.weights = Matrix::identity(n);
    hidden.bias.assign(n, Rational(-xi));
    hidden.activation = Activation::relu;
    hidden.value_width = n;
    for (int i = 1; i <= d; ++i) hidden.annotations.push_back({i});
    net.layers.push_back(std::move(hidden));

    Layer sum;
    sum.weights = Matrix(1, n);
    for (std::size_t j = 0; j < n; ++j) sum.weights(0, j) = 1;
    sum.bias.assign(1, Rational(0));
    net.layers.push_back(std::move(sum));
    return net;
}

ReluNetwork pairwise_max_network(int d) {
    if (d < 2) throw std::invalid_argument("pairwise max requires d >= 2");
    const int stages = ceil_log2(d);
    const int padded = 1 << stages;

    ReluNetwork net;
    net.input_dim = static_cast<std::size_t>(d);
    net.output_dim = 1;

    // Padded positions duplicate coordinate 1, which preserves the max and
    // keeps all weights finite.
    auto coord = [&](int pos) { return pos <= d ? pos : 1; };

    std::vector<std::vector<int>> tuples;  // per carried value
    Matrix carry;                          // previous combiner, empty before stage 1
    for (int k = 1; k <= stages; ++k) {
        const std::size_t pairs = static_cast<std::size_t>(padded >> k);
        std::vector<std::pair<std::size_t, std::size_t>> wiring(pairs);
        std::vector<std::vector<int>> next_tuples(pairs);
        for (std::size_t q = 0; q < pairs; ++q) {
            if (k == 1) {
                const int a = coord(static_cast<int>(2 * q + 1));
                const int b = coord(static_cast<int>(2 * q + 2));
                wiring[q] = {static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)};
                next_tuples[q] = tuple_union({a}, {b});
            } else {
                wiring[q] = {2 * q, 2 * q + 1};
                next_tuples[q] = tuple_union(tuples[2 * q], tuples[2 * q + 1]);
            }
        }
        const std::size_t in_dim =
            k == 1 ? static_cast<std::size_t>(d) : static_cast<std::size_t>(padded >> (k - 1));
        Matrix h = gadget_preactivation(wiring, in_dim);

        Layer layer;
        layer.weights = k == 1 ? std::move(h) : h * carry;
        layer.bias.assign(layer.weights.rows(), Rational(0));
        layer.activation = Activation::relu;
        layer.value_width = pairs;
        for (std::size_t q = 0; q < pairs; ++q)
            for (int copy = 0; copy < 4; ++copy) layer.annotations.push_back(next_tuples[q]);
        net.layers.push_back(std::move(layer));

        carry = gadget_combiner(pairs);
        tuples = std::move(next_tuples);
    }

    Layer out;
    out.weights = carry;
    out.bias.assign(1, Rational(0));
    net.layers.push_back(std::move(out));
    return net;
}

WidthSchedule width_schedule(int d) {
    if (d < 3) throw std::invalid_argument("width schedule requires d >= 3");
    WidthSchedule s;
    s.depth = ceil_log2(d - 1);
    s.widths.push_back(static_cast<std::size_t>((1 << floor_log2(d - 2)) + (d - 1)));
    for (int j = 2; j <= s.depth; ++j)
        s.widths.push_back(static_cast<std::size_t>(
            (1 << (s.depth - j)) * (1 + zeta(d, s.depth - j))));
    return s;
}

TupleSchedule tuple_schedule(int d) {
    if (d < 3) throw std::invalid_argument("tuple schedule requires d >= 3");
    TupleSchedule s;
    s.d = d;
    s.depth = ceil_log2(d - 1);

    std::vector<std::vector<int>> finals;
    for (int drop = d; drop >= 1; --drop) {
        std::vector<int> t;
        for (int i = 1; i <= d; ++i)
            if (i != drop) t.push_back(i);
        finals.push_back(std::move(t));
    }

    // Split points: each inclusive range [i1, i2] of length L becomes the
    // two ceil-halves [i1, i1+s-1] and [i2-s+1, i2] with s = ceil(L/2);
    // odd lengths overlap by one position.
    s.psi.assign(static_cast<std::size_t>(s.depth), {});
    std::set<std::pair<int, int>> ranges{{1, d - 1}};
    s.psi[static_cast<std::size_t>(s.depth - 1)] = {ranges.begin(), ranges.end()};
    for (int j = s.depth - 1; j >= 1; --j) {
        std::set<std::pair<int, int>> next;
        for (const auto& [i1, i2] : ranges) {
            const int len = i2 - i1 + 1;
            const int half = (len + 1) / 2;
            next.insert({i1, i1 + half - 1});
            next.insert({i2 - half + 1, i2});
        }
        ranges = std::move(next);
        s.psi[static_cast<std::size_t>(j - 1)] = {ranges.begin(), ranges.end()};
    }

    const WidthSchedule widths = width_schedule(d);
    s.tuples.resize(static_cast<std::size_t>(s.depth));
    s.repeated_counts.resize(static_cast<std::size_t>(s.depth));
    for (int j = 1; j <= s.depth; ++j) {
        std::map<std::vector<int>, std::size_t> seen;
        for (const auto& t : finals)
            for (const auto& [i1, i2] : s.psi[static_cast<std::size_t>(j - 1)]) {
                std::vector<int> sub(t.begin() + (i1 - 1), t.begin() + i2);
                ++seen[std::move(sub)];
            }
        std::size_t repeated = 0;
        for (const auto& [t, count] : seen) {
            s.tuples[static_cast<std::size_t>(j - 1)].push_back(t);
            if (count >= 2) ++repeated;
        }
        s.repeated_counts[static_cast<std::size_t>(j - 1)] = repeated;
        if (s.tuples[static_cast<std::size_t>(j - 1)].size() !=
            widths.widths[static_cast<std::size_t>(j - 1)])
            throw TupleScheduleError(
                "tuple count disagrees with the width formula at layer " + std::to_string(j), j);
    }
    if (s.tuples.back() != finals)
        throw TupleScheduleError("final layer must hold the d drop-one tuples", s.depth);

    s.parents.resize(static_cast<std::size_t>(s.depth));
    for (int j = 1; j <= s.depth; ++j) {
        const auto& layer = s.tuples[static_cast<std::size_t>(j - 1)];
        auto& links = s.parents[static_cast<std::size_t>(j - 1)];
        links.resize(layer.size());
        for (std::size_t i = 0; i < layer.size(); ++i) {
            const auto& t = layer[i];
            if (j == 1) {
                if (t.size() != 2) throw TupleScheduleError("first layer must hold pairs", 1);
                links[i] = {static_cast<std::size_t>(t[0] - 1),
                            static_cast<std::size_t>(t[1] - 1)};
                continue;
            }
            const auto& prev = s.tuples[static_cast<std::size_t>(j - 2)];
            bool found = false;
            for (std::size_t a = 0; a < prev.size() && !found; ++a) {
                if (!is_subset(prev[a], t)) continue;
                for (std::size_t b = 0; b < prev.size(); ++b) {
                    if (b == a || !is_subset(prev[b], t)) continue;
                    if (tuple_union(prev[a], prev[b]) == t) {
                        links[i] = {a, b};
                        found = true;
                        break;
                    }
                }
            }
            if (!found)
                throw TupleScheduleError(
                    "tuple is not a union of two parents at layer " + std::to_string(j), j);
        }
    }
    return s;
}

ReluNetwork d1_estimator_network(int d) {
    const TupleSchedule s = tuple_schedule(d);

    ReluNetwork net;
    net.input_dim = static_cast<std::size_t>(d);
    net.output_dim = 1;

    Matrix carry;
    for (int j = 1; j <= s.depth; ++j) {
        const auto& layer_tuples = s.tuples[static_cast<std::size_t>(j - 1)];
        const auto& links = s.parents[static_cast<std::size_t>(j - 1)];
        const std::size_t in_dim =
            j == 1 ? static_cast<std::size_t>(d) : s.tuples[static_cast<std::size_t>(j - 2)].size();
        Matrix h = gadget_preactivation(links, in_dim);

        Layer layer;
        layer.weights = j == 1 ? std::move(h) : h * carry;
        layer.bias.assign(layer.weights.rows(), Rational(0));
        layer.activation = Activation::relu;
        layer.value_width = layer_tuples.size();
        for (const auto& t : layer_tuples)
            for (int copy = 0; copy < 4; ++copy) layer.annotations.push_back(t);
        net.layers.push_back(std::move(layer));

        carry = gadget_combiner(layer_tuples.size());
    }

    // beta0 + beta_{d-1} S(x; d-1, d) with (beta0, beta_{d-1}) = (1/(2d), 1).
    const std::size_t last = s.tuples.back().size();
    Layer out;
    out.weights = Matrix(1, 4 * last);
    const Rational w = rat(1, 2L * d);
    for (std::size_t q = 0; q < last; ++q) {
        out.weights(0, 4 * q) = w;
        out.weights(0, 4 * q + 1) = w;
        out.weights(0, 4 * q + 2) = w;
        out.weights(0, 4 * q + 3) = -w;
    }
    out.bias.assign(1, rat(1, 2L * d));
    net.layers.push_back(std::move(out));
    return net;
}

std::vector<unsigned long long> full_estimator_widths(int d) {
    if (d < 3) throw std::invalid_argument("full estimator widths require d >= 3");
    std::vector<unsigned long long> out;
    for (int r = 2; r <= d - 1; ++r) {
        const Integer c = binomial(d, r);
        if (!c.fits_ulong_p()) throw std::invalid_argument("width exceeds 64 bits");
        out.push_back(c.get_ui());
    }
    return out;
}

}  // namespace maxapprox
