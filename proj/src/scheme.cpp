#include "taylor/scheme.hpp"

#include "taylor/errors.hpp"

#include <cmath>
#include <string>

namespace taylor {

Interval::Interval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw Error(ErrorKind::InvalidInterval,
                    "need finite a < b, got [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
}

CurvatureBounds::CurvatureBounds(double lower, double upper) : lower_(lower), upper_(upper) {
    if (!std::isfinite(lower) || !std::isfinite(upper) || lower > upper) {
        throw Error(ErrorKind::InvalidBounds, "need finite m2 <= M2, got (" + std::to_string(lower) +
                                                  ", " + std::to_string(upper) + ")");
    }
}

ExpansionScheme::ExpansionScheme(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
    if (nodes_.size() < 2) {
        throw Error(ErrorKind::LengthMismatch, "a scheme needs n >= 1");
    }
    if (weights_.size() != nodes_.size()) {
        throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(nodes_.size()) +
                                                   " weights, got " + std::to_string(weights_.size()));
    }
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const double t = nodes_[k];
        if (!std::isfinite(t) || t < 0.0 || t > 1.0) {
            throw Error(ErrorKind::OutOfRangeNode,
                        "node t_" + std::to_string(k) + " = " + std::to_string(t) + " not in [0,1]");
        }
        if (k > 0 && t < nodes_[k - 1]) {
            throw Error(ErrorKind::NonMonotoneNodes, "t_" + std::to_string(k) + " < t_" +
                                                         std::to_string(k - 1));
        }
        if (!std::isfinite(weights_[k])) {
            throw Error(ErrorKind::InvalidArgument, "weight w_" + std::to_string(k) + " is not finite");
        }
    }
    if (nodes_.front() != 0.0 || nodes_.back() != 1.0) {
        throw Error(ErrorKind::OutOfRangeNode, "end nodes must be exactly t_0 = 0 and t_n = 1");
    }
}

ExpansionScheme ExpansionScheme::make(int n, std::span<const double> interior_nodes,
                                      std::span<const double> weights) {
    if (n < 1) {
        throw Error(ErrorKind::LengthMismatch, "n must be >= 1");
    }
    if (interior_nodes.size() != static_cast<std::size_t>(n - 1)) {
        throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(n - 1) +
                                                   " interior nodes, got " +
                                                   std::to_string(interior_nodes.size()));
    }
    if (weights.size() != static_cast<std::size_t>(n + 1)) {
        throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(n + 1) +
                                                   " weights, got " + std::to_string(weights.size()));
    }
    std::vector<double> nodes;
    nodes.reserve(n + 1);
    nodes.push_back(0.0);
    nodes.insert(nodes.end(), interior_nodes.begin(), interior_nodes.end());
    nodes.push_back(1.0);
    return ExpansionScheme(std::move(nodes), {weights.begin(), weights.end()});
}

ExpansionScheme ExpansionScheme::from_nodes(std::span<const double> nodes,
                                            std::span<const double> weights) {
    return ExpansionScheme({nodes.begin(), nodes.end()}, {weights.begin(), weights.end()});
}

double ExpansionScheme::weight_sum() const noexcept {
    double sum = 0.0;
    for (const double w : weights_) sum += w;
    return sum;
}

bool ExpansionScheme::is_normalized() const noexcept {
    return std::abs(weight_sum() - 1.0) <= kNormalizationTolerance;
}

void require_normalized(const ExpansionScheme& scheme) {
    if (!scheme.is_normalized()) {
        throw Error(ErrorKind::NotNormalized,
                    "weights sum to " + std::to_string(scheme.weight_sum()) + ", expected 1");
    }
}

PartialSums partial_sums(const ExpansionScheme& scheme) {
    const auto w = scheme.weights();
    PartialSums sums;
    sums.values.resize(static_cast<std::size_t>(scheme.n()));
    double running = 0.0;
    for (std::size_t k = 0; k < sums.values.size(); ++k) {
        running += w[k];
        sums.values[k] = running;
    }
    return sums;
}

std::vector<double> map_nodes(const ExpansionScheme& scheme, const Interval& iv) {
    const auto t = scheme.nodes();
    std::vector<double> x(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        x[k] = iv.a() + t[k] * iv.length();
    }
    x.front() = iv.a();
    x.back() = iv.b();
    return x;
}

} // namespace taylor
