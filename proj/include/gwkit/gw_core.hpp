#pragma once

#include <armadillo>
#include <cstddef>
#include <string>
#include <vector>

#include "gwkit/errors.hpp"

namespace gwkit {

/// The five kernel shapes.
enum class KernelShape { gaussian, exponential, bisquare, tricube, boxcar };

KernelShape kernel_shape_from_string(const std::string& name);
std::string to_string(KernelShape shape);

/// Distance metric on projected planar coordinates. Euclidean is
/// Minkowski(2); p >= 1 keeps the triangle inequality.
struct MetricSpec {
    enum class Kind { euclidean, minkowski };
    Kind kind = Kind::euclidean;
    double p = 2.0;

    static MetricSpec euclidean() { return {}; }
    static MetricSpec minkowski(double p) {
        if (!(p >= 1.0)) throw invalid_input("Minkowski p must be >= 1");
        return {Kind::minkowski, p};
    }
};

/// n spatial observations: projected coordinates plus named numeric columns.
/// Non-numeric columns ride along as labels and never enter any computation.
struct ObservationTable {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<std::string> attr_names;
    std::vector<std::vector<double>> attr_values;
    std::vector<std::string> label_names;
    std::vector<std::vector<std::string>> label_values;

    // original file column order, used when writing the table back out
    std::vector<std::string> column_order;
    std::string x_name = "X";
    std::string y_name = "Y";

    std::size_t size() const { return x.size(); }
    bool has_attribute(const std::string& name) const;
    const std::vector<double>& attribute(const std::string& name) const;

    /// Throws invalid_input on any violated invariant (n >= 1, finite values,
    /// equal column lengths, unique non-empty attribute names).
    void validate() const;
};

/// Full symmetric pairwise distance matrix, computed once per analysis.
struct DistanceMatrix {
    arma::mat d;
    std::size_t size() const { return d.n_rows; }
};

/// Fixed(b): kernel reach is a distance. Adaptive(k): reach spans the k
/// nearest observations. `value` holds b or k; adaptive values are floored at
/// use so continuous bandwidth searches can evaluate fractional candidates.
struct Bandwidth {
    bool adaptive = false;
    double value = 0.0;

    static Bandwidth fixed(double b) { return {false, b}; }
    static Bandwidth adaptive_k(double k) { return {true, k}; }
};

struct KernelSpec {
    KernelShape shape = KernelShape::bisquare;
    bool adaptive = true;
    MetricSpec metric = MetricSpec::euclidean();

    Bandwidth bandwidth(double value) const { return {adaptive, value}; }
};

/// Neighbors of one focal observation, ascending by distance (ties broken by
/// lowest index). The focal point itself (distance 0) is always a member.
struct NeighborSet {
    arma::uvec indices;
    arma::vec dists;
};

DistanceMatrix build_distance_matrix(const ObservationTable& table,
                                     const MetricSpec& metric = MetricSpec::euclidean(),
                                     std::size_t threads = 1);

/// Fixed(b): every observation within distance b. Adaptive(k): the k nearest,
/// self included, ties at the cutoff resolved by lowest index.
NeighborSet nearby(const arma::vec& dist_row, const Bandwidth& bw);

/// Elementwise kernel weights over a neighbor set for effective bandwidth
/// b_local. In adaptive mode b_local is the largest distance in the set, so
/// bisquare/tricube give the k-th neighbor weight exactly 0 (this mirrors the
/// adaptive weight function the reference implementation prints).
arma::vec kernel_weights(KernelShape shape, const arma::vec& dists, double b_local);

/// Composition of nearby() and kernel_weights(): a length-n weight vector,
/// exactly 0 outside the neighbor set (all shapes, including gaussian and
/// exponential, are truncated to the set).
arma::vec weights_at(const DistanceMatrix& dist, std::size_t focal,
                     const KernelSpec& spec, const Bandwidth& bw);

}  // namespace gwkit
