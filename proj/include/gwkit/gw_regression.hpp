#pragma once

#include <armadillo>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gwkit/gw_core.hpp"
#include "gwkit/gw_formula.hpp"

namespace gwkit {

enum class Criterion { aicc, cv };

Criterion criterion_from_string(const std::string& name);
std::string to_string(Criterion c);

/// One local weighted fit: coefficients, the prediction at the focal row, and
/// the focal hat-matrix diagonal entry.
struct LocalFit {
    arma::vec beta;
    double fitted = 0.0;
    double hat_ii = 0.0;
};

/// Weighted least squares at one location. X is the full n x m design, w a
/// length-n weight vector; the focal observation is row `focal`. Solves via
/// QR of the square-root-weighted positive-weight rows. Throws singular_fit
/// when fewer than m weights are positive or X'WX is ill-conditioned
/// (reciprocal condition < 1e-12).
LocalFit local_wls(const arma::mat& X, const arma::vec& y, const arma::vec& w,
                   std::size_t focal);

/// Configured bandwidth-evaluation context: the distance matrix, design
/// matrix and response are extracted once at construction and never rebuilt
/// during a search. evaluate() is pure; identical bandwidths give
/// bit-identical scores.
class BandwidthObjective {
public:
    BandwidthObjective(const ObservationTable& table, const FormulaSpec& formula,
                       const KernelSpec& spec, Criterion criterion,
                       std::size_t threads = 1);

    double evaluate(const Bandwidth& bw) const;
    /// Continuous-valued candidate; adaptive bandwidths are floored at use.
    double evaluate(double bandwidth_value) const;

    std::size_t size() const { return y_.n_elem; }
    std::size_t coefficient_count() const { return X_.n_cols; }
    Criterion criterion() const { return criterion_; }
    const KernelSpec& kernel() const { return spec_; }
    const FormulaSpec& formula() const { return formula_; }
    const DistanceMatrix& distances() const { return dist_; }
    const arma::mat& design() const { return X_; }
    const arma::vec& response() const { return y_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    std::size_t threads() const { return threads_; }

private:
    FormulaSpec formula_;
    KernelSpec spec_;
    Criterion criterion_;
    std::size_t threads_;
    DistanceMatrix dist_;
    arma::mat X_;
    arma::vec y_;
    std::vector<std::string> warnings_;
};

BandwidthObjective make_objective(const ObservationTable& table,
                                  const FormulaSpec& formula, const KernelSpec& spec,
                                  Criterion criterion, std::size_t threads = 1);

/// AICc over all n local fits at bw:
///   n ln(RSS/n) + n ln(2 pi) + n (n + trS) / (n - 2 - trS).
/// Returns +inf when any local fit is singular or n - 2 - trS <= 0, so
/// searches stay total over infeasible candidates.
double aicc_score(const BandwidthObjective& obj, const Bandwidth& bw);

/// Leave-one-out CV: sum of squared prediction errors with the focal
/// self-weight forced to 0 inside an otherwise unchanged neighbor set.
/// Returns +inf on any singular local fit.
double cv_score(const BandwidthObjective& obj, const Bandwidth& bw);

struct SearchResult {
    Bandwidth best;      // the bandwidth as evaluated (adaptive: floored)
    double minimizer;    // continuous location of the best evaluated score
    double score;
    std::vector<std::pair<double, double>> trace;  // (candidate, score)
};

/// Evaluates every candidate; the minimizer is the lowest-scoring candidate,
/// ties resolved toward the lowest candidate value.
SearchResult linear_search(const BandwidthObjective& obj,
                           const std::vector<Bandwidth>& candidates);

/// Golden-section minimization on [lo, hi]. tol <= 0 selects the default
/// 0.01 * (hi - lo). The returned minimizer is the best evaluated probe
/// (ties toward the lowest candidate), so score always equals its evaluation.
SearchResult golden_search(const BandwidthObjective& obj, double lo, double hi,
                           double tol = 0.0);

/// Full GWR at a chosen bandwidth: n x m coefficient matrix (intercept
/// first), fitted values, residuals, tr(S), and both diagnostics.
struct GwrResult {
    arma::mat coef;
    arma::vec fitted;
    arma::vec residuals;
    double trace_S = 0.0;
    double aicc = 0.0;
    double cv = 0.0;
    Bandwidth bandwidth;
    KernelSpec spec;
    FormulaSpec formula;
};

/// Throws singular_fit naming the first offending location; output is
/// bit-identical for any thread count.
GwrResult gwr_fit(const ObservationTable& table, const FormulaSpec& formula,
                  const KernelSpec& spec, const Bandwidth& bw,
                  std::size_t threads = 1);

namespace detail {

struct ScanResult {
    double minimizer = 0.0;
    double score = 0.0;
    std::vector<std::pair<double, double>> trace;
};

ScanResult golden_minimize(const std::function<double(double)>& fn, double lo,
                           double hi, double tol);
ScanResult linear_scan(const std::function<double(double)>& fn,
                       const std::vector<double>& candidates);

}  // namespace detail

}  // namespace gwkit
