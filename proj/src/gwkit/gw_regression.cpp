#include "gwkit/gw_regression.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "gwkit/parallel.hpp"

namespace gwkit {

namespace {

constexpr double kRcondTol = 1e-12;
const double kInf = std::numeric_limits<double>::infinity();

/// No-throw WLS used inside evaluation loops; nullopt marks a singular fit.
std::optional<LocalFit> try_local_wls(const arma::mat& X, const arma::vec& y,
                                      const arma::vec& w, std::size_t focal) {
    const arma::uvec pos = arma::find(w > 0.0);
    const std::size_t m = X.n_cols;
    if (pos.n_elem < m) return std::nullopt;

    const arma::vec sw = arma::sqrt(w.elem(pos));
    arma::mat Xs = X.rows(pos);
    Xs.each_col() %= sw;
    const arma::vec ys = y.elem(pos) % sw;

    const arma::mat XtWX = Xs.t() * Xs;
    if (arma::rcond(XtWX) < kRcondTol) return std::nullopt;

    LocalFit out;
    if (!arma::solve(out.beta, Xs, ys)) return std::nullopt;

    const arma::rowvec xf = X.row(focal);
    out.fitted = arma::dot(xf, out.beta);
    arma::vec z;
    if (!arma::solve(z, XtWX, xf.t())) return std::nullopt;
    out.hat_ii = arma::dot(xf, z) * w[focal];
    return out;
}

double aicc_from(double rss, double tr_s, double n) {
    if (n - 2.0 - tr_s <= 0.0) return kInf;
    return n * std::log(rss / n) + n * std::log(2.0 * arma::datum::pi) +
           n * ((n + tr_s) / (n - 2.0 - tr_s));
}

}  // namespace

Criterion criterion_from_string(const std::string& name) {
    if (name == "aic" || name == "aicc" || name == "AIC") return Criterion::aicc;
    if (name == "cv" || name == "CV") return Criterion::cv;
    throw invalid_input("unknown criterion '" + name + "'");
}

std::string to_string(Criterion c) { return c == Criterion::aicc ? "aic" : "cv"; }

LocalFit local_wls(const arma::mat& X, const arma::vec& y, const arma::vec& w,
                   std::size_t focal) {
    if (focal >= X.n_rows) throw invalid_input("focal index out of range");
    auto fit = try_local_wls(X, y, w, focal);
    if (!fit) throw singular_fit(focal);
    return *fit;
}

BandwidthObjective::BandwidthObjective(const ObservationTable& table,
                                       const FormulaSpec& formula,
                                       const KernelSpec& spec, Criterion criterion,
                                       std::size_t threads)
    : formula_(formula), spec_(spec), criterion_(criterion),
      threads_(threads == 0 ? 1 : threads) {
    table.validate();
    const std::size_t n = table.size();
    const std::size_t m = formula.coefficient_count();
    if (m < 1) throw config_error("formula has no coefficients");
    if (!table.has_attribute(formula.response))
        throw config_error("formula response '" + formula.response +
                           "' not found in the data");
    for (const auto& p : formula.predictors)
        if (!table.has_attribute(p))
            throw config_error("formula predictor '" + p + "' not found in the data");
    if (n < m + 2)
        throw config_error("need at least m + 2 = " + std::to_string(m + 2) +
                           " observations, have " + std::to_string(n));

    y_ = arma::vec(table.attribute(formula.response));
    X_.set_size(n, m);
    std::size_t col = 0;
    if (formula.intercept) X_.col(col++).ones();
    for (const auto& p : formula.predictors) {
        const auto& v = table.attribute(p);
        X_.col(col) = arma::vec(v);
        if (*std::max_element(v.begin(), v.end()) ==
            *std::min_element(v.begin(), v.end()))
            warnings_.push_back("predictor '" + p +
                                "' has zero variance; local fits may be singular");
        ++col;
    }
    dist_ = build_distance_matrix(table, spec.metric, threads_);
}

BandwidthObjective make_objective(const ObservationTable& table,
                                  const FormulaSpec& formula, const KernelSpec& spec,
                                  Criterion criterion, std::size_t threads) {
    return BandwidthObjective(table, formula, spec, criterion, threads);
}

double BandwidthObjective::evaluate(const Bandwidth& bw) const {
    return criterion_ == Criterion::aicc ? aicc_score(*this, bw) : cv_score(*this, bw);
}

double BandwidthObjective::evaluate(double bandwidth_value) const {
    return evaluate(spec_.bandwidth(bandwidth_value));
}

double aicc_score(const BandwidthObjective& obj, const Bandwidth& bw) {
    const std::size_t n = obj.size();
    const arma::mat& X = obj.design();
    const arma::vec& y = obj.response();

    arma::vec r2(n), hat(n);
    std::vector<unsigned char> ok(n, 0);
    parallel_for(n, obj.threads(), [&](std::size_t i) {
        const arma::vec w = weights_at(obj.distances(), i, obj.kernel(), bw);
        const auto fit = try_local_wls(X, y, w, i);
        if (!fit) return;
        ok[i] = 1;
        const double r = y[i] - fit->fitted;
        r2[i] = r * r;
        hat[i] = fit->hat_ii;
    });

    double rss = 0.0, tr_s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!ok[i]) return kInf;
        rss += r2[i];
        tr_s += hat[i];
    }
    return aicc_from(rss, tr_s, static_cast<double>(n));
}

double cv_score(const BandwidthObjective& obj, const Bandwidth& bw) {
    const std::size_t n = obj.size();
    const arma::mat& X = obj.design();
    const arma::vec& y = obj.response();

    arma::vec e2(n);
    std::vector<unsigned char> ok(n, 0);
    parallel_for(n, obj.threads(), [&](std::size_t i) {
        arma::vec w = weights_at(obj.distances(), i, obj.kernel(), bw);
        w[i] = 0.0;  // leave-one-out: drop the focal point's own weight
        const auto fit = try_local_wls(X, y, w, i);
        if (!fit) return;
        ok[i] = 1;
        const double e = y[i] - fit->fitted;
        e2[i] = e * e;
    });

    double cv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!ok[i]) return kInf;
        cv += e2[i];
    }
    return cv;
}

namespace detail {

ScanResult golden_minimize(const std::function<double(double)>& fn, double lo,
                           double hi, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    ScanResult out;
    double fc = fn(c);
    out.trace.emplace_back(c, fc);
    double fd = fn(d);
    out.trace.emplace_back(d, fd);
    for (int iter = 0; (b - a) > tol && iter < 200; ++iter) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = fn(c);
            out.trace.emplace_back(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = fn(d);
            out.trace.emplace_back(d, fd);
        }
    }
    out.minimizer = out.trace.front().first;
    out.score = out.trace.front().second;
    for (const auto& [x, f] : out.trace) {
        if (f < out.score || (f == out.score && x < out.minimizer)) {
            out.minimizer = x;
            out.score = f;
        }
    }
    return out;
}

ScanResult linear_scan(const std::function<double(double)>& fn,
                       const std::vector<double>& candidates) {
    ScanResult out;
    out.trace.reserve(candidates.size());
    for (double c : candidates) out.trace.emplace_back(c, fn(c));
    out.minimizer = out.trace.front().first;
    out.score = out.trace.front().second;
    for (const auto& [x, f] : out.trace) {
        if (f < out.score || (f == out.score && x < out.minimizer)) {
            out.minimizer = x;
            out.score = f;
        }
    }
    return out;
}

}  // namespace detail

SearchResult linear_search(const BandwidthObjective& obj,
                           const std::vector<Bandwidth>& candidates) {
    if (candidates.empty()) throw invalid_input("no bandwidth candidates");
    std::vector<double> values;
    values.reserve(candidates.size());
    for (const auto& c : candidates) {
        if (c.adaptive != obj.kernel().adaptive)
            throw invalid_bandwidth("candidate mode does not match the kernel spec");
        values.push_back(c.value);
    }
    auto scan = detail::linear_scan([&](double v) { return obj.evaluate(v); }, values);
    if (std::isinf(scan.score))
        throw no_feasible_bandwidth("every candidate bandwidth scored +inf");
    SearchResult out;
    out.minimizer = scan.minimizer;
    out.score = scan.score;
    out.trace = std::move(scan.trace);
    out.best = obj.kernel().bandwidth(scan.minimizer);
    return out;
}

SearchResult golden_search(const BandwidthObjective& obj, double lo, double hi,
                           double tol) {
    if (!(lo < hi)) throw invalid_interval("golden search needs lo < hi");
    if (tol <= 0.0) tol = 0.01 * (hi - lo);
    auto scan = detail::golden_minimize([&](double v) { return obj.evaluate(v); },
                                        lo, hi, tol);
    if (std::isinf(scan.score))
        throw no_feasible_bandwidth("golden search found no feasible bandwidth");
    SearchResult out;
    out.minimizer = scan.minimizer;
    out.score = scan.score;
    out.trace = std::move(scan.trace);
    // the bandwidth actually evaluated at the minimizer (adaptive: floor)
    out.best = obj.kernel().bandwidth(obj.kernel().adaptive
                                          ? std::floor(scan.minimizer)
                                          : scan.minimizer);
    return out;
}

GwrResult gwr_fit(const ObservationTable& table, const FormulaSpec& formula,
                  const KernelSpec& spec, const Bandwidth& bw, std::size_t threads) {
    const BandwidthObjective obj(table, formula, spec, Criterion::aicc, threads);
    const std::size_t n = obj.size();
    const std::size_t m = obj.coefficient_count();
    const arma::mat& X = obj.design();
    const arma::vec& y = obj.response();

    GwrResult res;
    res.coef.set_size(n, m);
    res.fitted.set_size(n);
    res.residuals.set_size(n);
    res.bandwidth = bw;
    res.spec = spec;
    res.formula = formula;

    arma::vec hat(n), cv_e2(n);
    std::vector<unsigned char> ok(n, 0), loo_ok(n, 0);
    parallel_for(n, obj.threads(), [&](std::size_t i) {
        arma::vec w = weights_at(obj.distances(), i, spec, bw);
        const auto fit = try_local_wls(X, y, w, i);
        if (!fit) return;
        ok[i] = 1;
        res.coef.row(i) = fit->beta.t();
        res.fitted[i] = fit->fitted;
        res.residuals[i] = y[i] - fit->fitted;
        hat[i] = fit->hat_ii;
        // CV diagnostic; a singular leave-one-out fit makes cv +inf, it does
        // not invalidate the fit itself
        w[i] = 0.0;
        const auto loo = try_local_wls(X, y, w, i);
        if (!loo) return;
        loo_ok[i] = 1;
        const double e = y[i] - loo->fitted;
        cv_e2[i] = e * e;
    });

    double rss = 0.0;
    res.trace_S = 0.0;
    res.cv = 0.0;
    bool cv_finite = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!ok[i]) throw singular_fit(i);
        rss += res.residuals[i] * res.residuals[i];
        res.trace_S += hat[i];
        if (!loo_ok[i]) cv_finite = false;
        if (cv_finite) res.cv += cv_e2[i];
    }
    if (!cv_finite) res.cv = kInf;
    res.aicc = aicc_from(rss, res.trace_S, static_cast<double>(n));
    return res;
}

}  // namespace gwkit
