#include "searchgame/markov.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace searchgame {

namespace {

void validate_row_stochastic(const Matrix& m, const char* label) {
    const size_t k = m.size();
    if (k < 2) throw ValidationError(std::string(label) + " matrix needs at least two states");
    for (const auto& row : m) {
        if (row.size() != k) throw ValidationError(std::string(label) + " matrix must be square");
        double total = 0.0;
        for (double x : row) {
            if (std::isnan(x) || x < -kProbTolerance || x > 1.0 + kProbTolerance)
                throw ValidationError(std::string(label) + " entries must lie in [0,1]");
            total += x;
        }
        if (std::abs(total - 1.0) > kProbTolerance)
            throw ValidationError(std::string(label) + " rows must sum to 1 within 1e-12");
    }
}

void check_profile(const MarkovUserModel& model, const SatisfactionProfile& q) {
    if (static_cast<int>(q.size()) != model.engine_count())
        throw ValidationError("satisfaction profile size does not match the model");
    for (double x : q)
        if (std::isnan(x) || x < -kProbTolerance || x > 1.0 + kProbTolerance)
            throw ValidationError("satisfaction probabilities must lie in [0,1]");
}

/// States unreachable from state 0 or unable to reach it, under edges with
/// positive transition probability. Empty iff the chain is irreducible.
std::vector<int> disconnected_states(const Matrix& p) {
    const int k = static_cast<int>(p.size());
    auto reach = [&](bool forward) {
        std::vector<bool> seen(static_cast<size_t>(k), false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < k; ++v) {
                const double w = forward ? p[static_cast<size_t>(u)][static_cast<size_t>(v)]
                                         : p[static_cast<size_t>(v)][static_cast<size_t>(u)];
                if (w > 0.0 && !seen[static_cast<size_t>(v)]) {
                    seen[static_cast<size_t>(v)] = true;
                    stack.push_back(v);
                }
            }
        }
        return seen;
    };
    const auto fwd = reach(true);
    const auto bwd = reach(false);
    std::vector<int> bad;
    for (int i = 0; i < k; ++i)
        if (!fwd[static_cast<size_t>(i)] || !bwd[static_cast<size_t>(i)]) bad.push_back(i);
    return bad;
}

void require_irreducible(const Matrix& p, const SatisfactionProfile& q) {
    const auto bad = disconnected_states(p);
    if (bad.empty()) return;
    std::ostringstream msg;
    msg << "chain is reducible at q = (";
    for (size_t i = 0; i < q.size(); ++i) msg << (i ? ", " : "") << format_real(q[i]);
    msg << "); disconnected states:";
    for (int s : bad) msg << ' ' << s;
    throw SolverError(msg.str());
}

} // namespace

MarkovUserModel::MarkovUserModel(Matrix success, Matrix failure)
    : success_(std::move(success)), failure_(std::move(failure)) {
    validate_row_stochastic(success_, "success");
    validate_row_stochastic(failure_, "failure");
    if (success_.size() != failure_.size())
        throw ValidationError("success and failure matrices must have the same size");
    const SatisfactionProfile half(success_.size(), 0.5);
    require_irreducible(combined(half), half);
}

Matrix MarkovUserModel::combined(const SatisfactionProfile& q) const {
    check_profile(*this, q);
    const size_t k = success_.size();
    Matrix p(k, std::vector<double>(k, 0.0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            p[i][j] = q[i] * success_[i][j] + (1.0 - q[i]) * failure_[i][j];
    return p;
}

std::vector<double> stationary(const MarkovUserModel& model, const SatisfactionProfile& q) {
    const Matrix p = model.combined(q);
    require_irreducible(p, q);
    const int k = model.engine_count();

    // pi (P - I) = 0 with the last balance equation replaced by sum(pi) = 1.
    Eigen::MatrixXd a(k, k);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
    for (int col = 0; col < k; ++col)
        for (int row = 0; row < k; ++row)
            a(col, row) = p[static_cast<size_t>(row)][static_cast<size_t>(col)] -
                          (row == col ? 1.0 : 0.0);
    for (int row = 0; row < k; ++row) a(k - 1, row) = 1.0;
    b(k - 1) = 1.0;

    const Eigen::VectorXd pi = a.fullPivLu().solve(b);
    std::vector<double> out(static_cast<size_t>(k));
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        out[static_cast<size_t>(i)] = std::max(pi(i), 0.0);
        total += out[static_cast<size_t>(i)];
    }
    if (!(total > 0.0) || !std::isfinite(total))
        throw SolverError("stationary solve produced a degenerate distribution");
    for (double& x : out) x /= total;
    return out;
}

std::vector<double> stationary_power(const MarkovUserModel& model, const SatisfactionProfile& q,
                                     double tol, long max_iters) {
    const Matrix p = model.combined(q);
    require_irreducible(p, q);
    const size_t k = p.size();
    // Lazy chain (P + I)/2 kills periodicity without changing the fixed point.
    std::vector<double> pi(k, 1.0 / static_cast<double>(k)), next(k, 0.0);
    for (long iter = 0; iter < max_iters; ++iter) {
        for (size_t j = 0; j < k; ++j) {
            double s = 0.5 * pi[j];
            for (size_t i = 0; i < k; ++i) s += 0.5 * pi[i] * p[i][j];
            next[j] = s;
        }
        double diff = 0.0, total = 0.0;
        for (size_t j = 0; j < k; ++j) {
            diff = std::max(diff, std::abs(next[j] - pi[j]));
            total += next[j];
        }
        for (size_t j = 0; j < k; ++j) pi[j] = next[j] / total;
        if (diff <= tol) return pi;
    }
    throw SolverError("power iteration did not converge within the iteration budget");
}

ReturnTimes return_times(const MarkovUserModel& model, const SatisfactionProfile& q, int state) {
    const int k = model.engine_count();
    if (state < 0 || state >= k) throw ValidationError("state index out of range");
    const Matrix p = model.combined(q);
    require_irreducible(p, q);

    // Expected hitting times of `state` from every other state:
    // h_j = 1 + sum_{l != state} P_jl h_l.
    const int m = k - 1;
    auto packed = [&](int s) { return s < state ? s : s - 1; };
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(m);
    for (int j = 0; j < k; ++j) {
        if (j == state) continue;
        for (int l = 0; l < k; ++l) {
            if (l == state) continue;
            a(packed(j), packed(l)) =
                (j == l ? 1.0 : 0.0) - p[static_cast<size_t>(j)][static_cast<size_t>(l)];
        }
    }
    const Eigen::VectorXd h = a.fullPivLu().solve(b);

    ReturnTimes rt;
    auto expected_return = [&](const std::vector<double>& row, double exit_prob, double& value,
                               bool& defined) {
        if (!(exit_prob > 0.0)) {
            value = 0.0;
            defined = false;
            return;
        }
        double r = 0.0;
        for (int j = 0; j < k; ++j) {
            if (j == state) continue;
            r += row[static_cast<size_t>(j)] / exit_prob * h(packed(j));
        }
        value = r;
        defined = true;
    };
    expected_return(model.success()[static_cast<size_t>(state)], model.exit_success(state),
                    rt.r_success, rt.success_defined);
    expected_return(model.failure()[static_cast<size_t>(state)], model.exit_failure(state),
                    rt.r_failure, rt.failure_defined);
    return rt;
}

std::vector<double> closed_form_stationary(const MarkovUserModel& model,
                                           const SatisfactionProfile& q) {
    const int k = model.engine_count();
    check_profile(model, q);
    std::vector<double> pi(static_cast<size_t>(k), 0.0);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        const ReturnTimes rt = return_times(model, q, i);
        const double succ = rt.success_defined
                                ? q[static_cast<size_t>(i)] * model.exit_success(i) * rt.r_success
                                : 0.0;
        const double fail = rt.failure_defined
                                ? (1.0 - q[static_cast<size_t>(i)]) * model.exit_failure(i) *
                                      rt.r_failure
                                : 0.0;
        pi[static_cast<size_t>(i)] = 1.0 / (1.0 + succ + fail);
        total += pi[static_cast<size_t>(i)];
    }
    for (double& x : pi) x /= total;
    return pi;
}

StationaryDerivatives stationary_derivatives(const MarkovUserModel& model,
                                             const SatisfactionProfile& q, int state) {
    const ReturnTimes rt = return_times(model, q, state);
    const double es_rs = rt.success_defined ? model.exit_success(state) * rt.r_success : 0.0;
    const double ef_rf = rt.failure_defined ? model.exit_failure(state) * rt.r_failure : 0.0;
    const double qi = q[static_cast<size_t>(state)];
    const double denom = 1.0 + ef_rf * (1.0 - qi) + es_rs * qi;
    const double diff = ef_rf - es_rs;
    return {diff / (denom * denom), 2.0 * diff * diff / (denom * denom * denom)};
}

PropertyReport check_markov_monotone(const MarkovUserModel& model, int samples,
                                     std::uint64_t seed) {
    PropertyReport report;
    report.property = "markov-monotone";
    report.passed = true;
    report.strict = true;
    const int k = model.engine_count();

    for (int i = 0; i < k; ++i) {
        const double ss = model.stay_success(i);
        const double sf = model.stay_failure(i);
        if (ss < sf) {
            report.passed = false;
            report.strict = false;
            report.witness = PropertyWitness{{}, i, -1, ss, sf,
                                             "staying after success is less likely than after failure"};
            return report;
        }
        if (!(ss > sf)) report.strict = false;
    }

    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        SatisfactionProfile q(static_cast<size_t>(k));
        for (double& x : q) x = rng.uniform();
        for (int i = 0; i < k; ++i) {
            const ReturnTimes rt = return_times(model, q, i);
            if (!rt.success_defined || !rt.failure_defined) continue;
            if (rt.r_success > rt.r_failure + 1e-10) {
                report.passed = false;
                report.strict = false;
                report.witness = PropertyWitness{q, i, -1, rt.r_success, rt.r_failure,
                                                 "return after success exceeds return after failure"};
                return report;
            }
        }
        report.points_checked += k;
    }
    report.note = "no violation found on sampled points";
    return report;
}

MarkovUserModel uniform_switch_model(int engines) {
    if (engines < 2) throw ValidationError("the model needs at least two engines");
    const size_t k = static_cast<size_t>(engines);
    Matrix success(k, std::vector<double>(k, 0.0));
    Matrix failure(k, std::vector<double>(k, 1.0 / static_cast<double>(engines - 1)));
    for (size_t i = 0; i < k; ++i) {
        success[i][i] = 1.0;
        failure[i][i] = 0.0;
    }
    return MarkovUserModel(std::move(success), std::move(failure));
}

} // namespace searchgame
