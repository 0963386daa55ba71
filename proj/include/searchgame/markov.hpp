#pragma once

#include <vector>

#include "searchgame/report.hpp"
#include "searchgame/types.hpp"

namespace searchgame {

using Matrix = std::vector<std::vector<double>>;

/// A Markovian user model: one state per engine, with separate row-stochastic
/// transition matrices after a satisfying query (success) and after a failed
/// one. The combined chain at satisfaction profile q is
/// P(q) = diag(q) T_s + diag(1-q) T_f; it must be irreducible at the uniform
/// interior profile, which is checked at construction.
class MarkovUserModel {
public:
    MarkovUserModel(Matrix success, Matrix failure);

    int engine_count() const { return static_cast<int>(success_.size()); }
    const Matrix& success() const { return success_; }
    const Matrix& failure() const { return failure_; }

    double stay_success(int i) const { return success_[i][i]; }
    double stay_failure(int i) const { return failure_[i][i]; }
    /// Exit probabilities e_s = 1 - T_s[i][i], e_f = 1 - T_f[i][i].
    double exit_success(int i) const { return 1.0 - success_[i][i]; }
    double exit_failure(int i) const { return 1.0 - failure_[i][i]; }

    /// Combined transition matrix P(q).
    Matrix combined(const SatisfactionProfile& q) const;

private:
    Matrix success_;
    Matrix failure_;
};

/// Expected time to come back to a state, conditioned on having left it after
/// a success / failure. Undefined (and unused downstream) when the matching
/// exit probability is zero.
struct ReturnTimes {
    double r_success = 0.0;
    double r_failure = 0.0;
    bool success_defined = false;
    bool failure_defined = false;
};

struct StationaryDerivatives {
    double first = 0.0;
    double second = 0.0;
};

/// Stationary distribution of P(q) by direct linear solve. Throws SolverError
/// naming the disconnected states when the chain is reducible at q.
std::vector<double> stationary(const MarkovUserModel& model, const SatisfactionProfile& q);

/// Independent cross-check of `stationary` by power iteration.
std::vector<double> stationary_power(const MarkovUserModel& model, const SatisfactionProfile& q,
                                     double tol = 1e-14, long max_iters = 1000000);

/// Expected first-return times to `state` from the post-exit distributions
/// (row `state` of T_s / T_f off the diagonal, renormalized). Depends only on
/// the other coordinates of q.
ReturnTimes return_times(const MarkovUserModel& model, const SatisfactionProfile& q, int state);

/// pi_i = 1 / (1 + q_i e_s r_s + (1-q_i) e_f r_f), normalized across states.
std::vector<double> closed_form_stationary(const MarkovUserModel& model, const SatisfactionProfile& q);

/// d pi_i / d q_i and the second derivative, with the return times held fixed
/// (they are functions of the other coordinates only).
StationaryDerivatives stationary_derivatives(const MarkovUserModel& model, const SatisfactionProfile& q,
                                             int state);

/// Monotonicity of the model: staying is at least as likely after success,
/// and the return time after success is no longer than after failure.
PropertyReport check_markov_monotone(const MarkovUserModel& model, int samples = 50,
                                     std::uint64_t seed = 42);

/// Stay-on-success, switch-uniformly-on-failure model on `engines` states.
MarkovUserModel uniform_switch_model(int engines);

} // namespace searchgame
