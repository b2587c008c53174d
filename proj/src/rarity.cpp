#include "dnamatch/rarity.hpp"

#include "dnamatch/error.hpp"
#include "dnamatch/text_util.hpp"

#include <algorithm>
#include <cmath>

namespace dnamatch {

IslandScenario::IslandScenario(double N, double P) : N_(N), P_(P)
{
    if (!(N >= 1.0) || !std::isfinite(N))
        throw InputError("island: population size must be >= 1");
    if (!(P > 0.0 && P < 1.0))
        throw InputError("island: profile probability must lie in (0, 1), got " +
                         format_double(P));
}

double kingston_posterior(double lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InputError("kingston: lambda must be positive and finite");

    // Terms are Poisson probabilities divided by x, summed outward from the
    // mode in log space so that large lambda cannot overflow.
    const double log_lambda = std::log(lambda);
    const double mode = std::max(1.0, std::floor(lambda));
    const double log_pmf_mode = mode * log_lambda - lambda - std::lgamma(mode + 1.0);

    constexpr double kRelTol = 1e-16;
    double sum = std::exp(log_pmf_mode) / mode;

    double log_pmf = log_pmf_mode;
    for (double x = mode + 1.0;; x += 1.0) {
        log_pmf += log_lambda - std::log(x);
        const double term = std::exp(log_pmf) / x;
        sum += term;
        if (term < kRelTol * sum)
            break;
    }
    log_pmf = log_pmf_mode;
    for (double x = mode - 1.0; x >= 1.0; x -= 1.0) {
        log_pmf -= log_lambda - std::log(x + 1.0);
        const double term = std::exp(log_pmf) / x;
        sum += term;
        if (term < kRelTol * sum)
            break;
    }
    // Pr(x >= 1) = 1 - e^-lambda, accurate for small lambda via expm1.
    return std::min(1.0, sum / -std::expm1(-lambda));
}

Uniqueness balding_uniqueness(const IslandScenario& s)
{
    const double N = s.population();
    const double P = s.profile_prob();
    Uniqueness u;
    u.probability = std::exp(N * std::log1p(-P)) / (1.0 + N * P);
    u.lower_bound = 1.0 - 2.0 * s.lambda();
    return u;
}

} // namespace dnamatch
