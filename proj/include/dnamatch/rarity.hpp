#pragma once

// Posterior probability that a matching suspect is the source, for a
// population in which the profile may occur more than once.

namespace dnamatch {

/// A population of N people besides the first-drawn person, each of whom
/// carries the profile independently with probability P.
class IslandScenario {
public:
    IslandScenario(double N, double P);

    double population() const { return N_; }
    double profile_prob() const { return P_; }
    double lambda() const { return N_ * P_; }

private:
    double N_;
    double P_;
};

/// E[1/x | x >= 1] for x ~ Poisson(lambda): the chance the identified carrier
/// is the right one when all carriers are equally suspect.
double kingston_posterior(double lambda);

struct Uniqueness {
    double probability = 0.0; ///< (1 - P)^N / (1 + N P)
    double lower_bound = 0.0; ///< 1 - 2 lambda
};

/// Probability that a matching suspect is the source and nobody else in the
/// population shares the profile.
Uniqueness balding_uniqueness(const IslandScenario& scenario);

} // namespace dnamatch
