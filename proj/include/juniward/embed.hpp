#pragma once

#include <cstddef>
#include <cstdint>

#include "juniward/container_io.hpp"
#include "juniward/costmap.hpp"
#include "juniward/matrix.hpp"

namespace juniward {

/// Ternary (+1/-1) change probabilities. p is the probability of each
/// direction, so a coefficient changes with probability 2p.
struct ProbMap {
    RealMatrix p;
    double lambda = 0.0;
    double target_payload = 0.0;    // bits
    double achieved_payload = 0.0;  // bits
};

/// H3(p) = -2p log2 p - (1-2p) log2(1-2p), with 0 log 0 = 0.
double ternary_entropy(double p) noexcept;

/// Gibbs probability exp(-lambda*rho) / (1 + 2 exp(-lambda*rho)).
double change_probability(double rho, double lambda) noexcept;

/// Throws ValidationError unless payload_bpnzac is in (0, log2 3].
void validate_payload(double payload_bpnzac);

struct SolverOptions {
    double tolerance_bits = 1e-3;
    int max_iterations = 200;
};

/// Finds lambda such that the total ternary entropy equals payload_bpnzac * nzac.
/// Throws ValidationError for a payload outside (0, log2 3], nzac == 0, or a
/// target above what the non-wet coefficients can carry.
ProbMap solve_lambda(const CostMap& cm, double payload_bpnzac, const SolverOptions& opts = {});

/// Total ternary entropy of the map at a given lambda; wet entries contribute 0.
double total_entropy(const CostMap& cm, double lambda);

/// Simulated embedding: for each coefficient draw r ~ U[0,1) keyed by
/// (seed, row, col); r < p gives -1, r < 2p gives +1.
DctContainer simulate(const ProbMap& pm, const DctContainer& cover, std::uint64_t seed,
                      std::size_t threads = 0);

}  // namespace juniward
