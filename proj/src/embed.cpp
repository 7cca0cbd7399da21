#include "juniward/embed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "juniward/errors.hpp"
#include "juniward/parallel.hpp"
#include "juniward/rng.hpp"

namespace juniward {

double ternary_entropy(double p) noexcept {
    if (p <= 0.0) return 0.0;
    const double rest = 1.0 - 2.0 * p;
    double h = -2.0 * p * std::log2(p);
    if (rest > 0.0) h -= rest * std::log2(rest);
    return h;
}

double change_probability(double rho, double lambda) noexcept {
    const double e = std::exp(-lambda * rho);
    return e / (1.0 + 2.0 * e);
}

double total_entropy(const CostMap& cm, double lambda) {
    double total = 0.0;
    for (std::size_t r = 0; r < cm.rho.rows(); ++r) {
        for (std::size_t c = 0; c < cm.rho.cols(); ++c) {
            if (cm.is_wet(r, c)) continue;
            total += ternary_entropy(change_probability(cm.rho(r, c), lambda));
        }
    }
    return total;
}

void validate_payload(double payload_bpnzac) {
    if (!(payload_bpnzac > 0.0) || payload_bpnzac > std::log2(3.0)) {
        throw ValidationError("payload " + std::to_string(payload_bpnzac) + " bpnzAC outside (0, log2 3]");
    }
}

ProbMap solve_lambda(const CostMap& cm, double payload_bpnzac, const SolverOptions& opts) {
    validate_payload(payload_bpnzac);
    if (cm.nzac == 0) throw ValidationError("cover has no nonzero AC coefficients");

    const double target = payload_bpnzac * static_cast<double>(cm.nzac);
    const double tol = opts.tolerance_bits;
    auto entropy = [&](double lambda) { return total_entropy(cm, lambda); };

    // H is decreasing in lambda with its maximum at lambda = 0.
    const double capacity = entropy(0.0);
    if (capacity == 0.0) throw ValidationError("no embeddable coefficients (all wet)");
    if (capacity < target - tol) {
        throw ValidationError("payload of " + std::to_string(target) + " bits exceeds capacity " +
                              std::to_string(capacity));
    }

    double lambda = 0.0;
    double achieved = capacity;
    if (capacity > target + tol) {
        double lo = 0.0;
        double hi = 1.0;
        int guard = 0;
        if (entropy(hi) > target) {
            while (entropy(hi) > target) {
                lo = hi;
                hi *= 2.0;
                if (++guard > 2000 || !std::isfinite(hi)) throw ValidationError("cannot bracket lambda");
            }
        } else {
            while (entropy(hi / 2.0) <= target) {
                hi /= 2.0;
                if (++guard > 2000 || hi == 0.0) throw ValidationError("cannot bracket lambda");
            }
            lo = hi / 2.0;
        }

        double h_lo = entropy(lo);
        double h_hi = entropy(hi);
        for (int it = 0; it < opts.max_iterations; ++it) {
            if (h_hi >= target - tol || h_lo <= target + tol) break;
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double h_mid = entropy(mid);
            if (h_mid > target) {
                lo = mid;
                h_lo = h_mid;
            } else {
                hi = mid;
                h_hi = h_mid;
            }
        }
        if (std::abs(h_lo - target) <= std::abs(h_hi - target)) {
            lambda = lo;
            achieved = h_lo;
        } else {
            lambda = hi;
            achieved = h_hi;
        }
        if (std::abs(achieved - target) > tol) {
            throw ValidationError("lambda search did not reach the payload within tolerance");
        }
    }

    ProbMap pm;
    pm.lambda = lambda;
    pm.target_payload = target;
    pm.achieved_payload = achieved;
    pm.p = RealMatrix(cm.rho.rows(), cm.rho.cols());
    for (std::size_t r = 0; r < cm.rho.rows(); ++r) {
        for (std::size_t c = 0; c < cm.rho.cols(); ++c) {
            pm.p(r, c) = cm.is_wet(r, c) ? 0.0 : change_probability(cm.rho(r, c), lambda);
        }
    }
    return pm;
}

DctContainer simulate(const ProbMap& pm, const DctContainer& cover, std::uint64_t seed, std::size_t threads) {
    validate(cover);
    if (pm.p.rows() != cover.height() || pm.p.cols() != cover.width()) {
        throw ValidationError("probability map shape does not match the cover");
    }
    DctContainer stego = cover;
    parallel_for(cover.height(), threads, [&](std::size_t row) {
        for (std::size_t col = 0; col < cover.width(); ++col) {
            const double p = pm.p(row, col);
            const double r = uniform_at(seed, static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col),
                                        RngStream::Embedding);
            int change = 0;
            if (r < p) {
                change = -1;
            } else if (r < 2.0 * p) {
                change = 1;
            }
            stego.coeffs(row, col) = std::clamp(cover.coeffs(row, col) + change, kCoeffMin, kCoeffMax);
        }
    });
    return stego;
}

}  // namespace juniward
