// metrics.hpp — coherent information, capacity estimates, trace distance,
// and diamond distance with an independent sampling oracle.

#pragma once

#include "udwqc/channels.hpp"
#include "udwqc/linalg.hpp"

#include <cstdint>

namespace udwqc {

/// I_c = S(N(rho)) - S((1_C (x) N)(purification of rho)), in bits.
double coherent_information(const QuantumChannel& ch, const Operator& rho_in);

enum class CapacityStrategy { assume_maximizing_default, optimize_bloch };

/// assume_maximizing_default evaluates I_c at the maximally mixed input;
/// optimize_bloch maximizes over the Bloch ball (multi-start, derivative
/// free) and clamps the result at zero.
double capacity_estimate(const QuantumChannel& ch, CapacityStrategy strategy,
                         std::uint64_t seed = 1, int restarts = 8);

struct DiamondResult {
    double value = 0.0;
    std::vector<double> argmax_state;     // real parametrization of the input ket
    int restarts = 0;
    long iterations = 0;
    std::vector<double> best_per_restart;
};

/// sup over pure states psi on Reference (x) Input (reference dim = input
/// dim) of || (id (x) (ch1 - ch2))(|psi><psi|) ||_1, by multi-start
/// Nelder-Mead over the real parametrization of unit vectors. Restart seeds
/// are deterministic in `seed`; a structured candidate set (including the
/// maximally entangled state) is always evaluated, so the result never falls
/// below those lower bounds.
DiamondResult diamond_distance(const QuantumChannel& ch1,
                               const QuantumChannel& ch2, int restarts = 16,
                               std::uint64_t seed = 7);

/// Best stabilized trace-norm value over Haar-random pure inputs plus the
/// deterministic structured set. Always a lower bound on the diamond value.
double diamond_lower_bound_oracle(const QuantumChannel& ch1,
                                  const QuantumChannel& ch2, int samples,
                                  std::uint64_t seed = 7);

/// 0.5 * || rho - sigma ||_1.
double trace_distance(const Operator& rho, const Operator& sigma);

/// The stabilized output (id (x) (ch1 - ch2)) applied to |psi><psi|.
Matrix stabilized_difference(const QuantumChannel& ch1,
                             const QuantumChannel& ch2, const Vector& psi);

/// Deterministic structured stabilized inputs on C^{d*d}: the maximally
/// entangled state, computational products, and axis-eigenstate products.
std::vector<Vector> structured_stabilized_inputs(int in_dim);

}  // namespace udwqc
