#pragma once

#include "circuit.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace vqs {

using Theta = std::vector<double>;

struct AdamConfig {
    double learning_rate = 0.1;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    void validate() const {
        if (!(learning_rate > 0)) throw std::invalid_argument("adam: learning_rate must be > 0");
        if (!(beta1 > 0 && beta1 < 1) || !(beta2 > 0 && beta2 < 1))
            throw std::invalid_argument("adam: betas must lie in (0,1)");
        if (!(epsilon > 0)) throw std::invalid_argument("adam: epsilon must be > 0");
    }
};

struct TerminationConfig {
    int max_iterations = 300;
    double small_change_threshold = 1e-4;
    int patience = 5;

    void validate() const {
        if (max_iterations < 1 || patience < 1 || !(small_change_threshold > 0))
            throw std::invalid_argument("termination: all fields must be positive");
    }
};

enum class TerminationReason { MaxIters, SmallChange };
enum class ExpectationMethod { Direct, HadamardTest };

struct VqsRun {
    std::uint64_t seed = 0;
    std::vector<double> objective_trace;
    Theta final_theta;
    int iterations_used = 0;
    double final_good_probability = 0.0;
    std::vector<double> per_good_probabilities;
    TerminationReason termination_reason = TerminationReason::MaxIters;
};

// |psi1> = oracle applied to |0>|psi0>: bad amplitudes stay at x, good ones
// move to 2^n + x.
inline StateVector prepare_psi1(const StateVector& psi0, const OracleSpec& oracle) {
    if (psi0.num_qubits() != oracle.n)
        throw std::invalid_argument("prepare_psi1: psi0 must have n qubits");
    std::vector<double> amps(psi0.size() * 2, 0.0);
    for (std::size_t i = 0; i < psi0.size(); ++i) amps[i] = psi0[i];
    StateVector psi1 = StateVector::from_amplitudes(std::move(amps));
    apply_oracle_semantic(psi1, oracle);
    return psi1;
}

namespace detail {

inline void check_vqs_dims(const StateVector& psi1, const AnsatzSpec& ansatz) {
    if (psi1.num_qubits() != ansatz.wires)
        throw std::invalid_argument("state/ansatz dimension mismatch");
}

// P(ancilla=0) - P(ancilla=1) after H / controlled-U [/ CZ] / H on
// |0>_anc (x) psi1. The ancilla is the new top bit, so the two probabilities
// are the squared norms of the array halves.
inline double hadamard_test(const StateVector& psi1, const Circuit& controlled_u,
                            const Theta& theta, bool with_cz) {
    const std::uint32_t W = psi1.num_qubits();
    std::vector<double> amps(psi1.size() * 2, 0.0);
    for (std::size_t i = 0; i < psi1.size(); ++i) amps[i] = psi1[i];
    StateVector big = StateVector::from_amplitudes(std::move(amps));
    const std::uint32_t anc = W;
    big.apply_h(anc);
    controlled_u.run(big, theta);
    if (with_cz) big.apply_cz(anc, W - 1);
    big.apply_h(anc);
    double p0 = 0.0, p1 = 0.0;
    const std::size_t half = psi1.size();
    for (std::size_t i = 0; i < half; ++i) p0 += big[i] * big[i];
    for (std::size_t i = half; i < 2 * half; ++i) p1 += big[i] * big[i];
    return p0 - p1;
}

inline double expectation_direct(const StateVector& psi1, const Circuit& u,
                                 const Theta& theta, bool z_on_label) {
    StateVector psi2 = psi1;
    u.run(psi2, theta);
    const std::size_t half = psi1.size() / 2;
    double lower = 0.0, upper = 0.0;
    for (std::size_t i = 0; i < half; ++i) lower += psi1[i] * psi2[i];
    for (std::size_t i = half; i < psi1.size(); ++i) upper += psi1[i] * psi2[i];
    return z_on_label ? lower - upper : lower + upper;
}

inline double objective_direct(const StateVector& psi1, const Circuit& u, const Theta& theta) {
    StateVector psi2 = psi1;
    u.run(psi2, theta);
    const std::size_t half = psi1.size() / 2;
    double s = 0.0;
    for (std::size_t i = half; i < psi1.size(); ++i) s += psi1[i] * psi2[i];
    return -s;
}

// <lam| dRy/dp |ket> on one qubit without materializing the derivative state;
// dRy/dp = [[-sin p, -cos p],[cos p, -sin p]].
inline double rotation_derivative_inner(const StateVector& lam, const StateVector& ket,
                                        std::uint32_t qubit, double c, double s) {
    const std::uint64_t step = std::uint64_t{1} << qubit;
    const std::uint64_t dim = ket.size();
    double acc = 0.0;
    for (std::uint64_t base = 0; base < dim; base += step << 1) {
        for (std::uint64_t i = base; i < base + step; ++i) {
            const double a0 = ket[i];
            const double a1 = ket[i + step];
            acc += lam[i] * (-s * a0 - c * a1) + lam[i + step] * (c * a0 - s * a1);
        }
    }
    return acc;
}

// Reverse sweep computing every parameter-shift component in two passes.
// With f = <lam|G_P ... G_1|psi1> and each slot feeding exactly one Ry, the
// +-pi/2 shift average collapses to <lam_j| dRy/dp_j |ket_{j-1}>, which this
// evaluates gate by gate while unwinding ket and lam.
inline Theta gradient_circuit(const Circuit& u, const Theta& theta, const StateVector& psi1) {
    StateVector ket = psi1;
    u.run(ket, theta);
    StateVector lam = psi1;
    std::vector<double>& la = lam.amplitudes();
    const std::size_t half = psi1.size() / 2;
    for (std::size_t i = 0; i < half; ++i) la[i] = 0.0;
    for (std::size_t i = half; i < psi1.size(); ++i) la[i] = -psi1[i];
    Theta grad(u.num_params, 0.0);
    for (auto it = u.gates.rbegin(); it != u.gates.rend(); ++it) {
        const Gate& g = *it;
        apply_gate_inverse(ket, g, theta);
        if (g.kind == GateKind::Ry && g.parameterized()) {
            const double p = theta[g.param_slot];
            grad[g.param_slot] =
                rotation_derivative_inner(lam, ket, g.wires[0], std::cos(p), std::sin(p));
        }
        apply_gate_inverse(lam, g, theta);
    }
    return grad;
}

} // namespace detail

// <Z1> = <psi1|U(theta)|psi1>
inline double expectation_z1(const Theta& theta, const StateVector& psi1,
                             const AnsatzSpec& ansatz,
                             ExpectationMethod method = ExpectationMethod::Direct) {
    detail::check_vqs_dims(psi1, ansatz);
    if (method == ExpectationMethod::Direct)
        return detail::expectation_direct(psi1, build_ansatz(ansatz), theta, false);
    return detail::hadamard_test(psi1, build_controlled_ansatz(ansatz), theta, false);
}

// <Z2> = <psi1| Z (x) I^n U(theta) |psi1>, Z on the label qubit
inline double expectation_z2(const Theta& theta, const StateVector& psi1,
                             const AnsatzSpec& ansatz,
                             ExpectationMethod method = ExpectationMethod::Direct) {
    detail::check_vqs_dims(psi1, ansatz);
    if (method == ExpectationMethod::Direct)
        return detail::expectation_direct(psi1, build_ansatz(ansatz), theta, true);
    return detail::hadamard_test(psi1, build_controlled_ansatz(ansatz), theta, true);
}

// f(theta) = -sum over the second half of psi1[i] * (U(theta) psi1)[i]
//          = -0.5 (<Z1> - <Z2>)
inline double objective(const Theta& theta, const StateVector& psi1, const AnsatzSpec& ansatz) {
    detail::check_vqs_dims(psi1, ansatz);
    return detail::objective_direct(psi1, build_ansatz(ansatz), theta);
}

struct AnalyticOptimum {
    double f_min = 0.0;
    std::vector<double> beta_star; // over 2^(n+1) entries
};

// KKT optimum of the objective: f_min = -sqrt(sum of squared good
// amplitudes), attained when the output good amplitudes are proportional to
// the input ones.
inline AnalyticOptimum analytic_minimum(const StateVector& psi0, const OracleSpec& oracle) {
    if (psi0.num_qubits() != oracle.n)
        throw std::invalid_argument("analytic_minimum: psi0 must have n qubits");
    double sum = 0.0;
    for (std::uint32_t g : oracle.good_indices) sum += psi0[g] * psi0[g];
    if (sum <= 0.0)
        throw std::invalid_argument("analytic_minimum: all good amplitudes are zero");
    AnalyticOptimum opt;
    opt.f_min = -std::sqrt(sum);
    opt.beta_star.assign(psi0.size() * 2, 0.0);
    const std::size_t N = psi0.size();
    for (std::uint32_t g : oracle.good_indices)
        opt.beta_star[N + g] = psi0[g] / std::sqrt(sum);
    return opt;
}

// Parameter-shift gradient: component j equals
// [f(theta + pi/2 e_j) - f(theta - pi/2 e_j)] / 2, evaluated on the direct
// expectation path.
inline Theta gradient(const Theta& theta, const StateVector& psi1, const AnsatzSpec& ansatz) {
    detail::check_vqs_dims(psi1, ansatz);
    return detail::gradient_circuit(build_ansatz(ansatz), theta, psi1);
}

struct AdamState {
    std::vector<double> m, v;
    std::int64_t step = 0;

    explicit AdamState(std::size_t num_params) : m(num_params, 0.0), v(num_params, 0.0) {}
};

inline void adam_step(AdamState& state, Theta& theta, const Theta& grad,
                      const AdamConfig& cfg) {
    if (grad.size() != theta.size() || grad.size() != state.m.size())
        throw std::invalid_argument("adam_step: size mismatch");
    for (double g : grad)
        if (!std::isfinite(g)) throw std::invalid_argument("adam_step: non-finite gradient");
    ++state.step;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
    for (std::size_t j = 0; j < grad.size(); ++j) {
        state.m[j] = cfg.beta1 * state.m[j] + (1.0 - cfg.beta1) * grad[j];
        state.v[j] = cfg.beta2 * state.v[j] + (1.0 - cfg.beta2) * grad[j] * grad[j];
        const double mhat = state.m[j] / bc1;
        const double vhat = state.v[j] / bc2;
        theta[j] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.epsilon);
    }
}

// Uniform draws in [0, 2pi) from a seeded mt19937_64, mapped through the
// 53-bit mantissa so the stream is identical on every platform.
inline Theta random_theta(std::size_t num_params, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Theta theta(num_params);
    for (double& t : theta) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        t = u * 2.0 * std::numbers::pi;
    }
    return theta;
}

// One full optimization: seeded init, iterate objective / gradient / ADAM,
// stop on `patience` consecutive small relative changes or max_iterations,
// then simulate the search circuit with the final parameters.
inline VqsRun run_vqs(const StateVector& psi0, const OracleSpec& oracle,
                      const AnsatzSpec& ansatz, const AdamConfig& adam,
                      const TerminationConfig& term, std::uint64_t seed,
                      ExpectationMethod method = ExpectationMethod::Direct) {
    adam.validate();
    term.validate();
    const StateVector psi1 = prepare_psi1(psi0, oracle);
    detail::check_vqs_dims(psi1, ansatz);
    const Circuit u = build_ansatz(ansatz);
    const Circuit cu = method == ExpectationMethod::HadamardTest ? build_controlled_ansatz(ansatz)
                                                                 : Circuit{};

    VqsRun run;
    run.seed = seed;
    Theta theta = random_theta(u.num_params, seed);
    AdamState opt(u.num_params);
    double fprev = 0.0;
    int consecutive_small = 0;
    for (int it = 1; it <= term.max_iterations; ++it) {
        double f;
        if (method == ExpectationMethod::Direct) {
            f = detail::objective_direct(psi1, u, theta);
        } else {
            const double z1 = detail::hadamard_test(psi1, cu, theta, false);
            const double z2 = detail::hadamard_test(psi1, cu, theta, true);
            f = -0.5 * (z1 - z2);
        }
        run.objective_trace.push_back(f);
        if (it > 1) {
            const double rel = std::abs(f - fprev) / std::max(std::abs(fprev), 1e-12);
            consecutive_small = rel < term.small_change_threshold ? consecutive_small + 1 : 0;
            if (consecutive_small >= term.patience) {
                run.termination_reason = TerminationReason::SmallChange;
                break;
            }
        }
        fprev = f;
        if (it == term.max_iterations) {
            run.termination_reason = TerminationReason::MaxIters;
            break;
        }
        const Theta grad = detail::gradient_circuit(u, theta, psi1);
        adam_step(opt, theta, grad, adam);
    }
    run.iterations_used = static_cast<int>(run.objective_trace.size());
    run.final_theta = theta;

    StateVector psi2 = psi1;
    u.run(psi2, theta);
    const std::uint64_t N = std::uint64_t{1} << oracle.n;
    run.per_good_probabilities.reserve(oracle.good_indices.size());
    for (std::uint32_t g : oracle.good_indices) {
        const double a = psi2[N + g];
        run.per_good_probabilities.push_back(a * a);
    }
    for (double p : run.per_good_probabilities) run.final_good_probability += p;
    return run;
}

} // namespace vqs
