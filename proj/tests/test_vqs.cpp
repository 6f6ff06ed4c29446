#include "vqs/vqs.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace vqs;
using Catch::Matchers::WithinAbs;

namespace {

StateVector random_state(std::uint32_t num_qubits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(std::size_t{1} << num_qubits);
    double sum = 0.0;
    for (double& x : v) {
        x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
        sum += x * x;
    }
    for (double& x : v) x /= std::sqrt(sum);
    return StateVector::from_amplitudes(std::move(v));
}

OracleSpec random_oracle(std::uint32_t n, std::mt19937_64& rng) {
    const std::uint64_t N = std::uint64_t{1} << n;
    const std::size_t k = 1 + rng() % 2;
    std::vector<std::uint32_t> goods;
    while (goods.size() < k)
        goods.push_back(static_cast<std::uint32_t>(rng() % (N - 1)));
    return OracleSpec(n, std::move(goods));
}

} // namespace

TEST_CASE("prepare_psi1 moves good amplitudes behind the label") {
    const StateVector psi1 = prepare_psi1(StateVector::uniform(2), OracleSpec(2, {3}));
    const std::vector<double> want = {0.5, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.5};
    REQUIRE(psi1.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) REQUIRE(psi1[i] == want[i]);

    REQUIRE_THROWS_AS(prepare_psi1(StateVector::uniform(3), OracleSpec(2, {3})),
                      std::invalid_argument);
}

TEST_CASE("hadamard test reproduces the direct expectations") {
    std::mt19937_64 rng(2024);
    for (std::uint32_t n : {2u, 4u, 8u}) {
        const AnsatzSpec ansatz(Family::TypeI, 3, n + 1);
        for (int rep = 0; rep < 10; ++rep) {
            const OracleSpec oracle = random_oracle(n, rng);
            const StateVector psi1 = prepare_psi1(random_state(n, rng()), oracle);
            const Theta theta = random_theta(ansatz.num_params(), rng());
            const double z1d = expectation_z1(theta, psi1, ansatz);
            const double z2d = expectation_z2(theta, psi1, ansatz);
            const double z1h = expectation_z1(theta, psi1, ansatz, ExpectationMethod::HadamardTest);
            const double z2h = expectation_z2(theta, psi1, ansatz, ExpectationMethod::HadamardTest);
            REQUIRE_THAT(z1h, WithinAbs(z1d, 1e-10));
            REQUIRE_THAT(z2h, WithinAbs(z2d, 1e-10));
            REQUIRE_THAT(objective(theta, psi1, ansatz), WithinAbs(-0.5 * (z1d - z2d), 1e-12));
            REQUIRE_THAT(objective(theta, psi1, ansatz), WithinAbs(-0.5 * (z1h - z2h), 1e-10));
        }
    }
}

TEST_CASE("expectations reject mismatched dimensions") {
    const AnsatzSpec ansatz(Family::TypeI, 1, 4);
    const StateVector psi1 = prepare_psi1(StateVector::uniform(2), OracleSpec(2, {1}));
    const Theta theta(ansatz.num_params(), 0.0);
    REQUIRE_THROWS_AS(expectation_z1(theta, psi1, ansatz), std::invalid_argument);
    REQUIRE_THROWS_AS(objective(theta, psi1, ansatz), std::invalid_argument);
    REQUIRE_THROWS_AS(gradient(theta, psi1, ansatz), std::invalid_argument);
}

TEST_CASE("analytic minimum") {
    const StateVector uniform2 = StateVector::uniform(2);
    const AnalyticOptimum one = analytic_minimum(uniform2, OracleSpec(2, {3}));
    REQUIRE_THAT(one.f_min, WithinAbs(-0.5, 1e-15));
    REQUIRE(one.beta_star.size() == 8);
    REQUIRE_THAT(one.beta_star[7], WithinAbs(1.0, 1e-15));
    for (std::size_t i = 0; i < 7; ++i) REQUIRE(one.beta_star[i] == 0.0);

    const AnalyticOptimum two = analytic_minimum(uniform2, OracleSpec(2, {1, 2}));
    REQUIRE_THAT(two.f_min, WithinAbs(-std::sqrt(0.5), 1e-15));
    double norm = 0.0;
    for (double b : two.beta_star) norm += b * b;
    REQUIRE_THAT(norm, WithinAbs(1.0, 1e-12));

    // a good set the input state never hits has no optimum to normalize
    REQUIRE_THROWS_AS(analytic_minimum(StateVector::basis(2, 0), OracleSpec(2, {3})),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(analytic_minimum(StateVector::uniform(3), OracleSpec(2, {3})),
                      std::invalid_argument);
}

TEST_CASE("objective never dips below the analytic minimum") {
    std::mt19937_64 rng(77);
    const StateVector psi0 = StateVector::uniform(4);
    const OracleSpec oracle(4, {3, 9, 14});
    const StateVector psi1 = prepare_psi1(psi0, oracle);
    const double f_min = analytic_minimum(psi0, oracle).f_min;
    const AnsatzSpec ansatz(Family::TypeI, 3, 5);
    for (int rep = 0; rep < 50; ++rep) {
        const Theta theta = random_theta(ansatz.num_params(), rng());
        REQUIRE(objective(theta, psi1, ansatz) >= f_min - 1e-10);
    }
}

TEST_CASE("gradient matches the explicit parameter shift") {
    std::mt19937_64 rng(91);
    const std::vector<AnsatzSpec> specs = {
        AnsatzSpec(Family::TypeI, 3, 3),
        AnsatzSpec(Family::TypeII, 2, 3),
    };
    for (const AnsatzSpec& ansatz : specs) {
        const OracleSpec oracle(2, {2});
        const StateVector psi1 = prepare_psi1(random_state(2, rng()), oracle);
        for (int rep = 0; rep < 5; ++rep) {
            const Theta theta = random_theta(ansatz.num_params(), rng());
            const Theta grad = gradient(theta, psi1, ansatz);
            for (std::size_t j = 0; j < theta.size(); ++j) {
                Theta plus = theta, minus = theta;
                plus[j] += std::numbers::pi / 2;
                minus[j] -= std::numbers::pi / 2;
                const double shift =
                    (objective(plus, psi1, ansatz) - objective(minus, psi1, ansatz)) / 2;
                REQUIRE_THAT(grad[j], WithinAbs(shift, 1e-10));
            }
        }
    }
}

TEST_CASE("gradient matches finite differences") {
    std::mt19937_64 rng(92);
    for (std::uint32_t n : {2u, 4u}) {
        const AnsatzSpec ansatz(Family::TypeI, 3, n + 1);
        const OracleSpec oracle(n, {1});
        const StateVector psi1 = prepare_psi1(random_state(n, rng()), oracle);
        for (int rep = 0; rep < 4; ++rep) {
            const Theta theta = random_theta(ansatz.num_params(), rng());
            const Theta grad = gradient(theta, psi1, ansatz);
            const double h = 1e-5;
            for (std::size_t j = 0; j < theta.size(); ++j) {
                Theta plus = theta, minus = theta;
                plus[j] += h;
                minus[j] -= h;
                const double fd =
                    (objective(plus, psi1, ansatz) - objective(minus, psi1, ansatz)) / (2 * h);
                REQUIRE_THAT(grad[j], WithinAbs(fd, 1e-6));
            }
        }
    }
}

TEST_CASE("adam first step moves by roughly lr times the gradient sign") {
    AdamConfig cfg;
    AdamState state(2);
    Theta theta = {0.0, 0.0};
    adam_step(state, theta, {0.5, -0.3}, cfg);
    REQUIRE_THAT(theta[0], WithinAbs(-0.1, 1e-7));
    REQUIRE_THAT(theta[1], WithinAbs(0.1, 1e-7));
    REQUIRE(state.step == 1);

    adam_step(state, theta, {0.5, -0.3}, cfg);
    REQUIRE(state.step == 2);
    REQUIRE(theta[0] < -0.1);
    REQUIRE(theta[1] > 0.1);
}

TEST_CASE("adam input validation") {
    AdamConfig cfg;
    AdamState state(2);
    Theta theta = {0.0, 0.0};
    REQUIRE_THROWS_AS(adam_step(state, theta, {1.0}, cfg), std::invalid_argument);
    REQUIRE_THROWS_AS(adam_step(state, theta, {1.0, std::nan("")}, cfg), std::invalid_argument);

    AdamConfig bad = cfg;
    bad.learning_rate = 0.0;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.beta1 = 1.0;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.epsilon = 0.0;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);

    TerminationConfig term;
    term.patience = 0;
    REQUIRE_THROWS_AS(term.validate(), std::invalid_argument);
}

TEST_CASE("random theta is deterministic and lands in [0, 2pi)") {
    const Theta a = random_theta(64, 12345);
    const Theta b = random_theta(64, 12345);
    REQUIRE(a == b);
    const Theta c = random_theta(64, 12346);
    REQUIRE(a != c);
    for (double t : a) {
        REQUIRE(t >= 0.0);
        REQUIRE(t < 2.0 * std::numbers::pi);
    }
}

TEST_CASE("run_vqs is deterministic in the seed") {
    const StateVector psi0 = StateVector::uniform(2);
    const OracleSpec oracle(2, {3});
    const AnsatzSpec ansatz(Family::TypeI, 3, 3);
    const AdamConfig adam;
    const TerminationConfig term;
    const VqsRun a = run_vqs(psi0, oracle, ansatz, adam, term, 1000);
    const VqsRun b = run_vqs(psi0, oracle, ansatz, adam, term, 1000);
    REQUIRE(a.objective_trace == b.objective_trace);
    REQUIRE(a.final_theta == b.final_theta);
    REQUIRE(a.final_good_probability == b.final_good_probability);

    const VqsRun c = run_vqs(psi0, oracle, ansatz, adam, term, 1001);
    REQUIRE(a.objective_trace != c.objective_trace);
}

TEST_CASE("run_vqs bookkeeping") {
    const StateVector psi0 = StateVector::uniform(2);
    const OracleSpec oracle(2, {3});
    const AnsatzSpec ansatz(Family::TypeI, 3, 3);
    const AdamConfig adam;
    const TerminationConfig term;
    const VqsRun run = run_vqs(psi0, oracle, ansatz, adam, term, 1000);

    REQUIRE(run.seed == 1000);
    REQUIRE(run.iterations_used == static_cast<int>(run.objective_trace.size()));
    REQUIRE(run.iterations_used <= term.max_iterations);
    const StateVector psi1 = prepare_psi1(psi0, oracle);
    REQUIRE(objective(run.final_theta, psi1, ansatz) == run.objective_trace.back());

    const double f_min = analytic_minimum(psi0, oracle).f_min;
    for (double f : run.objective_trace) REQUIRE(f >= f_min - 1e-10);

    REQUIRE(run.per_good_probabilities.size() == 1);
    REQUIRE_THAT(run.final_good_probability, WithinAbs(run.per_good_probabilities[0], 1e-15));

    if (run.termination_reason == TerminationReason::MaxIters)
        REQUIRE(run.iterations_used == term.max_iterations);
}

TEST_CASE("run_vqs converges on the two-qubit search") {
    const StateVector psi0 = StateVector::uniform(2);
    const OracleSpec oracle(2, {3});
    const AnsatzSpec ansatz(Family::TypeI, 3, 3);
    const VqsRun run = run_vqs(psi0, oracle, ansatz, AdamConfig{}, TerminationConfig{}, 1000);
    REQUIRE(run.final_good_probability >= 0.975);

    const double f_min = analytic_minimum(psi0, oracle).f_min;
    REQUIRE_THAT(run.objective_trace.back(), WithinAbs(f_min, 0.02));
}

TEST_CASE("run_vqs stops early at the iteration cap") {
    TerminationConfig term;
    term.max_iterations = 3;
    const VqsRun run = run_vqs(StateVector::uniform(2), OracleSpec(2, {3}),
                               AnsatzSpec(Family::TypeI, 3, 3), AdamConfig{}, term, 1000);
    REQUIRE(run.iterations_used == 3);
    REQUIRE(run.termination_reason == TerminationReason::MaxIters);
}

TEST_CASE("run_vqs hadamard-test path tracks the direct path") {
    const StateVector psi0 = StateVector::uniform(2);
    const OracleSpec oracle(2, {3});
    const AnsatzSpec ansatz(Family::TypeI, 3, 3);
    const VqsRun direct = run_vqs(psi0, oracle, ansatz, AdamConfig{}, TerminationConfig{}, 1000);
    const VqsRun ht = run_vqs(psi0, oracle, ansatz, AdamConfig{}, TerminationConfig{}, 1000,
                              ExpectationMethod::HadamardTest);
    REQUIRE(direct.objective_trace.size() == ht.objective_trace.size());
    for (std::size_t i = 0; i < direct.objective_trace.size(); ++i)
        REQUIRE_THAT(ht.objective_trace[i], WithinAbs(direct.objective_trace[i], 1e-10));
}
