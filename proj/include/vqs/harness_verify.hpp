#pragma once

// Cross-check suites behind the `verify` subcommand. Included by harness.hpp
// after the config/stats helpers; not meant to be included on its own.

namespace vqs {

namespace detail {

inline StateVector verify_random_state(std::uint32_t num_qubits, std::mt19937_64& rng) {
    std::vector<double> v(std::size_t{1} << num_qubits);
    double sum = 0.0;
    for (double& x : v) {
        x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
        sum += x * x;
    }
    const double scale = 1.0 / std::sqrt(sum);
    for (double& x : v) x *= scale;
    return StateVector::from_amplitudes(std::move(v));
}

struct TwoScalarGrover {
    double ab, ag;
    double N, k;

    TwoScalarGrover(std::uint32_t n, std::uint64_t k_good)
        : N(std::ldexp(1.0, static_cast<int>(n))), k(static_cast<double>(k_good)) {
        ab = ag = 1.0 / std::sqrt(N);
    }

    void step() {
        ag = -ag;
        const double m = ((N - k) * ab + k * ag) / N;
        ab = 2.0 * m - ab;
        ag = 2.0 * m - ag;
    }
};

} // namespace detail

inline bool run_verification(std::ostream& out) {
    int failures = 0;
    const auto check = [&](const char* name, bool ok) {
        out << (ok ? "ok   " : "FAIL ") << name << '\n';
        if (!ok) ++failures;
    };

    check("grover statevector matches two-scalar recurrence", [] {
        for (std::uint32_t n : {2u, 4u, 6u, 8u, 10u}) {
            const std::uint64_t N = std::uint64_t{1} << n;
            for (std::uint64_t k : {std::uint64_t{1}, std::uint64_t{3}}) {
                std::vector<std::uint32_t> goods;
                if (k == 1) goods = {static_cast<std::uint32_t>(N - 1)};
                else goods = {0u, 1u, static_cast<std::uint32_t>(N - 1)};
                const std::uint32_t bad = k == 1 ? 0u : 2u;
                detail::TwoScalarGrover rec(n, k);
                for (int t = 1; t <= 25; ++t) {
                    rec.step();
                    const StateVector s = simulate_grover(n, goods, t);
                    const double sign = t % 2 == 0 ? 1.0 : -1.0;
                    for (std::uint32_t g : goods)
                        if (std::abs(sign * s[g] - rec.ag) > 1e-12) return false;
                    if (std::abs(sign * s[bad] - rec.ab) > 1e-12) return false;
                }
            }
        }
        return true;
    }());

    check("grover recurrence matches closed form", [] {
        for (std::uint32_t n : {2u, 6u, 10u}) {
            const double N = std::ldexp(1.0, static_cast<int>(n));
            for (std::uint64_t k : {std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{3}}) {
                const double theta_a = std::asin(std::sqrt(static_cast<double>(k) / N));
                detail::TwoScalarGrover rec(n, k);
                for (int t = 1; t <= 50; ++t) {
                    rec.step();
                    const double closed = std::pow(std::sin((2.0 * t + 1.0) * theta_a), 2);
                    if (std::abs(static_cast<double>(k) * rec.ag * rec.ag - closed) > 1e-10)
                        return false;
                }
            }
        }
        return true;
    }());

    check("grover iteration counts cross the threshold exactly once", [] {
        if (count_iterations(2, 1, 0.5).n_G != 1) return false;
        {
            detail::TwoScalarGrover rec(2, 1);
            rec.step();
            if (rec.ag != 1.0 || rec.ab != 0.0) return false;
        }
        const std::pair<std::uint32_t, double> cases[] = {{8, 0.5}, {8, 0.9}, {14, 0.9}, {20, 0.5}};
        for (const auto& [n, p] : cases) {
            const GroverCount gc = count_iterations(n, 1, p);
            detail::TwoScalarGrover rec(n, 1);
            for (std::int64_t t = 1; t < gc.n_G; ++t) {
                rec.step();
                if (rec.ag * rec.ag >= p) return false;
            }
            rec.step();
            if (rec.ag * rec.ag < p) return false;
        }
        return true;
    }());

    check("mcx decomposition equals multi-controlled x with clean work wires", [] {
        for (std::uint32_t n = 2; n <= 6; ++n) {
            const Circuit c = decompose_mcx(n);
            const std::uint32_t W = 2 * n;
            const std::uint64_t full = (std::uint64_t{1} << n) - 1;
            for (std::uint64_t v = 0; v <= full; ++v) {
                for (std::uint64_t tbit = 0; tbit <= 1; ++tbit) {
                    const std::uint64_t idx = (v << n) | (tbit << (n - 1));
                    StateVector s = StateVector::basis(W, idx);
                    c.run(s);
                    const std::uint64_t want =
                        v == full ? idx ^ (std::uint64_t{1} << (n - 1)) : idx;
                    if (s[want] != 1.0) return false;
                }
            }
        }
        return true;
    }());

    check("oracle circuit matches the index-swap oracle", [] {
        std::mt19937_64 rng(2024);
        for (std::uint32_t n = 2; n <= 6; ++n) {
            const std::uint64_t N = std::uint64_t{1} << n;
            const std::vector<OracleSpec> specs = {
                OracleSpec(n, {static_cast<std::uint32_t>(N - 1)}),
                OracleSpec(n, {0u, static_cast<std::uint32_t>(N - 2)}),
            };
            for (const OracleSpec& spec : specs) {
                const Circuit plain = build_oracle(spec, false);
                const Circuit ladder = build_oracle(spec, true);
                for (int rep = 0; rep < 10; ++rep) {
                    const StateVector psi = detail::verify_random_state(n, rng);
                    std::vector<double> emb(2 * N, 0.0);
                    for (std::uint64_t i = 0; i < N; ++i) emb[i] = psi[i];
                    StateVector reference = StateVector::from_amplitudes(emb);
                    apply_oracle_semantic(reference, spec);
                    StateVector direct = StateVector::from_amplitudes(emb);
                    plain.run(direct);
                    for (std::uint64_t i = 0; i < 2 * N; ++i)
                        if (std::abs(direct[i] - reference[i]) > 1e-12) return false;
                    std::vector<double> wide(std::size_t{1} << (2 * n), 0.0);
                    for (std::uint64_t i = 0; i < N; ++i) wide[i] = psi[i];
                    StateVector decomposed = StateVector::from_amplitudes(std::move(wide));
                    ladder.run(decomposed);
                    for (std::uint64_t i = 0; i < decomposed.size(); ++i) {
                        const double want = i < 2 * N ? reference[i] : 0.0;
                        if (std::abs(decomposed[i] - want) > 1e-12) return false;
                    }
                }
            }
        }
        return true;
    }());

    check("hadamard test matches direct expectations", [] {
        std::mt19937_64 rng(515);
        for (std::uint32_t n : {2u, 4u}) {
            const std::uint64_t N = std::uint64_t{1} << n;
            const std::vector<OracleSpec> specs = {
                OracleSpec(n, {static_cast<std::uint32_t>(N - 1)}),
                OracleSpec(n, {1u, static_cast<std::uint32_t>(N - 1)}),
            };
            const AnsatzSpec ansatz(Family::TypeI, 3, n + 1);
            for (const OracleSpec& spec : specs) {
                for (int rep = 0; rep < 5; ++rep) {
                    const StateVector psi1 =
                        prepare_psi1(detail::verify_random_state(n, rng), spec);
                    const Theta theta = random_theta(ansatz.num_params(), 900 + rep);
                    const double z1d =
                        expectation_z1(theta, psi1, ansatz, ExpectationMethod::Direct);
                    const double z1h =
                        expectation_z1(theta, psi1, ansatz, ExpectationMethod::HadamardTest);
                    const double z2d =
                        expectation_z2(theta, psi1, ansatz, ExpectationMethod::Direct);
                    const double z2h =
                        expectation_z2(theta, psi1, ansatz, ExpectationMethod::HadamardTest);
                    if (std::abs(z1d - z1h) > 1e-10 || std::abs(z2d - z2h) > 1e-10) return false;
                    const double f = objective(theta, psi1, ansatz);
                    if (std::abs(f + 0.5 * (z1d - z2d)) > 1e-10) return false;
                }
            }
        }
        return true;
    }());

    check("sweep gradient matches finite differences", [] {
        const OracleSpec spec(2, {3u});
        const StateVector psi1 = prepare_psi1(StateVector::uniform(2), spec);
        const AnsatzSpec configs[] = {AnsatzSpec(Family::TypeI, 3, 3),
                                      AnsatzSpec(Family::TypeII, 2, 3)};
        const double h = 1e-5;
        for (const AnsatzSpec& ansatz : configs) {
            for (int rep = 0; rep < 3; ++rep) {
                const Theta theta = random_theta(ansatz.num_params(), 40 + rep);
                const Theta grad = gradient(theta, psi1, ansatz);
                for (std::size_t j = 0; j < theta.size(); ++j) {
                    Theta tp = theta, tm = theta;
                    tp[j] += h;
                    tm[j] -= h;
                    const double fd =
                        (objective(tp, psi1, ansatz) - objective(tm, psi1, ansatz)) / (2.0 * h);
                    if (std::abs(grad[j] - fd) > 1e-6) return false;
                }
            }
        }
        return true;
    }());

    check("objective never drops below the analytic minimum", [] {
        const OracleSpec spec(4, {3u, 15u});
        const StateVector psi0 = StateVector::uniform(4);
        const StateVector psi1 = prepare_psi1(psi0, spec);
        const AnsatzSpec ansatz(Family::TypeI, 3, 5);
        const double f_min = analytic_minimum(psi0, spec).f_min;
        for (int rep = 0; rep < 50; ++rep) {
            const Theta theta = random_theta(ansatz.num_params(), 7000 + rep);
            if (objective(theta, psi1, ansatz) < f_min - 1e-10) return false;
        }
        return true;
    }());

    check("percentiles follow the box-plot convention", [] {
        const SummaryStats a = percentiles({1, 2, 3, 4, 5});
        if (a.p0 != 1 || a.p50 != 3 || a.p100 != 5 || !a.outliers.empty()) return false;
        const SummaryStats b = percentiles({0, 0, 0, 0, 100});
        if (b.outliers.size() != 1 || b.outliers[0] != 100) return false;
        const SummaryStats c = percentiles({7});
        return c.p0 == 7 && c.p25 == 7 && c.p50 == 7 && c.p75 == 7 && c.p100 == 7 &&
               c.outliers.empty();
    }());

    check("depth bookkeeping matches the closed forms", [] {
        for (std::uint32_t n : {2u, 8u}) {
            const AnsatzSpec t1(Family::TypeI, 3, n + 1);
            if (structural_depth(build_type1_ansatz(t1)) != 3 * (n + 1)) return false;
        }
        for (std::uint32_t n = 2; n <= 6; ++n)
            if (structural_depth(decompose_mcx(n)) != 2 * n - 1) return false;
        for (std::uint32_t n : {2u, 4u}) {
            const OracleSpec all_ones(n, {static_cast<std::uint32_t>((1u << n) - 1)});
            const AnsatzSpec t1(Family::TypeI, 3, n + 1);
            if (structural_depth(build_fig1a(all_ones, t1, true)) !=
                formula_depth(FormulaKind::Fig1A, n, t1))
                return false;
            if (structural_depth(build_fig1b(all_ones, t1, true)) !=
                formula_depth(FormulaKind::Fig1B, n, t1))
                return false;
            if (structural_depth(build_fig1c(all_ones, t1, true)) !=
                formula_depth(FormulaKind::Fig1C, n, t1))
                return false;
        }
        const OracleSpec wide(26, {static_cast<std::uint32_t>((1u << 26) - 1)});
        const AnsatzSpec t2(Family::TypeII, 1, 27);
        return structural_depth(build_fig1c(wide, t2, true)) == 56;
    }());

    check("suite output is reproducible", [] {
        ExperimentConfig cfg;
        cfg.n = 2;
        cfg.layers = 2;
        cfg.runs = 5;
        cfg.seed_base = 77;
        const SuiteResult a = run_suite(cfg);
        const SuiteResult b = run_suite(cfg);
        return records_to_jsonl(a.records) == records_to_jsonl(b.records) &&
               summary_to_csv(a.stats) == summary_to_csv(b.stats);
    }());

    out << (failures == 0 ? "verification passed" : "verification failed") << '\n';
    return failures == 0;
}

} // namespace vqs
