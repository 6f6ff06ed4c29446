#pragma once

#include "grover.hpp"
#include "vqs.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace vqs {

inline const char* termination_reason_name(TerminationReason r) {
    return r == TerminationReason::SmallChange ? "small_change" : "max_iterations";
}

// Shortest round-trip formatting so rerunning a suite reproduces output
// files byte for byte.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct ExperimentConfig {
    std::uint32_t n = 2;
    Family ansatz_family = Family::TypeI;
    std::uint32_t layers = 3;
    std::vector<std::uint32_t> good_indices; // empty: the last k basis states
    std::vector<double> ratio;               // empty: uniform initial state
    std::uint32_t runs = 100;
    std::uint64_t seed_base = 1000;
    AdamConfig adam;
    TerminationConfig termination;
    ExpectationMethod expectation_method = ExpectationMethod::Direct;

    std::vector<std::uint32_t> resolved_goods() const {
        if (!good_indices.empty()) return good_indices;
        const std::size_t k = ratio.empty() ? 1 : ratio.size();
        const std::uint64_t N = std::uint64_t{1} << n;
        std::vector<std::uint32_t> goods;
        for (std::size_t i = 0; i < k; ++i)
            goods.push_back(static_cast<std::uint32_t>(N - k + i));
        return goods;
    }

    void validate() const {
        if (n < 2 || n > 28)
            throw std::invalid_argument("config: n must lie in [2, 28]");
        if (layers < 1) throw std::invalid_argument("config: layers must be >= 1");
        if (runs < 1) throw std::invalid_argument("config: runs must be >= 1");
        const std::uint64_t N = std::uint64_t{1} << n;
        const std::vector<std::uint32_t> goods = resolved_goods();
        if (goods.size() >= N)
            throw std::invalid_argument("config: goods must be a strict subset of basis states");
        for (std::size_t i = 0; i < goods.size(); ++i) {
            if (goods[i] >= N) throw std::invalid_argument("config: good index out of range");
            if (i > 0 && goods[i] <= goods[i - 1])
                throw std::invalid_argument("config: good indices must be strictly increasing");
        }
        if (!ratio.empty()) {
            if (ratio.size() != goods.size())
                throw std::invalid_argument("config: ratio length must match good count");
            double sum = 0.0;
            for (double r : ratio) {
                if (!(r > 0.0)) throw std::invalid_argument("config: ratios must be positive");
                sum += r;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw std::invalid_argument("config: ratios must sum to 1");
        }
        adam.validate();
        termination.validate();
    }
};

// Uniform superposition, except that with a ratio the good amplitudes are
// rescaled to sqrt(r_i * k/N): each good element i then holds the fraction
// r_i of the unchanged total good probability k/N.
inline StateVector build_initial_state(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::uint64_t N = std::uint64_t{1} << cfg.n;
    if (cfg.ratio.empty()) return StateVector::uniform(cfg.n);
    const std::vector<std::uint32_t> goods = cfg.resolved_goods();
    const double k = static_cast<double>(goods.size());
    std::vector<double> amps(N, 1.0 / std::sqrt(static_cast<double>(N)));
    for (std::size_t i = 0; i < goods.size(); ++i)
        amps[goods[i]] = std::sqrt(cfg.ratio[i] * k / static_cast<double>(N));
    return StateVector::from_amplitudes(std::move(amps));
}

struct SummaryStats {
    double p0 = 0.0, p25 = 0.0, p50 = 0.0, p75 = 0.0, p100 = 0.0;
    std::vector<double> outliers;
};

// Box-plot summary: linear-interpolation percentiles with inclusive
// endpoints, outliers outside [p25 - 1.5 IQR, p75 + 1.5 IQR].
inline SummaryStats percentiles(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("percentiles: empty list");
    std::sort(values.begin(), values.end());
    const auto at = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    SummaryStats s;
    s.p0 = at(0.0);
    s.p25 = at(0.25);
    s.p50 = at(0.5);
    s.p75 = at(0.75);
    s.p100 = at(1.0);
    const double iqr = s.p75 - s.p25;
    const double lo = s.p25 - 1.5 * iqr;
    const double hi = s.p75 + 1.5 * iqr;
    for (double v : values)
        if (v < lo || v > hi) s.outliers.push_back(v);
    return s;
}

struct SuiteResult {
    std::vector<VqsRun> records;
    std::vector<std::pair<std::string, SummaryStats>> stats;
};

inline std::uint32_t worker_count(std::uint32_t runs) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (const char* env = std::getenv("VQS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) workers = static_cast<unsigned>(v);
    }
    return std::max(1u, std::min<std::uint32_t>(workers, runs));
}

inline SuiteResult run_suite(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::vector<std::uint32_t> goods = cfg.resolved_goods();
    const StateVector psi0 = build_initial_state(cfg);
    const OracleSpec oracle(cfg.n, goods);
    const AnsatzSpec ansatz(cfg.ansatz_family, cfg.layers, cfg.n + 1);
    const double f_min = analytic_minimum(psi0, oracle).f_min;

    SuiteResult result;
    result.records.resize(cfg.runs);
    std::atomic<std::uint32_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const auto work = [&] {
        for (;;) {
            const std::uint32_t i = next.fetch_add(1);
            if (i >= cfg.runs || failed.load()) return;
            try {
                result.records[i] = run_vqs(psi0, oracle, ansatz, cfg.adam, cfg.termination,
                                            cfg.seed_base + i, cfg.expectation_method);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    const std::uint32_t workers = worker_count(cfg.runs);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    // records sit at index seed - seed_base, so they are already seed-sorted
    std::vector<double> prob, iters, gap;
    prob.reserve(cfg.runs);
    for (const VqsRun& r : result.records) {
        prob.push_back(r.final_good_probability);
        iters.push_back(static_cast<double>(r.iterations_used));
        gap.push_back(r.objective_trace.back() - f_min);
    }
    result.stats.emplace_back("final_good_probability", percentiles(std::move(prob)));
    result.stats.emplace_back("iterations_used", percentiles(std::move(iters)));
    result.stats.emplace_back("objective_gap", percentiles(std::move(gap)));
    if (!cfg.ratio.empty()) {
        for (std::size_t j = 0; j < goods.size(); ++j) {
            std::vector<double> per;
            per.reserve(cfg.runs);
            for (const VqsRun& r : result.records) per.push_back(r.per_good_probabilities[j]);
            result.stats.emplace_back("good_probability_" + std::to_string(goods[j]),
                                      percentiles(std::move(per)));
        }
    }
    return result;
}

inline std::string records_to_jsonl(const std::vector<VqsRun>& records) {
    std::string out;
    for (const VqsRun& r : records) {
        nlohmann::ordered_json j;
        j["seed"] = r.seed;
        j["iterations"] = r.iterations_used;
        j["termination_reason"] = termination_reason_name(r.termination_reason);
        j["objective_trace"] = r.objective_trace;
        j["final_good_probability"] = r.final_good_probability;
        j["per_good_probabilities"] = r.per_good_probabilities;
        out += j.dump();
        out += '\n';
    }
    return out;
}

inline std::string summary_to_csv(const std::vector<std::pair<std::string, SummaryStats>>& stats) {
    std::string out = "metric,p0,p25,p50,p75,p100,n_outliers\n";
    for (const auto& [name, s] : stats) {
        out += name;
        for (double v : {s.p0, s.p25, s.p50, s.p75, s.p100}) {
            out += ',';
            out += format_double(v);
        }
        out += ',';
        out += std::to_string(s.outliers.size());
        out += '\n';
    }
    return out;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

inline void write_suite_outputs(const std::filesystem::path& dir, const SuiteResult& result) {
    std::filesystem::create_directories(dir);
    write_text_file(dir / "records.jsonl", records_to_jsonl(result.records));
    write_text_file(dir / "summary.csv", summary_to_csv(result.stats));
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = s.find(',', start);
        parts.push_back(trim(s.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return parts;
}

template <typename T>
inline T parse_number(const std::string& raw, const char* what) {
    const std::string s = trim(raw);
    T value{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("config: bad ") + what + " '" + raw + "'");
    return value;
}

inline double parse_real(const std::string& raw, const char* what) {
    const std::string s = trim(raw);
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("config: bad ") + what + " '" + raw + "'");
    }
}

inline std::vector<std::uint32_t> parse_index_list(const std::string& raw) {
    std::vector<std::uint32_t> out;
    for (const std::string& part : split_csv(raw))
        out.push_back(parse_number<std::uint32_t>(part, "index"));
    return out;
}

inline std::vector<double> parse_real_list(const std::string& raw) {
    std::vector<double> out;
    for (const std::string& part : split_csv(raw)) out.push_back(parse_real(part, "ratio"));
    return out;
}

} // namespace detail

inline Family parse_family(const std::string& s) {
    if (s == "type1") return Family::TypeI;
    if (s == "type2") return Family::TypeII;
    throw std::invalid_argument("config: ansatz must be type1 or type2");
}

inline ExpectationMethod parse_method(const std::string& s) {
    if (s == "direct") return ExpectationMethod::Direct;
    if (s == "hadamard") return ExpectationMethod::HadamardTest;
    throw std::invalid_argument("config: method must be direct or hadamard");
}

// Flat `key = value` config text; # starts a comment. Keys mirror the CLI
// flags: n, layers, ansatz, runs, seed, good, ratio, lr, out, method,
// max_iterations, patience, small_change_threshold, allow_large.
inline void apply_config_entry(ExperimentConfig& cfg, std::string& out_dir, bool& allow_large,
                               const std::string& key, const std::string& value) {
    if (key == "n") cfg.n = detail::parse_number<std::uint32_t>(value, "n");
    else if (key == "layers") cfg.layers = detail::parse_number<std::uint32_t>(value, "layers");
    else if (key == "ansatz") cfg.ansatz_family = parse_family(detail::trim(value));
    else if (key == "runs") cfg.runs = detail::parse_number<std::uint32_t>(value, "runs");
    else if (key == "seed") cfg.seed_base = detail::parse_number<std::uint64_t>(value, "seed");
    else if (key == "good") cfg.good_indices = detail::parse_index_list(value);
    else if (key == "ratio") cfg.ratio = detail::parse_real_list(value);
    else if (key == "lr") cfg.adam.learning_rate = detail::parse_real(value, "lr");
    else if (key == "out") out_dir = detail::trim(value);
    else if (key == "method") cfg.expectation_method = parse_method(detail::trim(value));
    else if (key == "max_iterations")
        cfg.termination.max_iterations = detail::parse_number<int>(value, "max_iterations");
    else if (key == "patience")
        cfg.termination.patience = detail::parse_number<int>(value, "patience");
    else if (key == "small_change_threshold")
        cfg.termination.small_change_threshold = detail::parse_real(value, "threshold");
    else if (key == "allow_large") {
        const std::string v = detail::trim(value);
        if (v == "true" || v == "1") allow_large = true;
        else if (v == "false" || v == "0") allow_large = false;
        else throw std::invalid_argument("config: allow_large must be true or false");
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

inline void load_config_file(const std::filesystem::path& path, ExperimentConfig& cfg,
                             std::string& out_dir, bool& allow_large) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot open " + path.string());
    std::string line;
    while (std::getline(f, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string entry = detail::trim(line);
        if (entry.empty()) continue;
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value', got '" + entry + "'");
        apply_config_entry(cfg, out_dir, allow_large, detail::trim(entry.substr(0, eq)),
                           detail::trim(entry.substr(eq + 1)));
    }
}

} // namespace vqs

#include "harness_verify.hpp"

namespace vqs {

namespace detail {

struct CommonCliArgs {
    std::string config_path, ansatz, method, out_dir, good_csv, ratio_csv;
    std::uint32_t n = 0, layers = 0, runs = 0;
    std::uint64_t seed = 0;
    double lr = 0.0;
    bool allow_large = false;
    CLI::Option* config_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* layers_opt = nullptr;
    CLI::Option* ansatz_opt = nullptr;
    CLI::Option* runs_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* good_opt = nullptr;
    CLI::Option* ratio_opt = nullptr;
    CLI::Option* lr_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* method_opt = nullptr;

    void attach(CLI::App* sub, bool with_runs) {
        config_opt = sub->add_option("--config", config_path, "flat key = value config file");
        n_opt = sub->add_option("--n", n, "input qubits");
        layers_opt = sub->add_option("--layers", layers, "ansatz layers");
        ansatz_opt = sub->add_option("--ansatz", ansatz, "ansatz family: type1 or type2");
        if (with_runs) runs_opt = sub->add_option("--runs", runs, "number of seeded runs");
        seed_opt = sub->add_option("--seed", seed, "seed (suite: base of seed range)");
        good_opt = sub->add_option("--good", good_csv, "good basis indices, comma separated");
        ratio_opt = sub->add_option("--ratio", ratio_csv, "good probability ratios, sum 1");
        lr_opt = sub->add_option("--lr", lr, "ADAM learning rate");
        out_opt = sub->add_option("--out", out_dir, "output directory");
        method_opt = sub->add_option("--method", method, "expectation method: direct or hadamard");
        sub->add_flag("--allow-large", allow_large, "lift the desk-scale n ceiling");
    }

    // config file first, explicit flags on top
    void resolve(ExperimentConfig& cfg, std::string& out, bool& large) const {
        if (config_opt->count()) load_config_file(config_path, cfg, out, large);
        if (n_opt->count()) cfg.n = n;
        if (layers_opt->count()) cfg.layers = layers;
        if (ansatz_opt->count()) cfg.ansatz_family = parse_family(ansatz);
        if (runs_opt && runs_opt->count()) cfg.runs = runs;
        if (seed_opt->count()) cfg.seed_base = seed;
        if (good_opt->count()) cfg.good_indices = parse_index_list(good_csv);
        if (ratio_opt->count()) cfg.ratio = parse_real_list(ratio_csv);
        if (lr_opt->count()) cfg.adam.learning_rate = lr;
        if (out_opt->count()) out = out_dir;
        if (method_opt->count()) cfg.expectation_method = parse_method(method);
        if (allow_large) large = true;
    }
};

inline void print_memory_note(std::ostream& out, const ExperimentConfig& cfg) {
    const int vectors = cfg.expectation_method == ExpectationMethod::HadamardTest ? 6 : 4;
    const double mib = static_cast<double>(vectors) *
                       static_cast<double>(std::uint64_t{1} << (cfg.n + 1)) * 8.0 /
                       (1024.0 * 1024.0);
    out << "note: n=" << cfg.n << " needs about " << format_double(mib)
        << " MiB of statevector memory\n";
}

inline int cli_run(const ExperimentConfig& cfg, std::ostream& out) {
    const StateVector psi0 = build_initial_state(cfg);
    const OracleSpec oracle(cfg.n, cfg.resolved_goods());
    const AnsatzSpec ansatz(cfg.ansatz_family, cfg.layers, cfg.n + 1);
    const VqsRun r = run_vqs(psi0, oracle, ansatz, cfg.adam, cfg.termination, cfg.seed_base,
                             cfg.expectation_method);
    out << "seed " << r.seed << '\n';
    for (std::size_t i = 0; i < r.objective_trace.size(); ++i)
        out << (i + 1) << ' ' << format_double(r.objective_trace[i]) << '\n';
    out << "iterations " << r.iterations_used << '\n';
    out << "termination " << termination_reason_name(r.termination_reason) << '\n';
    out << "analytic_minimum " << format_double(analytic_minimum(psi0, oracle).f_min) << '\n';
    out << "final_good_probability " << format_double(r.final_good_probability) << '\n';
    out << "per_good";
    for (double p : r.per_good_probabilities) out << ' ' << format_double(p);
    out << '\n';
    return 0;
}

inline int cli_suite(const ExperimentConfig& cfg, const std::string& out_dir, std::ostream& out) {
    const SuiteResult result = run_suite(cfg);
    const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    write_suite_outputs(dir, result);
    out << summary_to_csv(result.stats);
    out << "wrote " << (dir / "records.jsonl").string() << " and "
        << (dir / "summary.csv").string() << '\n';
    return 0;
}

inline int cli_depth(const std::string& circuit, std::uint32_t n, std::uint32_t layers,
                     const std::string& family_name, const std::string& good_csv, bool decompose,
                     std::ostream& out) {
    if (n < 2) throw std::invalid_argument("depth: need n >= 2");
    const Family family = parse_family(family_name);
    std::vector<std::uint32_t> goods =
        good_csv.empty() ? std::vector<std::uint32_t>{static_cast<std::uint32_t>((1u << n) - 1)}
                         : parse_index_list(good_csv);
    const auto try_formula = [&](FormulaKind kind, const AnsatzSpec& spec) {
        std::optional<std::int64_t> v;
        try {
            v = formula_depth(kind, n, spec);
        } catch (const std::invalid_argument&) {
        }
        return v;
    };
    if (circuit == "mcx") {
        out << dump(decompose_mcx(n), formula_depth(FormulaKind::Oracle, n));
        return 0;
    }
    if (circuit == "oracle") {
        out << dump(build_oracle(OracleSpec(n, goods), decompose),
                    formula_depth(FormulaKind::Oracle, n));
        return 0;
    }
    const AnsatzSpec spec(family, layers, n + 1);
    if (circuit == "type1" || circuit == "type2") {
        if ((circuit == "type1") != (family == Family::TypeI))
            throw std::invalid_argument("depth: circuit name and --ansatz disagree");
        const FormulaKind kind =
            family == Family::TypeI ? FormulaKind::TypeILayer : FormulaKind::TypeIILayer;
        out << dump(build_ansatz(spec), try_formula(kind, spec));
        return 0;
    }
    if (circuit == "controlled") {
        out << dump(build_controlled_ansatz(spec),
                    try_formula(FormulaKind::ControlledTypeILayer, spec));
        return 0;
    }
    const OracleSpec oracle(n, goods);
    if (circuit == "fig1a") {
        out << dump(build_fig1a(oracle, spec, decompose), try_formula(FormulaKind::Fig1A, spec));
        return 0;
    }
    if (circuit == "fig1b") {
        out << dump(build_fig1b(oracle, spec, decompose), try_formula(FormulaKind::Fig1B, spec));
        return 0;
    }
    if (circuit == "fig1c") {
        out << dump(build_fig1c(oracle, spec, decompose), try_formula(FormulaKind::Fig1C, spec));
        return 0;
    }
    throw std::invalid_argument(
        "depth: unknown circuit '" + circuit +
        "' (expected type1, type2, controlled, oracle, mcx, fig1a, fig1b, fig1c)");
}

} // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"variational quantum search toolkit"};
    app.require_subcommand(1);

    detail::CommonCliArgs run_args, suite_args;
    CLI::App* run_cmd = app.add_subcommand("run", "one optimization run, prints the trace");
    run_args.attach(run_cmd, false);
    CLI::App* suite_cmd =
        app.add_subcommand("suite", "seeded run suite, writes records.jsonl and summary.csv");
    suite_args.attach(suite_cmd, true);

    std::string table_out;
    CLI::App* table_cmd =
        app.add_subcommand("grover-table", "benchmark depth table against Grover search");
    CLI::Option* table_out_opt =
        table_cmd->add_option("--out", table_out, "also write grover_table.csv here");

    std::string depth_circuit, depth_ansatz = "type1", depth_good;
    std::uint32_t depth_n = 2, depth_layers = 3;
    bool depth_decompose = false;
    CLI::App* depth_cmd =
        app.add_subcommand("depth", "gate dump plus structural and closed-form depth");
    depth_cmd->add_option("--circuit", depth_circuit,
                          "type1, type2, controlled, oracle, mcx, fig1a, fig1b, fig1c")
        ->required();
    depth_cmd->add_option("--n", depth_n, "input qubits");
    depth_cmd->add_option("--layers", depth_layers, "ansatz layers");
    depth_cmd->add_option("--ansatz", depth_ansatz, "ansatz family: type1 or type2");
    depth_cmd->add_option("--good", depth_good, "good basis indices, comma separated");
    depth_cmd->add_flag("--decompose", depth_decompose, "decompose multi-controlled gates");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the cross-check suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        if (table_cmd->parsed()) {
            const std::string csv = grover_table_csv();
            out << csv;
            if (table_out_opt->count()) {
                std::filesystem::create_directories(table_out);
                write_text_file(std::filesystem::path(table_out) / "grover_table.csv", csv);
            }
            return 0;
        }
        if (verify_cmd->parsed()) return run_verification(out) ? 0 : 2;
        if (depth_cmd->parsed())
            return detail::cli_depth(depth_circuit, depth_n, depth_layers, depth_ansatz,
                                     depth_good, depth_decompose, out);

        ExperimentConfig cfg;
        std::string out_dir;
        bool allow_large = false;
        if (run_cmd->parsed()) {
            run_args.resolve(cfg, out_dir, allow_large);
            cfg.runs = 1;
            cfg.validate();
            if (cfg.n > 20 && !allow_large)
                throw std::invalid_argument("run: n > 20 needs --allow-large");
            if (cfg.n > 20) detail::print_memory_note(out, cfg);
            return detail::cli_run(cfg, out);
        }
        suite_args.resolve(cfg, out_dir, allow_large);
        cfg.validate();
        if (cfg.n > 14 && !allow_large)
            throw std::invalid_argument("suite: n > 14 needs --allow-large");
        if (cfg.n > 14) detail::print_memory_note(out, cfg);
        return detail::cli_suite(cfg, out_dir, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace vqs
