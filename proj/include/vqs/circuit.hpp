#pragma once

#include "statevec.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vqs {

// Gate wires are qubit (bit) indices: bit q-1 is the top wire of the diagram.
// A Barrier has no wires of its own; it spans the full register and only
// synchronizes depth accounting (the simulator ignores it).
//
// Parameterized Ry/CRy gates rotate by the FULL parameter value: a slot value
// p applies [[cos p, -sin p],[sin p, cos p]]. With each parameter feeding
// exactly one gate this makes every objective 2pi-periodic per parameter,
// which the +-pi/2 parameter-shift gradient requires to be exact.
enum class GateKind { Ry, H, X, Z, CNOT, Toffoli, CRy, MCX, CZ, Barrier };

struct Gate {
    GateKind kind;
    std::vector<std::uint32_t> wires; // controls first, target last
    int param_slot = -1;
    double fixed_angle = 0.0;

    bool parameterized() const { return param_slot >= 0; }
};

inline const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::Ry: return "ry";
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Z: return "z";
        case GateKind::CNOT: return "cnot";
        case GateKind::Toffoli: return "toffoli";
        case GateKind::CRy: return "cry";
        case GateKind::MCX: return "mcx";
        case GateKind::CZ: return "cz";
        case GateKind::Barrier: return "barrier";
    }
    return "?";
}

struct Circuit {
    std::uint32_t num_qubits = 0;
    std::uint32_t num_params = 0;
    std::vector<Gate> gates;

    void add(Gate g) {
        static const std::size_t expected[] = {1, 1, 1, 1, 2, 3, 2, 0, 2, 0};
        const std::size_t want = expected[static_cast<int>(g.kind)];
        if (g.kind == GateKind::MCX) {
            if (g.wires.size() < 2)
                throw std::invalid_argument("mcx needs at least one control and a target");
        } else if (g.kind != GateKind::Barrier && g.wires.size() != want) {
            throw std::invalid_argument(std::string(gate_name(g.kind)) + ": wrong wire count");
        }
        std::set<std::uint32_t> seen;
        for (std::uint32_t w : g.wires) {
            if (w >= num_qubits)
                throw std::out_of_range("gate wire out of range");
            if (!seen.insert(w).second)
                throw std::invalid_argument("gate wires must be distinct");
        }
        gates.push_back(std::move(g));
    }

    void validate() const {
        for (const Gate& g : gates)
            if (g.parameterized() && static_cast<std::uint32_t>(g.param_slot) >= num_params)
                throw std::logic_error("param slot out of range");
    }

    void run(StateVector& state, const std::vector<double>& theta = {}) const;
};

inline double gate_angle(const Gate& g, const std::vector<double>& theta) {
    if (!g.parameterized()) return g.fixed_angle;
    if (static_cast<std::size_t>(g.param_slot) >= theta.size())
        throw std::invalid_argument("theta shorter than referenced param slot");
    return theta[g.param_slot];
}

inline void apply_gate(StateVector& s, const Gate& g, const std::vector<double>& theta) {
    switch (g.kind) {
        case GateKind::Ry: {
            const double p = gate_angle(g, theta);
            s.apply_rotation(g.wires[0], std::cos(p), std::sin(p));
            break;
        }
        case GateKind::H: s.apply_h(g.wires[0]); break;
        case GateKind::X: s.apply_x(g.wires[0]); break;
        case GateKind::Z: s.apply_z(g.wires[0]); break;
        case GateKind::CNOT: s.apply_cnot(g.wires[0], g.wires[1]); break;
        case GateKind::Toffoli: s.apply_toffoli(g.wires[0], g.wires[1], g.wires[2]); break;
        case GateKind::CRy: {
            const double p = gate_angle(g, theta);
            s.apply_controlled_rotation(g.wires[0], g.wires[1], std::cos(p), std::sin(p));
            break;
        }
        case GateKind::MCX: {
            std::vector<std::uint32_t> controls(g.wires.begin(), g.wires.end() - 1);
            s.apply_mcx(controls, g.wires.back());
            break;
        }
        case GateKind::CZ: s.apply_cz(g.wires[0], g.wires[1]); break;
        case GateKind::Barrier: break;
    }
}

// Every gate here is real orthogonal, so the inverse is the transpose:
// rotations invert by negating the angle, everything else is self-inverse.
inline void apply_gate_inverse(StateVector& s, const Gate& g, const std::vector<double>& theta) {
    switch (g.kind) {
        case GateKind::Ry: {
            const double p = gate_angle(g, theta);
            s.apply_rotation(g.wires[0], std::cos(p), -std::sin(p));
            break;
        }
        case GateKind::CRy: {
            const double p = gate_angle(g, theta);
            s.apply_controlled_rotation(g.wires[0], g.wires[1], std::cos(p), -std::sin(p));
            break;
        }
        default: apply_gate(s, g, theta); break;
    }
}

inline void Circuit::run(StateVector& state, const std::vector<double>& theta) const {
    if (state.num_qubits() != num_qubits)
        throw std::invalid_argument("circuit/state qubit count mismatch");
    if (theta.size() < num_params)
        throw std::invalid_argument("theta shorter than circuit num_params");
    for (const Gate& g : gates) apply_gate(state, g, theta);
}

enum class Family { TypeI, TypeII };

struct AnsatzSpec {
    Family family;
    std::uint32_t layers;
    std::uint32_t wires; // n + 1: input register plus label qubit

    AnsatzSpec(Family f, std::uint32_t l, std::uint32_t w) : family(f), layers(l), wires(w) {
        if (w < 2) throw std::invalid_argument("ansatz needs at least 2 wires");
        if (l < 1) throw std::invalid_argument("ansatz needs at least 1 layer");
    }

    std::uint32_t num_params() const {
        return family == Family::TypeI ? layers * wires : layers * 3 * wires;
    }
};

// The good-index set over n input qubits; this set is the search predicate.
struct OracleSpec {
    std::uint32_t n;
    std::vector<std::uint32_t> good_indices; // sorted, unique

    OracleSpec(std::uint32_t n_, std::vector<std::uint32_t> goods) : n(n_) {
        if (n < 1 || n > 30) throw std::invalid_argument("oracle: bad qubit count");
        if (goods.empty()) throw std::invalid_argument("oracle: good set must be nonempty");
        std::sort(goods.begin(), goods.end());
        goods.erase(std::unique(goods.begin(), goods.end()), goods.end());
        const std::uint64_t N = std::uint64_t{1} << n;
        if (goods.back() >= N) throw std::out_of_range("oracle: good index out of range");
        if (goods.size() >= N)
            throw std::invalid_argument("oracle: good set must be a strict subset");
        good_indices = std::move(goods);
    }
};

namespace detail {

// top-down wire w of a W-wire register lives at bit W-1-w
inline std::uint32_t wire_bit(std::uint32_t W, std::uint32_t w) { return W - 1 - w; }

inline void emit_ry_column(Circuit& c, std::uint32_t W, std::uint32_t& slot) {
    for (std::uint32_t w = 0; w < W; ++w)
        c.add({GateKind::Ry, {wire_bit(W, w)}, static_cast<int>(slot++)});
}

} // namespace detail

// One layer: an Ry column, then a CNOT chain down adjacent wire pairs.
inline Circuit build_type1_ansatz(const AnsatzSpec& spec) {
    if (spec.family != Family::TypeI)
        throw std::invalid_argument("build_type1_ansatz: family mismatch");
    const std::uint32_t W = spec.wires;
    Circuit c;
    c.num_qubits = W;
    c.num_params = spec.num_params();
    std::uint32_t slot = 0;
    for (std::uint32_t layer = 0; layer < spec.layers; ++layer) {
        if (layer > 0) c.add({GateKind::Barrier, {}});
        detail::emit_ry_column(c, W, slot);
        for (std::uint32_t w = 0; w + 1 < W; ++w)
            c.add({GateKind::CNOT, {detail::wire_bit(W, w), detail::wire_bit(W, w + 1)}});
    }
    c.validate();
    return c;
}

// One layer, five columns: Ry / CNOT on even pairs / Ry / CNOT on odd pairs / Ry.
inline Circuit build_type2_ansatz(const AnsatzSpec& spec) {
    if (spec.family != Family::TypeII)
        throw std::invalid_argument("build_type2_ansatz: family mismatch");
    const std::uint32_t W = spec.wires;
    Circuit c;
    c.num_qubits = W;
    c.num_params = spec.num_params();
    std::uint32_t slot = 0;
    for (std::uint32_t layer = 0; layer < spec.layers; ++layer) {
        if (layer > 0) c.add({GateKind::Barrier, {}});
        detail::emit_ry_column(c, W, slot);
        for (std::uint32_t w = 0; w + 1 < W; w += 2)
            c.add({GateKind::CNOT, {detail::wire_bit(W, w), detail::wire_bit(W, w + 1)}});
        detail::emit_ry_column(c, W, slot);
        for (std::uint32_t w = 1; w + 1 < W; w += 2)
            c.add({GateKind::CNOT, {detail::wire_bit(W, w), detail::wire_bit(W, w + 1)}});
        detail::emit_ry_column(c, W, slot);
    }
    c.validate();
    return c;
}

inline Circuit build_ansatz(const AnsatzSpec& spec) {
    return spec.family == Family::TypeI ? build_type1_ansatz(spec) : build_type2_ansatz(spec);
}

// Adds a control wire on top (new most significant bit). Every Ry becomes a
// CRy and every CNOT a Toffoli; sharing the one control wire serializes the
// whole layer, so a controlled type-I layer runs at depth 2n+1.
inline Circuit build_controlled_ansatz(const AnsatzSpec& spec) {
    const Circuit base = build_ansatz(spec);
    const std::uint32_t anc = spec.wires; // new top wire
    Circuit c;
    c.num_qubits = base.num_qubits + 1;
    c.num_params = base.num_params;
    for (const Gate& g : base.gates) {
        switch (g.kind) {
            case GateKind::Ry:
                c.add({GateKind::CRy, {anc, g.wires[0]}, g.param_slot, g.fixed_angle});
                break;
            case GateKind::CNOT:
                c.add({GateKind::Toffoli, {anc, g.wires[0], g.wires[1]}});
                break;
            case GateKind::Barrier:
                c.add(g);
                break;
            default:
                throw std::logic_error("unexpected gate in ansatz");
        }
    }
    c.validate();
    return c;
}

namespace detail {

// V-shaped AND ladder: compute partial products into ancillas, flip the
// target with one CNOT, then uncompute. controls.size() >= 2; ancillas
// holds controls.size()-1 work wires that start and end in |0>.
inline void emit_mcx_ladder(Circuit& c, const std::vector<std::uint32_t>& controls,
                            std::uint32_t target, const std::vector<std::uint32_t>& ancillas) {
    const std::size_t n = controls.size();
    std::vector<Gate> compute;
    compute.push_back({GateKind::Toffoli, {controls[0], controls[1], ancillas[0]}});
    for (std::size_t i = 2; i < n; ++i)
        compute.push_back({GateKind::Toffoli, {ancillas[i - 2], controls[i], ancillas[i - 1]}});
    for (const Gate& g : compute) c.add(g);
    c.add({GateKind::CNOT, {ancillas[n - 2], target}});
    for (auto it = compute.rbegin(); it != compute.rend(); ++it) c.add(*it);
}

} // namespace detail

// C^n(X) over n controls, one target, n-1 work ancillas:
// 2n-2 Toffolis + 1 CNOT at structural depth 2n-1.
// Wire order top-down: controls, target, ancillas.
inline Circuit decompose_mcx(std::uint32_t n) {
    if (n < 2) throw std::invalid_argument("decompose_mcx: need n >= 2");
    const std::uint32_t W = 2 * n;
    Circuit c;
    c.num_qubits = W;
    std::vector<std::uint32_t> controls, ancillas;
    for (std::uint32_t i = 0; i < n; ++i) controls.push_back(detail::wire_bit(W, i));
    const std::uint32_t target = detail::wire_bit(W, n);
    for (std::uint32_t i = n + 1; i < W; ++i) ancillas.push_back(detail::wire_bit(W, i));
    detail::emit_mcx_ladder(c, controls, target, ancillas);
    return c;
}

namespace detail {

// Oracle stage over label (bit n) + inputs (bits n-1..0). With decompose set,
// each multi-controlled X is emitted as the AND ladder over n-1 work wires
// starting at bit anc_base (extra top wires, so the label/input index layout
// of the low n+1 bits is untouched).
inline void emit_oracle(Circuit& c, const OracleSpec& o, bool decompose,
                        std::uint32_t anc_base) {
    const std::uint32_t n = o.n;
    std::vector<std::uint32_t> controls;
    for (std::uint32_t b = n; b-- > 0;) controls.push_back(b); // top-down inputs
    std::vector<std::uint32_t> ancillas;
    if (decompose && n >= 2)
        for (std::uint32_t j = 0; j < n - 1; ++j) ancillas.push_back(anc_base + j);
    for (std::uint32_t g : o.good_indices) {
        std::vector<std::uint32_t> flips;
        for (std::uint32_t b = 0; b < n; ++b)
            if (!((g >> b) & 1u)) flips.push_back(b);
        for (std::uint32_t b : flips) c.add({GateKind::X, {b}});
        if (decompose && n >= 2)
            emit_mcx_ladder(c, controls, n, ancillas);
        else {
            std::vector<std::uint32_t> wires = controls;
            wires.push_back(n);
            c.add({GateKind::MCX, wires});
        }
        for (std::uint32_t b : flips) c.add({GateKind::X, {b}});
    }
}

} // namespace detail

// Oracle circuit on n+1 wires (label on top): X-conjugated multi-controlled X
// per good index, flipping the label exactly for good inputs.
inline Circuit build_oracle(const OracleSpec& spec, bool decompose = false) {
    Circuit c;
    c.num_qubits = (decompose && spec.n >= 2) ? 2 * spec.n : spec.n + 1;
    detail::emit_oracle(c, spec, decompose, spec.n + 1);
    return c;
}

// Index-permutation fast path for the oracle: swap amplitude of good x with
// the (zero) amplitude at 2^n + x.
inline void apply_oracle_semantic(StateVector& state, const OracleSpec& spec) {
    if (state.num_qubits() != spec.n + 1)
        throw std::invalid_argument("apply_oracle_semantic: state must have n+1 qubits");
    const std::uint64_t N = std::uint64_t{1} << spec.n;
    for (std::uint64_t i = N; i < 2 * N; ++i)
        if (std::abs(state[i]) > 1e-12)
            throw std::invalid_argument("apply_oracle_semantic: label qubit not |0>");
    std::vector<double>& a = state.amplitudes();
    for (std::uint32_t g : spec.good_indices) std::swap(a[g], a[N + g]);
}

// Measurement and search composites. The prepared |0, psi0> is injected by
// the caller; these circuits start at the oracle stage.
//   A: oracle, H(ancilla) alongside it, controlled U(theta), H(ancilla)
//   B: A plus a CZ from the ancilla to the label before the final H
//   C: oracle, then U(theta) on label+inputs
inline Circuit build_fig1a(const OracleSpec& oracle, const AnsatzSpec& ansatz,
                           bool decompose_oracle = false, bool with_cz = false) {
    if (ansatz.wires != oracle.n + 1)
        throw std::invalid_argument("ansatz must span label + input wires");
    const std::uint32_t n = oracle.n;
    const std::uint32_t anc = n + 1;
    Circuit c;
    c.num_qubits = (decompose_oracle && n >= 2) ? 2 * n + 1 : n + 2;
    c.num_params = ansatz.num_params();
    detail::emit_oracle(c, oracle, decompose_oracle, n + 2); // work wires above the ancilla
    c.add({GateKind::H, {anc}});
    c.add({GateKind::Barrier, {}});
    const Circuit cu = build_controlled_ansatz(ansatz); // its control wire is also bit n+1
    for (const Gate& g : cu.gates) c.add(g);
    if (with_cz) c.add({GateKind::CZ, {anc, n}});
    c.add({GateKind::H, {anc}});
    c.validate();
    return c;
}

inline Circuit build_fig1b(const OracleSpec& oracle, const AnsatzSpec& ansatz,
                           bool decompose_oracle = false) {
    return build_fig1a(oracle, ansatz, decompose_oracle, true);
}

inline Circuit build_fig1c(const OracleSpec& oracle, const AnsatzSpec& ansatz,
                           bool decompose_oracle = false) {
    if (ansatz.wires != oracle.n + 1)
        throw std::invalid_argument("ansatz must span label + input wires");
    Circuit c;
    c.num_qubits = (decompose_oracle && oracle.n >= 2) ? 2 * oracle.n : oracle.n + 1;
    c.num_params = ansatz.num_params();
    detail::emit_oracle(c, oracle, decompose_oracle, oracle.n + 1);
    c.add({GateKind::Barrier, {}});
    const Circuit u = build_ansatz(ansatz);
    for (const Gate& g : u.gates) c.add(g);
    c.validate();
    return c;
}

// Greedy ASAP layering: a gate starts one past the latest finish among its
// wires; a barrier synchronizes every wire at zero cost.
inline std::int64_t structural_depth(const Circuit& c) {
    std::vector<std::int64_t> finish(c.num_qubits, 0);
    for (const Gate& g : c.gates) {
        if (g.kind == GateKind::Barrier) {
            std::int64_t m = 0;
            for (std::int64_t f : finish) m = std::max(m, f);
            std::fill(finish.begin(), finish.end(), m);
            continue;
        }
        std::int64_t start = 0;
        for (std::uint32_t w : g.wires) start = std::max(start, finish[w]);
        for (std::uint32_t w : g.wires) finish[w] = start + 1;
    }
    std::int64_t d = 0;
    for (std::int64_t f : finish) d = std::max(d, f);
    return d;
}

enum class FormulaKind {
    TypeILayer,
    TypeIILayer,
    ControlledTypeILayer,
    Oracle,
    Fig1A,
    Fig1B,
    Fig1C,
    GroverIteration,
};

// Closed-form depth counts; n is the input-qubit count.
inline std::int64_t formula_depth(FormulaKind kind, std::uint32_t n) {
    switch (kind) {
        case FormulaKind::Oracle: return 2 * std::int64_t{n} - 1;
        case FormulaKind::GroverIteration: return 2 * std::int64_t{n} + 1;
        default: throw std::invalid_argument("formula_depth: this kind needs an ansatz");
    }
}

inline std::int64_t formula_depth(FormulaKind kind, std::uint32_t n, const AnsatzSpec& ansatz) {
    if (ansatz.wires != n + 1)
        throw std::invalid_argument("formula_depth: ansatz width must be n+1");
    const std::int64_t L = ansatz.layers;
    const std::int64_t nn = n;
    const bool type1_3 = ansatz.family == Family::TypeI && ansatz.layers == 3;
    switch (kind) {
        case FormulaKind::TypeILayer:
            if (ansatz.family != Family::TypeI) break;
            return L * (nn + 1);
        case FormulaKind::TypeIILayer:
            if (ansatz.family != Family::TypeII) break;
            return 5 * L;
        case FormulaKind::ControlledTypeILayer:
            if (ansatz.family != Family::TypeI) break;
            return L * (2 * nn + 1);
        case FormulaKind::Fig1A:
            if (!type1_3) break;
            return 8 * nn + 3;
        case FormulaKind::Fig1B:
            if (!type1_3) break;
            return 8 * nn + 4;
        case FormulaKind::Fig1C:
            if (!type1_3) break;
            return 5 * nn + 2;
        default:
            return formula_depth(kind, n);
    }
    throw std::invalid_argument("formula_depth: no closed form for this ansatz");
}

// Debug dump: one `gate wires [param_slot]` line per gate, then a depth
// report line.
inline std::string dump(const Circuit& c, std::optional<std::int64_t> formula = std::nullopt) {
    std::ostringstream out;
    for (const Gate& g : c.gates) {
        out << gate_name(g.kind);
        for (std::uint32_t w : g.wires) out << ' ' << w;
        if (g.parameterized()) out << " [" << g.param_slot << ']';
        out << '\n';
    }
    out << "structural=" << structural_depth(c) << " formula=";
    if (formula)
        out << *formula;
    else
        out << "n/a";
    out << '\n';
    return out.str();
}

} // namespace vqs
