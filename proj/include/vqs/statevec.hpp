#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vqs {

// Real-amplitude statevector over 2^q basis states.
//
// Index convention: bit q-1 (the most significant bit) is the top wire of a
// circuit diagram, bit 0 the bottom wire. All supported gates have real
// matrices, so one double per basis state is enough.
class StateVector {
public:
    explicit StateVector(std::uint32_t num_qubits)
        : num_qubits_(num_qubits), amps_(checked_dimension(num_qubits), 0.0) {
        amps_[0] = 1.0;
    }

    static StateVector basis(std::uint32_t num_qubits, std::uint64_t basis_index) {
        StateVector s(num_qubits);
        if (basis_index >= s.size())
            throw std::out_of_range("basis: index out of range");
        s.amps_[0] = 0.0;
        s.amps_[basis_index] = 1.0;
        return s;
    }

    static StateVector uniform(std::uint32_t num_qubits) {
        StateVector s(num_qubits);
        const double a = 1.0 / std::sqrt(static_cast<double>(s.size()));
        std::fill(s.amps_.begin(), s.amps_.end(), a);
        return s;
    }

    static StateVector from_amplitudes(std::vector<double> values) {
        const std::size_t n = values.size();
        if (n == 0 || (n & (n - 1)) != 0)
            throw std::invalid_argument("from_amplitudes: length must be a power of two");
        double norm = 0.0;
        for (double v : values) norm += v * v;
        if (std::abs(norm - 1.0) > 1e-9)
            throw std::invalid_argument("from_amplitudes: squared amplitudes sum to " +
                                        std::to_string(norm) + ", not 1");
        StateVector s(0);
        s.num_qubits_ = bit_width(n) - 1;
        s.amps_ = std::move(values);
        return s;
    }

    std::uint32_t num_qubits() const { return num_qubits_; }
    std::size_t size() const { return amps_.size(); }
    double operator[](std::size_t i) const { return amps_[i]; }
    double& operator[](std::size_t i) { return amps_[i]; }
    const std::vector<double>& amplitudes() const { return amps_; }
    std::vector<double>& amplitudes() { return amps_; }

    double norm_sq() const {
        double s = 0.0;
        for (double a : amps_) s += a * a;
        return s;
    }

    // --- gate kernels (in place) ---

    // Pairwise [c, -s; s, c] on one qubit; the workhorse behind Ry and H.
    void apply_rotation(std::uint32_t qubit, double c, double s) {
        check_qubit(qubit);
        const std::uint64_t step = std::uint64_t{1} << qubit;
        const std::uint64_t dim = amps_.size();
        for (std::uint64_t base = 0; base < dim; base += step << 1) {
            for (std::uint64_t i = base; i < base + step; ++i) {
                const double a0 = amps_[i];
                const double a1 = amps_[i + step];
                amps_[i] = c * a0 - s * a1;
                amps_[i + step] = s * a0 + c * a1;
            }
        }
    }

    // Ry(angle) = [cos(angle/2), -sin(angle/2); sin(angle/2), cos(angle/2)]
    void apply_ry(std::uint32_t qubit, double angle) {
        apply_rotation(qubit, std::cos(angle / 2), std::sin(angle / 2));
    }

    void apply_h(std::uint32_t qubit) {
        check_qubit(qubit);
        static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        const std::uint64_t step = std::uint64_t{1} << qubit;
        const std::uint64_t dim = amps_.size();
        for (std::uint64_t base = 0; base < dim; base += step << 1) {
            for (std::uint64_t i = base; i < base + step; ++i) {
                const double a0 = amps_[i];
                const double a1 = amps_[i + step];
                amps_[i] = (a0 + a1) * inv_sqrt2;
                amps_[i + step] = (a0 - a1) * inv_sqrt2;
            }
        }
    }

    void apply_x(std::uint32_t qubit) {
        check_qubit(qubit);
        const std::uint64_t step = std::uint64_t{1} << qubit;
        const std::uint64_t dim = amps_.size();
        for (std::uint64_t base = 0; base < dim; base += step << 1)
            for (std::uint64_t i = base; i < base + step; ++i)
                std::swap(amps_[i], amps_[i + step]);
    }

    void apply_z(std::uint32_t qubit) {
        check_qubit(qubit);
        const std::uint64_t step = std::uint64_t{1} << qubit;
        const std::uint64_t dim = amps_.size();
        for (std::uint64_t base = 0; base < dim; base += step << 1)
            for (std::uint64_t i = base + step; i < base + (step << 1); ++i)
                amps_[i] = -amps_[i];
    }

    void apply_cnot(std::uint32_t control, std::uint32_t target) {
        check_distinct(control, target);
        const std::uint64_t cmask = std::uint64_t{1} << control;
        const std::uint64_t step = std::uint64_t{1} << target;
        const std::uint64_t dim = amps_.size();
        for (std::uint64_t base = 0; base < dim; base += step << 1)
            for (std::uint64_t i = base; i < base + step; ++i)
                if (i & cmask) std::swap(amps_[i], amps_[i + step]);
    }

    void apply_toffoli(std::uint32_t c1, std::uint32_t c2, std::uint32_t target) {
        check_distinct(c1, c2);
        check_distinct(c1, target);
        check_distinct(c2, target);
        const std::uint64_t cmask = (std::uint64_t{1} << c1) | (std::uint64_t{1} << c2);
        const std::uint64_t step = std::uint64_t{1} << target;
        const std::uint64_t dim = amps_.size();
        for (std::uint64_t base = 0; base < dim; base += step << 1)
            for (std::uint64_t i = base; i < base + step; ++i)
                if ((i & cmask) == cmask) std::swap(amps_[i], amps_[i + step]);
    }

    // Controlled [c, -s; s, c] on the target where the control bit is 1.
    void apply_controlled_rotation(std::uint32_t control, std::uint32_t target,
                                   double c, double s) {
        check_distinct(control, target);
        const std::uint64_t cmask = std::uint64_t{1} << control;
        const std::uint64_t step = std::uint64_t{1} << target;
        const std::uint64_t dim = amps_.size();
        for (std::uint64_t base = 0; base < dim; base += step << 1) {
            for (std::uint64_t i = base; i < base + step; ++i) {
                if (!(i & cmask)) continue;
                const double a0 = amps_[i];
                const double a1 = amps_[i + step];
                amps_[i] = c * a0 - s * a1;
                amps_[i + step] = s * a0 + c * a1;
            }
        }
    }

    void apply_cry(std::uint32_t control, std::uint32_t target, double angle) {
        apply_controlled_rotation(control, target, std::cos(angle / 2), std::sin(angle / 2));
    }

    void apply_cz(std::uint32_t a, std::uint32_t b) {
        check_distinct(a, b);
        const std::uint64_t mask = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
        for (std::uint64_t i = 0; i < amps_.size(); ++i)
            if ((i & mask) == mask) amps_[i] = -amps_[i];
    }

    void apply_mcx(const std::vector<std::uint32_t>& controls, std::uint32_t target) {
        std::uint64_t cmask = 0;
        for (std::uint32_t c : controls) {
            check_distinct(c, target);
            if (cmask & (std::uint64_t{1} << c))
                throw std::invalid_argument("apply_mcx: duplicate control");
            cmask |= std::uint64_t{1} << c;
        }
        const std::uint64_t step = std::uint64_t{1} << target;
        const std::uint64_t dim = amps_.size();
        for (std::uint64_t base = 0; base < dim; base += step << 1)
            for (std::uint64_t i = base; i < base + step; ++i)
                if ((i & cmask) == cmask) std::swap(amps_[i], amps_[i + step]);
    }

private:
    static std::size_t checked_dimension(std::uint32_t num_qubits) {
        if (num_qubits > 30)
            throw std::invalid_argument("StateVector: qubit count too large");
        return std::size_t{1} << num_qubits;
    }

    static std::uint32_t bit_width(std::size_t v) {
        std::uint32_t w = 0;
        while (v) { ++w; v >>= 1; }
        return w;
    }

    void check_qubit(std::uint32_t q) const {
        if (q >= num_qubits_)
            throw std::out_of_range("qubit index " + std::to_string(q) + " out of range");
    }

    void check_distinct(std::uint32_t a, std::uint32_t b) const {
        check_qubit(a);
        check_qubit(b);
        if (a == b) throw std::invalid_argument("gate wires must be distinct");
    }

    std::uint32_t num_qubits_;
    std::vector<double> amps_;
};

inline double inner(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("inner: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double probability_over(const StateVector& state,
                               const std::vector<std::uint64_t>& indices) {
    double p = 0.0;
    for (std::uint64_t i : indices) {
        if (i >= state.size())
            throw std::out_of_range("probability_over: index out of range");
        p += state[i] * state[i];
    }
    return p;
}

} // namespace vqs
