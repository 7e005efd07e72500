#include "fgs/statevector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fgs {

namespace {

using cd = std::complex<double>;

const cd kOmega = std::polar(1.0, std::numbers::pi / 4);  // e^{i pi/4}
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Bit position (from the LSB of the amplitude index) of qubit q.
inline int bitpos(int width, int q) { return width - 1 - q; }

}  // namespace

uint64_t ket_index(const std::string& ket) {
    uint64_t idx = 0;
    for (char c : ket) {
        if (c != '0' && c != '1') throw std::invalid_argument("ket must be a bit string");
        idx = (idx << 1) | uint64_t(c - '0');
    }
    return idx;
}

std::string index_ket(uint64_t idx, int width) {
    std::string s(width, '0');
    for (int q = 0; q < width; ++q)
        if (idx >> bitpos(width, q) & 1) s[q] = '1';
    return s;
}

StateVector StateVector::basis(int width, const std::string& ket) {
    if (width > kMaxOracleQubits)
        throw std::invalid_argument("width " + std::to_string(width) + " exceeds oracle cap " +
                                    std::to_string(kMaxOracleQubits));
    if (static_cast<int>(ket.size()) != width)
        throw std::invalid_argument("ket length must equal width");
    StateVector sv;
    sv.width = width;
    sv.amps.assign(uint64_t(1) << width, cd{0.0, 0.0});
    sv.amps[ket_index(ket)] = 1.0;
    return sv;
}

double StateVector::norm() const {
    double s = 0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

void apply_gate(StateVector& sv, const QGate& g) {
    const int w = sv.width;
    const uint64_t dim = uint64_t(1) << w;
    auto& a = sv.amps;
    switch (g.kind) {
        case QKind::H: {
            uint64_t mask = uint64_t(1) << bitpos(w, g.target);
            for (uint64_t i = 0; i < dim; ++i) {
                if (i & mask) continue;
                cd lo = a[i], hi = a[i | mask];
                a[i] = (lo + hi) * kInvSqrt2;
                a[i | mask] = (lo - hi) * kInvSqrt2;
            }
            break;
        }
        case QKind::X: {
            uint64_t mask = uint64_t(1) << bitpos(w, g.target);
            for (uint64_t i = 0; i < dim; ++i)
                if (!(i & mask)) std::swap(a[i], a[i | mask]);
            break;
        }
        case QKind::Z:
        case QKind::S:
        case QKind::Sdg:
        case QKind::T:
        case QKind::Tdg: {
            cd phase;
            switch (g.kind) {
                case QKind::Z: phase = -1.0; break;
                case QKind::S: phase = cd{0.0, 1.0}; break;
                case QKind::Sdg: phase = cd{0.0, -1.0}; break;
                case QKind::T: phase = kOmega; break;
                default: phase = std::conj(kOmega); break;
            }
            uint64_t mask = uint64_t(1) << bitpos(w, g.target);
            for (uint64_t i = 0; i < dim; ++i)
                if (i & mask) a[i] *= phase;
            break;
        }
        case QKind::CZ: {
            uint64_t mask = (uint64_t(1) << bitpos(w, g.c1)) | (uint64_t(1) << bitpos(w, g.target));
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & mask) == mask) a[i] = -a[i];
            break;
        }
        case QKind::CNOT: {
            uint64_t cmask = uint64_t(1) << bitpos(w, g.c1);
            uint64_t tmask = uint64_t(1) << bitpos(w, g.target);
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & cmask) && !(i & tmask)) std::swap(a[i], a[i | tmask]);
            break;
        }
        case QKind::Toffoli: {
            uint64_t cmask =
                (uint64_t(1) << bitpos(w, g.c1)) | (uint64_t(1) << bitpos(w, g.c2));
            uint64_t tmask = uint64_t(1) << bitpos(w, g.target);
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & cmask) == cmask && !(i & tmask)) std::swap(a[i], a[i | tmask]);
            break;
        }
        case QKind::GToffoli: {
            uint64_t on = 0, care = 0;
            for (const auto& c : g.controls) {
                uint64_t m = uint64_t(1) << bitpos(w, c.bit);
                care |= m;
                if (c.positive) on |= m;
            }
            uint64_t tmask = uint64_t(1) << bitpos(w, g.target);
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & care) == on && !(i & tmask)) std::swap(a[i], a[i | tmask]);
            break;
        }
        case QKind::MCZ: {
            uint64_t on = 0, care = 0;
            for (const auto& c : g.controls) {
                uint64_t m = uint64_t(1) << bitpos(w, c.bit);
                care |= m;
                if (c.positive) on |= m;
            }
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & care) == on) a[i] = -a[i];
            break;
        }
    }
}

StateVector run(const QuantumCircuit& qc, const std::string& input) {
    qc.validate();
    StateVector sv = StateVector::basis(qc.width, input);
    for (const auto& g : qc.gates) apply_gate(sv, g);
    return sv;
}

StateVector run(const QuantumCircuit& qc) {
    return run(qc, std::string(qc.width, '0'));
}

std::complex<double> amplitude(const QuantumCircuit& qc, const std::string& a,
                               const std::string& b) {
    if (static_cast<int>(a.size()) != qc.width || static_cast<int>(b.size()) != qc.width)
        throw std::invalid_argument("basis string length must equal circuit width");
    StateVector sv = run(qc, b);
    return sv.amps[ket_index(a)];
}

double outcome_probability(const QuantumCircuit& qc, const std::string& input,
                           const MeasurementSpec& spec) {
    spec.validate(qc.width);
    StateVector sv = run(qc, input);
    uint64_t care = 0, on = 0;
    for (size_t i = 0; i < spec.measured_qubits.size(); ++i) {
        uint64_t m = uint64_t(1) << bitpos(qc.width, spec.measured_qubits[i]);
        care |= m;
        if (spec.accept_outcome[i] == '1') on |= m;
    }
    double p = 0;
    for (uint64_t i = 0; i < sv.amps.size(); ++i)
        if ((i & care) == on) p += std::norm(sv.amps[i]);
    return p;
}

double dqc1_average_accept(const QuantumCircuit& qc, int clean_qubit, char accept) {
    if (qc.width > kMaxDqc1Qubits)
        throw std::invalid_argument("width exceeds DQC1 averaging cap " +
                                    std::to_string(kMaxDqc1Qubits));
    if (clean_qubit < 0 || clean_qubit >= qc.width)
        throw std::invalid_argument("clean qubit out of range");
    MeasurementSpec spec;
    spec.measured_qubits = {clean_qubit};
    spec.accept_outcome = std::string(1, accept);

    const int mixed = qc.width - 1;
    double total = 0;
    for (uint64_t m = 0; m < (uint64_t(1) << mixed); ++m) {
        std::string ket(qc.width, '0');
        int pos = 0;
        for (int q = 0; q < qc.width; ++q) {
            if (q == clean_qubit) continue;
            ket[q] = (m >> (mixed - 1 - pos) & 1) ? '1' : '0';
            ++pos;
        }
        total += outcome_probability(qc, ket, spec);
    }
    return total / double(uint64_t(1) << mixed);
}

}  // namespace fgs
