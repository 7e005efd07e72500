#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fgs/reversible.hpp"

namespace fgs {

enum class QKind { X, H, Z, S, Sdg, T, Tdg, CZ, CNOT, Toffoli, GToffoli, MCZ };

const char* qkind_name(QKind k);

struct QGate {
    QKind kind = QKind::X;
    int target = -1;                        // single-qubit target; CNOT/Toffoli target
    int c1 = -1, c2 = -1;                   // CNOT control (c1); CZ pair (c1, target); Toffoli
    std::vector<PolarityControl> controls;  // GToffoli, MCZ (MCZ has no target)

    static QGate single(QKind k, int q) { return QGate{k, q, -1, -1, {}}; }
    static QGate cnot(int c, int t) { return QGate{QKind::CNOT, t, c, -1, {}}; }
    static QGate cz(int a, int b) { return QGate{QKind::CZ, b, a, -1, {}}; }
    static QGate toffoli(int c1, int c2, int t) { return QGate{QKind::Toffoli, t, c1, c2, {}}; }
    static QGate gtoffoli(std::vector<PolarityControl> cs, int t) {
        return QGate{QKind::GToffoli, t, -1, -1, std::move(cs)};
    }

    void validate(int width) const;

    friend bool operator==(const QGate&, const QGate&) = default;
};

// Diagonal phase flip on the basis states matching every polarity.
QGate mcz(std::vector<PolarityControl> controls, int width);

struct MeasurementSpec {
    enum class Semantics { ExactOutcome, Marginal };
    std::vector<int> measured_qubits;
    std::string accept_outcome;
    Semantics semantics = Semantics::ExactOutcome;

    void validate(int width) const;

    friend bool operator==(const MeasurementSpec&, const MeasurementSpec&) = default;
};

struct QuantumCircuit {
    int width = 0;
    std::vector<QGate> gates;
    MeasurementSpec measure;  // optional; empty measured_qubits when unused

    int t_count() const;
    int h_count() const;
    void validate() const;

    QuantumCircuit& add(QGate g) {
        gates.push_back(std::move(g));
        return *this;
    }
    QuantumCircuit& h(int q) { return add(QGate::single(QKind::H, q)); }
    QuantumCircuit& x(int q) { return add(QGate::single(QKind::X, q)); }
    QuantumCircuit& z(int q) { return add(QGate::single(QKind::Z, q)); }
    QuantumCircuit& s(int q) { return add(QGate::single(QKind::S, q)); }
    QuantumCircuit& t(int q) { return add(QGate::single(QKind::T, q)); }
    QuantumCircuit& tdg(int q) { return add(QGate::single(QKind::Tdg, q)); }
    QuantumCircuit& cz(int a, int b) { return add(QGate::cz(a, b)); }
    QuantumCircuit& cnot(int c, int t) { return add(QGate::cnot(c, t)); }

    friend bool operator==(const QuantumCircuit&, const QuantumCircuit&) = default;
};

// Gate-for-gate lift; single-control GToffolis become CNOTs (NOT-conjugated
// for a negative control) so downstream rewrites see standard gates.
QuantumCircuit lift_reversible(const ReversibleCircuit& c);

// Each TOFFOLI becomes the fixed 7-T network (2 H, 6 CNOT, 4 T, 3 Tdg);
// two-control GToffolis are folded in via NOT conjugation.
QuantumCircuit toffoli_to_clifford_t(const QuantumCircuit& qc);

// Exact rewrites onto {H, T, CZ}: Z -> T^4, S -> T^2, Sdg -> T^6, Tdg -> T^7,
// X -> H T^4 H, CNOT -> H CZ H. No global phase slack.
QuantumCircuit rewrite_to_htcz(const QuantumCircuit& qc);

// Reversed gate order with each gate inverted (T <-> Tdg, S <-> Sdg).
QuantumCircuit inverse(const QuantumCircuit& qc);

// Rewrites multi-control GToffoli/MCZ gates using one borrowed qubit; the
// MCZ is H-conjugated onto a positive participant first.
QuantumCircuit decompose_wide_gates(const QuantumCircuit& qc, int borrowed_qubit);

// Text format: "qubits N", one gate per line, optional final
// "measure q... accept b..." (suffix "marginal" switches semantics).
QuantumCircuit parse_quantum_text(std::istream& in);
QuantumCircuit parse_quantum_text(const std::string& text);
std::string quantum_to_text(const QuantumCircuit& qc);

}  // namespace fgs
