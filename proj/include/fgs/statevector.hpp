#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fgs/quantum.hpp"

namespace fgs {

inline constexpr int kMaxOracleQubits = 26;
inline constexpr int kMaxDqc1Qubits = 18;
inline constexpr double kOracleEps = 1e-9;

// Dense exact simulator. Qubit 0 is the leftmost ket character; the
// amplitude index is the big-endian integer of the ket string.
struct StateVector {
    int width = 0;
    std::vector<std::complex<double>> amps;

    static StateVector basis(int width, const std::string& ket);
    double norm() const;
};

void apply_gate(StateVector& sv, const QGate& g);

StateVector run(const QuantumCircuit& qc, const std::string& input);
// Input defaults to |0...0>.
StateVector run(const QuantumCircuit& qc);

// <a| qc |b>
std::complex<double> amplitude(const QuantumCircuit& qc, const std::string& a,
                               const std::string& b);

// Probability that the measured qubits read the accept outcome, with the
// unmeasured qubits traced out.
double outcome_probability(const QuantumCircuit& qc, const std::string& input,
                           const MeasurementSpec& spec);

// Exact average over all basis states of the mixed register (every qubit
// except `clean_qubit`) of the probability that `clean_qubit` reads
// `accept` after the circuit.
double dqc1_average_accept(const QuantumCircuit& qc, int clean_qubit, char accept);

uint64_t ket_index(const std::string& ket);
std::string index_ket(uint64_t idx, int width);

}  // namespace fgs
