#pragma once

#include <optional>
#include <string>

#include "fgs/boolean.hpp"
#include "fgs/pathsum.hpp"
#include "fgs/quantum.hpp"
#include "fgs/reversible.hpp"

namespace fgs {

// Exact dyadic rational num / 2^log2_den; every closed-form acceptance
// probability here has a power-of-two denominator.
struct ExactDyadic {
    BigInt num = 0;
    int log2_den = 0;

    void reduce();
    double value() const;
    std::string num_string() const;
    std::string den_string() const;
    static ExactDyadic make(BigInt num, int log2_den);

    friend bool operator==(const ExactDyadic&, const ExactDyadic&) = default;
};

// V = H^{m} (Z on the f-bit) U (H on the first n); eta = gap^2 / 2^{2n+xi}.
struct GapCoreInstance {
    QuantumCircuit V;
    int n = 0;
    int xi = 0;
    int64_t gap = 0;
    ExactDyadic eta_formula;

    friend bool operator==(const GapCoreInstance&, const GapCoreInstance&) = default;
};

// One clean qubit, m work qubits carrying V, one borrowed qubit left in the
// mixed register. Accept on the clean qubit reading `accept_outcome`;
// p_acc = 4 eta (1-eta) / 2^m with m = N-2.
struct Dqc1Instance {
    QuantumCircuit W;
    QuantumCircuit embedded_V;  // the m-qubit unitary the embedding wraps
    int clean_qubit = 0;
    char accept_outcome = '0';
    int N = 0;
    std::optional<ExactDyadic> p_formula;  // set when eta is known exactly

    int m() const { return N - 2; }

    friend bool operator==(const Dqc1Instance&, const Dqc1Instance&) = default;
};

// Classical reversible middle circuit (GTOFFOLI already decomposed through
// the borrowed |+> wire) between two H layers on the first N-1 qubits.
struct Hc1qInstance {
    ReversibleCircuit C;
    int N = 0;  // n + xi + 2
    int n = 0;
    int xi = 0;
    MeasurementSpec accept;  // 0^n 0^{xi-1} 1 1 on everything but the borrowed wire
    ExactDyadic p_formula;   // gap^2 / 2^{2n+2xi}

    QuantumCircuit full_circuit() const;

    friend bool operator==(const Hc1qInstance&, const Hc1qInstance&) = default;
};

enum class CliffordTVariant { Sharp, Gap };

struct CliffordTInstance {
    QuantumCircuit V;  // Clifford+T, TOFFOLIs decomposed
    CliffordTVariant variant = CliffordTVariant::Sharp;
    int n = 0;
    int xi = 0;
    int t = 0;
    ExactDyadic p_formula;  // (#f)^2/2^{2n+xi-1} or gap^2/2^{2n+xi}

    friend bool operator==(const CliffordTInstance&, const CliffordTInstance&) = default;
};

// W = (H^n x I^xi x H) U^dag (CNOT f-bit -> fresh) U (H^n x I^{xi+1});
// h = 2n+1 and the 0^{n+xi}1 outcome has probability gap^2/2^{2n+1}.
struct HCountInstance {
    QuantumCircuit W;
    int n = 0;
    int xi = 0;
    int h = 0;
    ExactDyadic p_formula;

    friend bool operator==(const HCountInstance&, const HCountInstance&) = default;
};

// V = (clean compute of f) (H^n x I^{xi+1}); marginal of last qubit = 1 is
// #f / 2^n.
struct SharpMarginalInstance {
    QuantumCircuit V;
    int n = 0;
    int xi = 0;
    int h = 0;
    ExactDyadic p_formula;

    friend bool operator==(const SharpMarginalInstance&, const SharpMarginalInstance&) = default;
};

// Clifford-only circuit consuming one |A> = (|0> + e^{i pi/4}|1>)/sqrt(2)
// per T gate: <0^n|U|0^n> = sqrt(2)^t <0^{n+t}|Vc (|0^n> x |A>^t).
struct GadgetizedInstance {
    QuantumCircuit Vc;
    int n = 0;
    int t = 0;
    QuantumCircuit source;

    friend bool operator==(const GadgetizedInstance&, const GadgetizedInstance&) = default;
};

GapCoreInstance build_gap_core(const BooleanCircuit& f);
GapCoreInstance build_gap_core(const CnfFormula& f);

Dqc1Instance embed_dqc1(const QuantumCircuit& V);
Dqc1Instance embed_dqc1(const GapCoreInstance& core);

Hc1qInstance build_hc1q(const BooleanCircuit& f);
Hc1qInstance build_hc1q(const CnfFormula& f);

CliffordTInstance build_cliffordt_sharp(const CnfFormula& f);
CliffordTInstance build_cliffordt_gap(const CnfFormula& f);

HCountInstance build_hcount_gap(const BooleanCircuit& f);
HCountInstance build_hcount_gap(const CnfFormula& f);

SharpMarginalInstance build_sharp_marginal(const BooleanCircuit& f);
SharpMarginalInstance build_sharp_marginal(const CnfFormula& f);

GadgetizedInstance gadgetize_t(const QuantumCircuit& U);

// H then T on each gadget qubit prepares |A>^t behind Vc.
QuantumCircuit magic_prep(const GadgetizedInstance& inst);

}  // namespace fgs
