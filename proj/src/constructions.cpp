#include "fgs/constructions.hpp"

#include <stdexcept>

namespace fgs {

void ExactDyadic::reduce() {
    if (num == 0) {
        log2_den = 0;
        return;
    }
    while (log2_den > 0 && (num & 1) == 0) {
        num >>= 1;
        --log2_den;
    }
}

double ExactDyadic::value() const {
    return num.convert_to<double>() * std::pow(2.0, -log2_den);
}

std::string ExactDyadic::num_string() const { return num.str(); }

std::string ExactDyadic::den_string() const {
    BigInt d = BigInt(1) << log2_den;
    return d.str();
}

ExactDyadic ExactDyadic::make(BigInt num, int log2_den) {
    ExactDyadic e{std::move(num), log2_den};
    e.reduce();
    return e;
}

namespace {

void h_layer(QuantumCircuit& qc, int from, int count) {
    for (int q = from; q < from + count; ++q) qc.h(q);
}

void append_shifted(QuantumCircuit& dst, const QuantumCircuit& src, int shift) {
    for (QGate g : src.gates) {
        if (g.target >= 0) g.target += shift;
        if (g.c1 >= 0) g.c1 += shift;
        if (g.c2 >= 0) g.c2 += shift;
        for (auto& pc : g.controls) pc.bit += shift;
        dst.add(std::move(g));
    }
}

}  // namespace

GapCoreInstance build_gap_core(const BooleanCircuit& f) {
    ReversibleCircuit rev = compile_boolean_naive(f);
    CountReport cr = count(f);
    int n = rev.ledger.n, xi = rev.ledger.xi;
    int m = n + xi;

    GapCoreInstance inst;
    inst.n = n;
    inst.xi = xi;
    inst.gap = cr.gap;
    inst.eta_formula = ExactDyadic::make(BigInt(cr.gap) * cr.gap, 2 * n + xi);

    inst.V.width = m;
    h_layer(inst.V, 0, n);
    append_shifted(inst.V, lift_reversible(rev), 0);
    inst.V.z(rev.ledger.output_bit);
    h_layer(inst.V, 0, m);
    return inst;
}

GapCoreInstance build_gap_core(const CnfFormula& f) {
    return build_gap_core(lower_to_circuit(f));
}

Dqc1Instance embed_dqc1(const QuantumCircuit& V) {
    int m = V.width;
    if (m < 1) throw std::invalid_argument("embedding needs m >= 1");
    Dqc1Instance inst;
    inst.N = m + 2;
    inst.clean_qubit = 0;
    inst.accept_outcome = '0';
    inst.embedded_V = V;

    QuantumCircuit& W = inst.W;
    W.width = inst.N;
    // Anti-controlled flip of the clean qubit on the work register being
    // all zero; together with the reflection below this realizes the
    // clean-controlled V^dag (I - 2|0><0|) V.
    std::vector<PolarityControl> anti;
    for (int i = 0; i < m; ++i) anti.push_back({1 + i, false});
    QGate flip = QGate::gtoffoli(anti, 0);

    std::vector<PolarityControl> reflect{{0, true}};
    for (int i = 0; i < m; ++i) reflect.push_back({1 + i, false});

    W.add(flip);
    append_shifted(W, V, 1);
    W.add(mcz(reflect, inst.N));
    append_shifted(W, inverse(V), 1);
    W.add(flip);
    W.x(0);
    return inst;
}

Dqc1Instance embed_dqc1(const GapCoreInstance& core) {
    Dqc1Instance inst = embed_dqc1(core.V);
    // eta = g^2/2^e gives p = 4 eta (1 - eta) / 2^m
    //     = g^2 (2^{e+2} - 4 g^2) / 2^{2e+m}.
    BigInt g2 = BigInt(core.gap) * core.gap;
    int e = 2 * core.n + core.xi;
    BigInt num = g2 * ((BigInt(1) << (e + 2)) - 4 * g2);
    inst.p_formula = ExactDyadic::make(num, 2 * e + inst.m());
    return inst;
}

Hc1qInstance build_hc1q(const BooleanCircuit& f) {
    ReversibleCircuit rev = compile_boolean_naive(f);
    if (rev.ledger.xi < 1)
        throw std::invalid_argument("HC1Q layout needs xi >= 1; pad f with a gate");
    if (rev.ledger.output_bit != rev.width - 1) {
        // The output resolved to a payload wire; the accept string needs
        // f(x) on the last work bit, so pad with a copy gate.
        BooleanCircuit padded = f;
        padded.gates.push_back(BoolGate{BoolOp::And, f.output, f.output});
        padded.output = padded.wire_count() - 1;
        return build_hc1q(padded);
    }
    int n = rev.ledger.n, xi = rev.ledger.xi;
    CountReport cr = count(f);

    Hc1qInstance inst;
    inst.n = n;
    inst.xi = xi;
    inst.N = n + xi + 2;
    inst.p_formula = ExactDyadic::make(BigInt(cr.gap) * cr.gap, 2 * n + 2 * xi);

    // Bit layout: payload n | ancillas xi | borrowed | target. The borrowed
    // wire sits inside the Hadamard block, so it is |+> while the classical
    // circuit runs.
    int borrowed = n + xi;
    int target = n + xi + 1;
    inst.C.width = inst.N;
    inst.C.ledger = rev.ledger;

    std::vector<PolarityControl> anti;
    for (int i = 0; i < xi; ++i) anti.push_back({n + i, false});
    RGate flip = RGate::gtoffoli(anti, target);
    if (xi >= 2) {
        auto sub = decompose_gtoffoli(flip, borrowed);
        inst.C.gates.insert(inst.C.gates.end(), sub.begin(), sub.end());
    } else {
        // Single anti-control needs no borrowed wire.
        inst.C.gates.push_back(RGate::not_gate(n));
        inst.C.gates.push_back(RGate::cnot(n, target));
        inst.C.gates.push_back(RGate::not_gate(n));
    }
    inst.C.gates.insert(inst.C.gates.end(), rev.gates.begin(), rev.gates.end());

    // Accept 0^n 0^{xi-1} 1 1 on everything but the borrowed wire.
    for (int q = 0; q < n + xi; ++q) inst.accept.measured_qubits.push_back(q);
    inst.accept.measured_qubits.push_back(target);
    inst.accept.accept_outcome = std::string(n + xi - 1, '0') + "11";
    inst.accept.semantics = MeasurementSpec::Semantics::ExactOutcome;
    return inst;
}

Hc1qInstance build_hc1q(const CnfFormula& f) { return build_hc1q(lower_to_circuit(f)); }

QuantumCircuit Hc1qInstance::full_circuit() const {
    QuantumCircuit qc;
    qc.width = N;
    for (int q = 0; q < N - 1; ++q) qc.h(q);
    append_shifted(qc, lift_reversible(C), 0);
    for (int q = 0; q < N - 1; ++q) qc.h(q);
    qc.measure = accept;
    return qc;
}

namespace {

void require_3cnf(const CnfFormula& f) {
    if (f.clause_count() < 1) throw std::invalid_argument("3-CNF needs at least one clause");
    for (const auto& c : f.clauses)
        if (c.size() != 3)
            throw std::invalid_argument("Clifford+T constructions need exact width-3 clauses");
}

CliffordTInstance build_cliffordt(const CnfFormula& f, CliffordTVariant variant) {
    require_3cnf(f);
    ReversibleCircuit rev = compile_boolean_naive(f);
    CountReport cr = count(f);
    int n = rev.ledger.n, xi = rev.ledger.xi;

    CliffordTInstance inst;
    inst.variant = variant;
    inst.n = n;
    inst.xi = xi;

    QuantumCircuit raw;
    raw.width = n + xi;
    h_layer(raw, 0, n);
    append_shifted(raw, lift_reversible(rev), 0);
    if (variant == CliffordTVariant::Sharp) {
        raw.x(rev.ledger.output_bit);
        for (int q = 0; q < n + xi; ++q)
            if (q != rev.ledger.output_bit) raw.h(q);
        inst.p_formula = ExactDyadic::make(BigInt(cr.sharp) * cr.sharp, 2 * n + xi - 1);
    } else {
        raw.z(rev.ledger.output_bit);
        h_layer(raw, 0, n + xi);
        inst.p_formula = ExactDyadic::make(BigInt(cr.gap) * cr.gap, 2 * n + xi);
    }
    inst.V = toffoli_to_clifford_t(raw);
    inst.t = inst.V.t_count();
    return inst;
}

}  // namespace

CliffordTInstance build_cliffordt_sharp(const CnfFormula& f) {
    return build_cliffordt(f, CliffordTVariant::Sharp);
}

CliffordTInstance build_cliffordt_gap(const CnfFormula& f) {
    return build_cliffordt(f, CliffordTVariant::Gap);
}

HCountInstance build_hcount_gap(const BooleanCircuit& f) {
    ReversibleCircuit rev = compile_boolean_naive(f);
    CountReport cr = count(f);
    int n = rev.ledger.n, xi = rev.ledger.xi;
    int fresh = n + xi;

    HCountInstance inst;
    inst.n = n;
    inst.xi = xi;
    inst.p_formula = ExactDyadic::make(BigInt(cr.gap) * cr.gap, 2 * n + 1);

    QuantumCircuit U = lift_reversible(rev);
    QuantumCircuit& W = inst.W;
    W.width = n + xi + 1;
    h_layer(W, 0, n);
    append_shifted(W, U, 0);
    W.cnot(rev.ledger.output_bit, fresh);
    append_shifted(W, inverse(U), 0);
    h_layer(W, 0, n);
    W.h(fresh);
    inst.h = W.h_count();

    for (int q = 0; q < W.width; ++q) W.measure.measured_qubits.push_back(q);
    W.measure.accept_outcome = std::string(n + xi, '0') + "1";
    W.measure.semantics = MeasurementSpec::Semantics::ExactOutcome;
    return inst;
}

HCountInstance build_hcount_gap(const CnfFormula& f) {
    return build_hcount_gap(lower_to_circuit(f));
}

SharpMarginalInstance build_sharp_marginal(const BooleanCircuit& f) {
    ReversibleCircuit rev = compile_boolean_naive(f);
    CountReport cr = count(f);
    int n = rev.ledger.n, xi = rev.ledger.xi;
    int fresh = n + xi;

    SharpMarginalInstance inst;
    inst.n = n;
    inst.xi = xi;
    inst.h = n;
    inst.p_formula = ExactDyadic::make(BigInt(cr.sharp), n);

    QuantumCircuit U = lift_reversible(rev);
    QuantumCircuit& V = inst.V;
    V.width = n + xi + 1;
    h_layer(V, 0, n);
    append_shifted(V, U, 0);
    V.cnot(rev.ledger.output_bit, fresh);
    append_shifted(V, inverse(U), 0);

    V.measure.measured_qubits = {fresh};
    V.measure.accept_outcome = "1";
    V.measure.semantics = MeasurementSpec::Semantics::Marginal;
    return inst;
}

SharpMarginalInstance build_sharp_marginal(const CnfFormula& f) {
    return build_sharp_marginal(lower_to_circuit(f));
}

GadgetizedInstance gadgetize_t(const QuantumCircuit& U) {
    U.validate();
    // Pre-pass: Tdg = T Sdg as matrices, so emit Sdg then T.
    QuantumCircuit flat;
    flat.width = U.width;
    for (const auto& g : U.gates) {
        switch (g.kind) {
            case QKind::Tdg:
                flat.add(QGate::single(QKind::Sdg, g.target));
                flat.t(g.target);
                break;
            case QKind::Toffoli:
                throw std::invalid_argument("leftover non-Clifford gate CCX: decompose first");
            case QKind::GToffoli:
                if (g.controls.size() >= 2)
                    throw std::invalid_argument("leftover non-Clifford gate GTOF: decompose first");
                flat.add(g);
                break;
            case QKind::MCZ:
                if (g.controls.size() > 2 ||
                    (g.controls.size() == 2 &&
                     !(g.controls[0].positive && g.controls[1].positive)))
                    throw std::invalid_argument("leftover non-Clifford gate MCZ: decompose first");
                flat.add(g);
                break;
            default:
                flat.add(g);
                break;
        }
    }

    GadgetizedInstance inst;
    inst.n = U.width;
    inst.t = flat.t_count();
    inst.source = U;
    inst.Vc.width = U.width + inst.t;
    int next_gadget = U.width;
    for (const auto& g : flat.gates) {
        if (g.kind == QKind::T) {
            int gq = next_gadget++;
            inst.Vc.h(gq);
            inst.Vc.cz(g.target, gq);
            inst.Vc.h(gq);
        } else {
            inst.Vc.add(g);
        }
    }
    return inst;
}

QuantumCircuit magic_prep(const GadgetizedInstance& inst) {
    QuantumCircuit prep;
    prep.width = inst.Vc.width;
    for (int i = 0; i < inst.t; ++i) {
        prep.h(inst.n + i);
        prep.t(inst.n + i);
    }
    return prep;
}

}  // namespace fgs
