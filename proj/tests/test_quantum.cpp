#include <doctest.h>

#include <random>

#include "fgs/quantum.hpp"
#include "fgs/statevector.hpp"

using namespace fgs;

namespace {

// Max |<a|P|b> - <a|Q|b>| over all basis pairs.
double max_matrix_diff(const QuantumCircuit& p, const QuantumCircuit& q) {
    REQUIRE(p.width == q.width);
    double worst = 0;
    uint64_t dim = uint64_t(1) << p.width;
    for (uint64_t b = 0; b < dim; ++b) {
        StateVector sp = run(p, index_ket(b, p.width));
        StateVector sq = run(q, index_ket(b, q.width));
        for (uint64_t a = 0; a < dim; ++a)
            worst = std::max(worst, std::abs(sp.amps[a] - sq.amps[a]));
    }
    return worst;
}

QuantumCircuit random_ir_circuit(std::mt19937_64& rng, int width, int gates) {
    QuantumCircuit qc;
    qc.width = width;
    while (static_cast<int>(qc.gates.size()) < gates) {
        int pick = int(rng() % 9);
        int a = int(rng() % width), b = int(rng() % width);
        while (b == a) b = int(rng() % width);
        switch (pick) {
            case 0: qc.h(a); break;
            case 1: qc.t(a); break;
            case 2: qc.tdg(a); break;
            case 3: qc.s(a); break;
            case 4: qc.z(a); break;
            case 5: qc.x(a); break;
            case 6: qc.cz(a, b); break;
            case 7: qc.cnot(a, b); break;
            default: qc.add(QGate::single(QKind::Sdg, a)); break;
        }
    }
    return qc;
}

}  // namespace

TEST_CASE("lift_reversible basics") {
    ReversibleCircuit rc;
    rc.width = 1;
    rc.gates.push_back(RGate::not_gate(0));
    QuantumCircuit qc = lift_reversible(rc);
    REQUIRE(qc.gates.size() == 1);
    CHECK(qc.gates[0].kind == QKind::X);

    ReversibleCircuit tof;
    tof.width = 3;
    tof.gates.push_back(RGate::toffoli(0, 1, 2));
    QuantumCircuit qt = lift_reversible(tof);
    CHECK(std::abs(amplitude(qt, "111", "110") - std::complex<double>(1, 0)) < 1e-12);

    // AND compile, lifted: <11,1|U|11,0> = 1.
    BooleanCircuit andc;
    andc.n = 2;
    andc.gates.push_back(BoolGate{BoolOp::And, 0, 1});
    andc.output = 2;
    QuantumCircuit ua = lift_reversible(compile_boolean_naive(andc));
    CHECK(std::abs(amplitude(ua, "111", "110") - std::complex<double>(1, 0)) < 1e-12);
}

TEST_CASE("lifted circuits map basis states to basis states") {
    std::mt19937_64 rng(43);
    CnfFormula f;
    f.n = 3;
    f.clauses = {{1, -2, 3}, {-1, 2, 3}};
    QuantumCircuit qc = lift_reversible(compile_cnf_counter(f));
    for (int trial = 0; trial < 10; ++trial) {
        uint64_t b = rng() % (uint64_t(1) << qc.width);
        StateVector sv = run(qc, index_ket(b, qc.width));
        int nonzero = 0;
        for (const auto& amp : sv.amps)
            if (std::abs(amp) > 1e-12) {
                ++nonzero;
                CHECK(std::abs(std::abs(amp) - 1.0) <= 1e-12);
            }
        CHECK(nonzero == 1);
    }
}

TEST_CASE("toffoli_to_clifford_t is exact with seven T per TOFFOLI") {
    QuantumCircuit tof;
    tof.width = 3;
    tof.add(QGate::toffoli(0, 1, 2));
    QuantumCircuit ct = toffoli_to_clifford_t(tof);
    CHECK(ct.t_count() == 7);
    CHECK(max_matrix_diff(tof, ct) < 1e-12);

    // Negative-polarity two-control GTOF goes through NOT conjugation.
    QuantumCircuit g;
    g.width = 3;
    g.add(QGate::gtoffoli({{0, false}, {1, true}}, 2));
    QuantumCircuit gct = toffoli_to_clifford_t(g);
    CHECK(gct.t_count() == 7);
    CHECK(max_matrix_diff(g, gct) < 1e-12);

    QuantumCircuit wide;
    wide.width = 4;
    wide.add(QGate::gtoffoli({{0, true}, {1, true}, {2, true}}, 3));
    CHECK_THROWS_AS(toffoli_to_clifford_t(wide), std::invalid_argument);
}

TEST_CASE("3-CNF instance T-count law 21m-7") {
    std::mt19937_64 rng(47);
    for (int m : {1, 2, 3}) {
        CnfFormula f;
        f.n = 4;
        for (int i = 0; i < m; ++i) {
            std::vector<int> vars{1, 2, 3, 4};
            std::shuffle(vars.begin(), vars.end(), rng);
            f.clauses.push_back({rng() % 2 ? vars[0] : -vars[0], rng() % 2 ? vars[1] : -vars[1],
                                 rng() % 2 ? vars[2] : -vars[2]});
        }
        QuantumCircuit u = lift_reversible(compile_boolean_naive(f));
        QuantumCircuit ct = toffoli_to_clifford_t(u);
        CHECK(ct.t_count() == 21 * m - 7);
    }
}

TEST_CASE("rewrite_to_htcz gate identities") {
    QuantumCircuit s;
    s.width = 1;
    s.s(0);
    QuantumCircuit rs = rewrite_to_htcz(s);
    CHECK(rs.gates.size() == 2);
    CHECK(rs.t_count() == 2);
    CHECK(max_matrix_diff(s, rs) < 1e-12);

    QuantumCircuit cx;
    cx.width = 2;
    cx.cnot(0, 1);
    QuantumCircuit rcx = rewrite_to_htcz(cx);
    CHECK(rcx.h_count() == 2);
    CHECK(max_matrix_diff(cx, rcx) < 1e-12);

    QuantumCircuit x;
    x.width = 1;
    x.x(0);
    QuantumCircuit rx = rewrite_to_htcz(x);
    CHECK(std::abs(amplitude(rx, "1", "0") - std::complex<double>(1, 0)) < 1e-12);

    QuantumCircuit tof;
    tof.width = 3;
    tof.add(QGate::toffoli(0, 1, 2));
    CHECK_THROWS_AS(rewrite_to_htcz(tof), std::invalid_argument);
}

TEST_CASE("rewrites preserve all basis amplitudes on random circuits") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 12; ++trial) {
        int width = 2 + int(rng() % 3);
        QuantumCircuit qc = random_ir_circuit(rng, width, 12);
        QuantumCircuit rw = rewrite_to_htcz(qc);
        for (const auto& g : rw.gates) {
            bool ok = g.kind == QKind::H || g.kind == QKind::T || g.kind == QKind::CZ;
            CHECK(ok);
        }
        CHECK(max_matrix_diff(qc, rw) < 1e-12);
    }
}

TEST_CASE("inverse is an involution and a true inverse") {
    QuantumCircuit h;
    h.width = 1;
    h.h(0);
    CHECK(inverse(h) == h);

    QuantumCircuit t;
    t.width = 1;
    t.t(0);
    QuantumCircuit ti = inverse(t);
    REQUIRE(ti.gates.size() == 1);
    CHECK(ti.gates[0].kind == QKind::Tdg);

    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        QuantumCircuit qc = random_ir_circuit(rng, 4, 16);
        CHECK(inverse(inverse(qc)) == qc);

        QuantumCircuit round = qc;
        for (const auto& g : inverse(qc).gates) round.add(g);
        QuantumCircuit id;
        id.width = 4;
        CHECK(max_matrix_diff(round, id) < 1e-9);
    }
}

TEST_CASE("mcz semantics") {
    // Single positive control: Z.
    QuantumCircuit z1;
    z1.width = 1;
    z1.add(mcz({{0, true}}, 1));
    CHECK(std::abs(amplitude(z1, "1", "1") - std::complex<double>(-1, 0)) < 1e-12);
    CHECK(std::abs(amplitude(z1, "0", "0") - std::complex<double>(1, 0)) < 1e-12);

    // MCZ(+0, -1, -2): phase -1 only on |100>.
    QuantumCircuit m;
    m.width = 3;
    m.add(mcz({{0, true}, {1, false}, {2, false}}, 3));
    for (uint64_t b = 0; b < 8; ++b) {
        std::string ket = index_ket(b, 3);
        std::complex<double> expect = (ket == "100") ? -1.0 : 1.0;
        CHECK(std::abs(amplitude(m, ket, ket) - expect) < 1e-12);
    }

    CHECK_THROWS_AS(mcz({{0, true}, {0, false}}, 2), std::invalid_argument);
}

TEST_CASE("wide-gate decomposition matches on all basis states") {
    // MCZ via GTOF + H conjugation on 3 qubits plus a borrowed wire.
    QuantumCircuit m;
    m.width = 4;
    m.add(mcz({{0, true}, {1, false}, {2, true}}, 4));
    QuantumCircuit dm = decompose_wide_gates(m, 3);
    for (const auto& g : dm.gates) {
        bool narrow = g.kind != QKind::MCZ && g.kind != QKind::GToffoli;
        CHECK(narrow);
    }
    CHECK(max_matrix_diff(m, dm) < 1e-12);

    // All-negative MCZ and a wide GTOF.
    QuantumCircuit m2;
    m2.width = 5;
    m2.add(mcz({{0, false}, {1, false}, {2, false}}, 5));
    m2.add(QGate::gtoffoli({{0, false}, {1, true}, {2, false}}, 3));
    QuantumCircuit dm2 = decompose_wide_gates(m2, 4);
    CHECK(max_matrix_diff(m2, dm2) < 1e-12);
}

TEST_CASE("quantum text round-trip") {
    std::mt19937_64 rng(61);
    QuantumCircuit qc = random_ir_circuit(rng, 4, 20);
    qc.add(QGate::toffoli(0, 1, 2));
    qc.add(QGate::gtoffoli({{0, true}, {2, false}}, 3));
    qc.add(mcz({{1, true}, {3, false}}, 4));
    qc.measure.measured_qubits = {0, 2};
    qc.measure.accept_outcome = "01";
    QuantumCircuit parsed = parse_quantum_text(quantum_to_text(qc));
    CHECK(parsed == qc);

    CHECK_THROWS_AS(parse_quantum_text("qubits 2\nRY 0\n"), parse_error);
    CHECK_THROWS_AS(parse_quantum_text("H 0\n"), parse_error);
    CHECK_THROWS_AS(parse_quantum_text("qubits 2\nCZ 0 2\n"), parse_error);
}
