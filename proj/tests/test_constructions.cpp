#include <doctest.h>

#include <random>

#include "fgs/instance_io.hpp"
#include "fgs/pathsum.hpp"
#include "fgs/statevector.hpp"
#include "fgs/verify.hpp"
#include "helpers.hpp"

using namespace fgs;
using namespace fgs::testhelp;

namespace {

BooleanCircuit and_circuit() {
    BooleanCircuit f;
    f.n = 2;
    f.gates.push_back(BoolGate{BoolOp::And, 0, 1});
    f.output = 2;
    return f;
}

// f = x1 on n inputs, padded with one same-wire AND so xi = 1.
BooleanCircuit projection_padded(int n) {
    BooleanCircuit f;
    f.n = n;
    f.gates.push_back(BoolGate{BoolOp::And, 0, 0});
    f.output = n;
    return f;
}

QuantumCircuit random_cliffordt(std::mt19937_64& rng, int width, int tcount, int extra) {
    QuantumCircuit qc;
    qc.width = width;
    int t = 0;
    while (t < tcount || static_cast<int>(qc.gates.size()) < tcount + extra) {
        int pick = int(rng() % 8);
        int a = int(rng() % width), b = int(rng() % width);
        while (width > 1 && b == a) b = int(rng() % width);
        switch (pick) {
            case 0: qc.h(a); break;
            case 1: qc.s(a); break;
            case 2: qc.z(a); break;
            case 3: qc.x(a); break;
            case 4:
                if (width > 1) qc.cz(a, b);
                break;
            case 5:
                if (width > 1) qc.cnot(a, b);
                break;
            default:
                if (t < tcount) {
                    if (pick == 6)
                        qc.t(a);
                    else
                        qc.tdg(a);
                    ++t;
                }
                break;
        }
    }
    return qc;
}

}  // namespace

TEST_CASE("gap core eta formula") {
    GapCoreInstance inst = build_gap_core(and_circuit());
    CHECK(inst.n == 2);
    CHECK(inst.xi == 1);
    CHECK(inst.gap == 2);
    CHECK(inst.eta_formula.value() == doctest::Approx(1.0 / 8).epsilon(1e-12));
    CHECK(verify_instance(inst).pass);

    // Balanced f = x1: eta = 0.
    BooleanCircuit proj;
    proj.n = 1;
    proj.output = 0;
    GapCoreInstance bal = build_gap_core(proj);
    CHECK(bal.eta_formula.value() == 0.0);
    CHECK(verify_instance(bal).pass);

    // f == 1 on one input via x1 | !x1: gap = -2, eta = 4 / 2^{2+1}.
    BooleanCircuit one;
    one.n = 1;
    one.gates.push_back(BoolGate{BoolOp::Not, 0, -1});
    one.gates.push_back(BoolGate{BoolOp::Or, 0, 1});
    one.output = 2;
    GapCoreInstance go = build_gap_core(one);
    CHECK(go.gap == -2);
    CHECK(go.eta_formula.value() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(verify_instance(go).pass);
}

TEST_CASE("dqc1 embedding carries the exact formula") {
    GapCoreInstance core = build_gap_core(and_circuit());
    Dqc1Instance inst = embed_dqc1(core);
    CHECK(inst.N == core.n + core.xi + 2);
    REQUIRE(inst.p_formula.has_value());
    // eta = 1/8, m = 3: p = 4 * (1/8) * (7/8) / 8.
    CHECK(inst.p_formula->value() == doctest::Approx(4.0 * (1.0 / 8) * (7.0 / 8) / 8).epsilon(1e-12));
    VerifyReport rep = verify_instance(inst);
    CHECK(rep.pass);
}

TEST_CASE("dqc1 acceptance depends on V only through eta") {
    // Two different 1-qubit circuits with eta = 1/2.
    QuantumCircuit v1;
    v1.width = 1;
    v1.h(0);
    QuantumCircuit v2;
    v2.width = 1;
    v2.x(0);
    v2.h(0);
    double p1 = dqc1_accept_probability(embed_dqc1(v1));
    double p2 = dqc1_accept_probability(embed_dqc1(v2));
    CHECK(std::abs(std::norm(amplitude(v1, "0", "0")) - std::norm(amplitude(v2, "0", "0"))) <
          1e-12);
    CHECK(p1 == doctest::Approx(p2).epsilon(1e-9));
}

TEST_CASE("hc1q probability and layout") {
    Hc1qInstance inst = build_hc1q(and_circuit());
    CHECK(inst.N == 5);
    CHECK(inst.xi == 1);
    CHECK(inst.accept.accept_outcome == "0011");  // 0^n 0^{xi-1} 1 1 with n=2, xi=1
    CHECK(inst.p_formula.value() == doctest::Approx(1.0 / 16).epsilon(1e-12));
    CHECK(verify_instance(inst).pass);

    // Balanced projection with a dummy gate: p = 0.
    Hc1qInstance zero = build_hc1q(projection_padded(2));
    CHECK(zero.p_formula.value() == 0.0);
    CHECK(verify_instance(zero).pass);

    // xi = 0 is rejected.
    BooleanCircuit bare;
    bare.n = 2;
    bare.output = 0;
    CHECK_THROWS_AS(build_hc1q(bare), std::invalid_argument);
}

TEST_CASE("hc1q amplitude law on random reversible circuits") {
    std::mt19937_64 rng(101);
    const int N = 4;
    for (int trial = 0; trial < 10; ++trial) {
        ReversibleCircuit c;
        c.width = N;
        for (int i = 0; i < 8; ++i) {
            int pick = int(rng() % 3);
            int a = int(rng() % N), b = int(rng() % N), t = int(rng() % N);
            while (b == a) b = int(rng() % N);
            while (t == a || t == b) t = int(rng() % N);
            if (pick == 0)
                c.gates.push_back(RGate::not_gate(t));
            else if (pick == 1)
                c.gates.push_back(RGate::toffoli(a, b, t));
            else
                c.gates.push_back(RGate::cnot(a, t));
        }
        QuantumCircuit qc;
        qc.width = N;
        for (int q = 0; q < N - 1; ++q) qc.h(q);
        for (const auto& g : lift_reversible(c).gates) qc.add(g);
        for (int q = 0; q < N - 1; ++q) qc.h(q);

        StateVector sv = run(qc, "0000");
        for (uint64_t z = 0; z < 16; ++z) {
            std::complex<double> expect = 0;
            for (uint64_t x = 0; x < 8; ++x) {
                std::vector<uint8_t> bits(N, 0);
                for (int i = 0; i < N - 1; ++i) bits[i] = (x >> (N - 2 - i)) & 1;
                auto out = run_reversible(c, bits);
                if (uint8_t(z & 1) != out[N - 1]) continue;
                int dot = 0;
                for (int i = 0; i < N - 1; ++i) dot += ((z >> (N - 1 - i)) & 1) * out[i];
                expect += (dot % 2 == 0) ? 1.0 : -1.0;
            }
            expect /= 8.0;
            CHECK(std::abs(sv.amps[z] - expect) < 1e-12);
        }
    }
}

TEST_CASE("clifford+T sharp instance") {
    CnfFormula f = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
    CliffordTInstance inst = build_cliffordt_sharp(f);
    CHECK(inst.n == 3);
    CHECK(inst.xi == 2);
    CHECK(inst.t == 14);
    CHECK(inst.p_formula.value() == doctest::Approx(49.0 / 128).epsilon(1e-12));
    CHECK(verify_instance(inst).pass);

    // Unsatisfiable formula padded to width 3 with repeated literals.
    CnfFormula unsat = parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n");
    CliffordTInstance zi = build_cliffordt_sharp(unsat);
    CHECK(zi.p_formula.value() == 0.0);
    CHECK(verify_instance(zi).pass);

    // Non-3-CNF rejected.
    CHECK_THROWS_AS(build_cliffordt_sharp(parse_dimacs("p cnf 2 1\n1 2 0\n")),
                    std::invalid_argument);
}

TEST_CASE("clifford+T gap instance") {
    CnfFormula f = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
    CliffordTInstance inst = build_cliffordt_gap(f);
    CHECK(inst.t == 14);
    CHECK(inst.p_formula.value() == doctest::Approx(36.0 / 256).epsilon(1e-12));
    CHECK(verify_instance(inst).pass);

    std::mt19937_64 rng(103);
    CnfFormula f2 = random_kcnf(rng, 4, 2, 3);
    CHECK(build_cliffordt_gap(f2).t == 35);
}

TEST_CASE("h-count instance") {
    HCountInstance inst = build_hcount_gap(and_circuit());
    CHECK(inst.h == 5);  // 2n+1 with n=2
    CHECK(inst.W.h_count() == 5);
    CHECK(inst.p_formula.value() == doctest::Approx(1.0 / 8).epsilon(1e-12));
    CHECK(verify_instance(inst).pass);

    HCountInstance zero = build_hcount_gap(projection_padded(2));
    CHECK(zero.p_formula.value() == 0.0);
    CHECK(verify_instance(zero).pass);

    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 5; ++trial) {
        int n = 2 + int(rng() % 3);
        BooleanCircuit f = random_circuit(rng, n, 2);
        CHECK(build_hcount_gap(f).h == 2 * n + 1);
    }
}

TEST_CASE("sharp-marginal instance") {
    SharpMarginalInstance inst = build_sharp_marginal(parse_dimacs("p cnf 2 1\n1 2 0\n"));
    CHECK(inst.h == 2);
    CHECK(inst.p_formula.value() == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(verify_instance(inst).pass);

    SharpMarginalInstance zero = build_sharp_marginal(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n"));
    CHECK(zero.p_formula.value() == 0.0);
    CHECK(verify_instance(zero).pass);

    SharpMarginalInstance one = build_sharp_marginal(parse_dimacs("p cnf 1 1\n1 -1 0\n"));
    CHECK(one.p_formula.value() == 1.0);
    CHECK(verify_instance(one).pass);
}

TEST_CASE("T gadgetizer") {
    // Single T on |0>.
    QuantumCircuit t;
    t.width = 1;
    t.t(0);
    GadgetizedInstance g = gadgetize_t(t);
    CHECK(g.t == 1);
    CHECK(g.Vc.t_count() == 0);
    CHECK(verify_instance(g).pass);

    // Clifford-only circuit keeps its shape.
    QuantumCircuit cl;
    cl.width = 2;
    cl.h(0);
    cl.cz(0, 1);
    GadgetizedInstance gc = gadgetize_t(cl);
    CHECK(gc.t == 0);
    CHECK(gc.Vc == cl);
    CHECK(verify_instance(gc).pass);

    // HTH relation.
    QuantumCircuit hth;
    hth.width = 1;
    hth.h(0);
    hth.t(0);
    hth.h(0);
    GadgetizedInstance gh = gadgetize_t(hth);
    CHECK(gh.t == 1);
    CHECK(verify_instance(gh).abs_diff < 1e-12);

    QuantumCircuit tof;
    tof.width = 3;
    tof.add(QGate::toffoli(0, 1, 2));
    CHECK_THROWS_AS(gadgetize_t(tof), std::invalid_argument);
}

TEST_CASE("gadgetizer relation on random Clifford+T circuits") {
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 2 + int(rng() % 3);
        int t = 1 + int(rng() % 6);
        QuantumCircuit u = random_cliffordt(rng, n, t, 8);
        GadgetizedInstance g = gadgetize_t(u);
        CHECK(g.Vc.t_count() == 0);
        CHECK(verify_instance(g).pass);
    }
}

TEST_CASE("small corpus: oracle equals formula on every construction") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 2 + int(rng() % 3);
        BooleanCircuit f = random_circuit(rng, n, 1 + int(rng() % 3));
        CHECK(verify_instance(build_gap_core(f)).pass);
        CHECK(verify_instance(embed_dqc1(build_gap_core(f))).pass);
        if (f.and_or_count() >= 1) CHECK(verify_instance(build_hc1q(f)).pass);
        CHECK(verify_instance(build_hcount_gap(f)).pass);
        CHECK(verify_instance(build_sharp_marginal(f)).pass);
    }
    for (int trial = 0; trial < 4; ++trial) {
        CnfFormula f = random_kcnf(rng, 3 + int(rng() % 2), 1 + int(rng() % 3), 3);
        CHECK(verify_instance(build_cliffordt_sharp(f)).pass);
        CHECK(verify_instance(build_cliffordt_gap(f)).pass);
    }
}

TEST_CASE("zero gap cancels exactly in the path-sum engine") {
    // Integer cancellation in Z[w]: counting pipeline when v is small,
    // exact enumeration when the rewrite inflates the variable count.
    auto check_exact_zero = [](const QuantumCircuit& norm, const std::string& a,
                               const std::string& b) {
        PhasePolynomialMod8 p = extract_phase_polynomial(norm, a, b);
        CHECK(direct_sum(p).is_exact_zero());
        if (!p.inconsistent && p.v >= 2 && p.v <= 20)
            CHECK(counting_sum(p, choose_split_k(p.v)).is_exact_zero());
    };

    // Balanced functions: projections x1 over n inputs (pad keeps xi >= 1).
    for (int n = 2; n <= 4; ++n) {
        BooleanCircuit f = projection_padded(n);
        REQUIRE(count(f).gap == 0);

        GapCoreInstance core = build_gap_core(f);
        QuantumCircuit norm = rewrite_to_htcz(toffoli_to_clifford_t(core.V));
        std::string zero(norm.width, '0');
        check_exact_zero(norm, zero, zero);

        HCountInstance hc = build_hcount_gap(f);
        QuantumCircuit hnorm = rewrite_to_htcz(toffoli_to_clifford_t(hc.W));
        std::string accept = std::string(hc.W.width - 1, '0') + "1";
        check_exact_zero(hnorm, accept, std::string(hc.W.width, '0'));
    }

    // Gap variant over a balanced padded 3-CNF.
    CnfFormula f = parse_dimacs("p cnf 1 1\n1 1 1 0\n");
    REQUIRE(count(f).gap == 0);
    CliffordTInstance inst = build_cliffordt_gap(f);
    QuantumCircuit norm = rewrite_to_htcz(inst.V);
    std::string zero(norm.width, '0');
    check_exact_zero(norm, zero, zero);
    CHECK(verify_instance(inst).oracle_value <= 1e-9);
}

TEST_CASE("instance JSON round-trips") {
    std::mt19937_64 rng(127);
    BooleanCircuit f = random_circuit(rng, 3, 2);
    CnfFormula cnf = random_kcnf(rng, 3, 2, 3);

    std::vector<Instance> instances;
    instances.emplace_back(build_gap_core(f));
    instances.emplace_back(embed_dqc1(build_gap_core(f)));
    instances.emplace_back(build_hc1q(and_circuit()));
    instances.emplace_back(build_cliffordt_sharp(cnf));
    instances.emplace_back(build_cliffordt_gap(cnf));
    instances.emplace_back(build_hcount_gap(f));
    instances.emplace_back(build_sharp_marginal(f));
    instances.emplace_back(gadgetize_t(random_cliffordt(rng, 2, 2, 4)));
    instances.emplace_back(compile_cnf_counter(cnf));

    for (const auto& inst : instances) {
        std::string payload = instance_to_json(inst);
        Instance back = instance_from_json(payload);
        CHECK(back == inst);
        CHECK(instance_to_json(back) == payload);
    }
}

TEST_CASE("corrupted instances fail verification") {
    Hc1qInstance inst = build_hc1q(and_circuit());
    inst.p_formula = ExactDyadic::make(1, 2);  // wrong value
    CHECK_FALSE(verify_instance(inst).pass);
}
