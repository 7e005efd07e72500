#include <doctest.h>

#include <numbers>
#include <random>

#include "fgs/pathsum.hpp"
#include "fgs/statevector.hpp"

using namespace fgs;

namespace {

const std::complex<double> kOmega = std::polar(1.0, std::numbers::pi / 4);

// Random circuit over {H, T, CZ} with exactly h_target H gates.
QuantumCircuit random_htcz(std::mt19937_64& rng, int width, int h_target, int extra) {
    QuantumCircuit qc;
    qc.width = width;
    int h = 0;
    while (h < h_target || static_cast<int>(qc.gates.size()) < h_target + extra) {
        int pick = int(rng() % 3);
        int a = int(rng() % width), b = int(rng() % width);
        while (width > 1 && b == a) b = int(rng() % width);
        if (pick == 0 && h < h_target) {
            qc.h(int(rng() % width));
            ++h;
        } else if (pick == 1) {
            qc.t(a);
        } else if (width > 1) {
            qc.cz(a, b);
        }
    }
    return qc;
}

int64_t mod_pos(const BigInt& v, int64_t m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r.convert_to<int64_t>();
}

uint64_t binom_capped(int n, int k, uint64_t cap) {
    if (k < 0) return 0;
    if (k > n) return 0;
    uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * uint64_t(n - k + i) / uint64_t(i);
        if (r >= cap) return cap;
    }
    return r;
}

}  // namespace

TEST_CASE("phase polynomial extraction examples") {
    QuantumCircuit h;
    h.width = 1;
    h.h(0);
    PhasePolynomialMod8 p = extract_phase_polynomial(h, "0", "0");
    CHECK(p.v == 0);
    CHECK(p.scale_exponent == 1);
    CHECK(p.constant == 0);
    CyclotomicAmplitude amp = direct_sum(p);
    CHECK(amp.a0 == 1);
    CHECK(std::abs(amp.to_complex() - 1.0 / std::numbers::sqrt2) < 1e-12);

    QuantumCircuit t;
    t.width = 1;
    t.t(0);
    PhasePolynomialMod8 pt = extract_phase_polynomial(t, "1", "1");
    CHECK(pt.v == 0);
    CHECK(pt.constant == 1);
    CHECK(std::abs(direct_sum(pt).to_complex() - kOmega) < 1e-12);

    QuantumCircuit hth;
    hth.width = 1;
    hth.h(0);
    hth.t(0);
    hth.h(0);
    PhasePolynomialMod8 ph = extract_phase_polynomial(hth, "0", "0");
    CHECK(ph.v == 1);
    CHECK(ph.scale_exponent == 2);
    CHECK(std::abs(direct_sum(ph).to_complex() - (1.0 + kOmega) / 2.0) < 1e-12);

    QuantumCircuit bad;
    bad.width = 1;
    bad.x(0);
    CHECK_THROWS_AS(extract_phase_polynomial(bad, "0", "0"), std::invalid_argument);
}

TEST_CASE("inconsistent boundary gives a flagged exact zero") {
    QuantumCircuit id;
    id.width = 2;
    PhasePolynomialMod8 p = extract_phase_polynomial(id, "01", "00");
    CHECK(p.inconsistent);
    CHECK(direct_sum(p).is_exact_zero());

    PathsumReport rep = pathsum_report(id, "01", "00");
    CHECK(rep.inconsistent);
    CHECK(rep.amp.is_exact_zero());
}

TEST_CASE("direct_sum basics") {
    PhasePolynomialMod8 p;
    p.v = 1;
    p.linear = {4};
    p.quad_rows = {0};
    p.scale_exponent = 0;
    CHECK(direct_sum(p).is_exact_zero());  // 1 + w^4 = 0

    p.linear = {1};
    CyclotomicAmplitude a = direct_sum(p);
    CHECK(a.a0 == 1);
    CHECK(a.a1 == 1);

    PhasePolynomialMod8 z;
    z.v = 3;
    z.linear = {0, 0, 0};
    z.quad_rows = {0, 0, 0};
    CHECK(direct_sum(z).a0 == 8);
}

TEST_CASE("indicator q parity table on 0..255") {
    for (int y = 0; y <= 255; ++y) {
        bool odd = mod_pos(indicator_q_scalar(y), 2) == 1;
        CHECK(odd == (y % 8 == 0));
    }
}

TEST_CASE("indicator polynomial flags p = j mod 8") {
    // p(x) = x1, j = 1: odd exactly on x1 = 1.
    PhasePolynomialMod8 p;
    p.v = 1;
    p.linear = {1};
    p.quad_rows = {0};
    IntPolynomial pj = indicator_poly(p, 1);
    CHECK(mod_pos(pj.eval(0), 2) == 0);
    CHECK(mod_pos(pj.eval(1), 2) == 1);

    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 12; ++trial) {
        int v = 2 + int(rng() % 6);
        PhasePolynomialMod8 q = random_phase_poly(rng, v);
        int j = int(rng() % 8);
        IntPolynomial qj = indicator_poly(q, j);
        CHECK(qj.degree() <= 14);
        for (uint64_t x = 0; x < (uint64_t(1) << v); ++x) {
            bool flag = q.eval_integer(x) % 8 == j;
            CHECK(mod_pos(qj.eval(x), 2) == (flag ? 1 : 0));
        }
    }
}

TEST_CASE("modulus amplifier") {
    UnivariatePolynomial r1 = mod_amplifier(1);
    CHECK(r1.degree() == 1);
    CHECK(r1.eval(3) == 3);

    UnivariatePolynomial r2 = mod_amplifier(2);
    CHECK(r2.degree() == 3);
    // r2(x) = x^2 (3 - 2x)
    CHECK(r2.eval(3) == -27);
    CHECK(mod_pos(r2.eval(3), 4) == 1);
    CHECK(r2.eval(2) == -4);
    CHECK(mod_pos(r2.eval(2), 4) == 0);

    for (int k = 1; k <= 6; ++k) {
        UnivariatePolynomial rk = mod_amplifier(k);
        CHECK(rk.degree() == 2 * k - 1);
        for (int x = -50; x <= 50; ++x) {
            int64_t got = mod_pos(rk.eval(x), int64_t(1) << k);
            CHECK(got == mod_pos(BigInt((x % 2 + 2) % 2), int64_t(1) << k));
        }
    }
}

TEST_CASE("partial sums recover clause counts mod 2^{k+1}") {
    // p(x) = x1 + x2, v = 2, k = 1, j = 0.
    PhasePolynomialMod8 p;
    p.v = 2;
    p.linear = {1, 1};
    p.quad_rows = {0, 0};
    IntPolynomial p0 = indicator_poly(p, 0);
    IntPolynomial s = partial_sum(p0, 1);
    CHECK(s.vars == 1);
    CHECK(mod_pos(s.eval(0), 4) == 1);  // z=0 gives p=0
    CHECK(mod_pos(s.eval(1), 4) == 0);  // no z with p=0 mod 8

    // p == 0: every z satisfies j=0, none satisfies j=1.
    PhasePolynomialMod8 zero;
    zero.v = 3;
    zero.linear = {0, 0, 0};
    zero.quad_rows = {0, 0, 0};
    for (int k = 1; k <= 2; ++k) {
        IntPolynomial s0 = partial_sum(indicator_poly(zero, 0), k);
        IntPolynomial s1 = partial_sum(indicator_poly(zero, 1), k);
        for (uint64_t y = 0; y < (uint64_t(1) << (3 - k)); ++y) {
            CHECK(mod_pos(s0.eval(y), int64_t(1) << (k + 1)) == (int64_t(1) << k));
            CHECK(mod_pos(s1.eval(y), int64_t(1) << (k + 1)) == 0);
        }
    }

    CHECK_THROWS_AS(partial_sum(indicator_poly(zero, 0), 3), std::invalid_argument);
}

TEST_CASE("partial-sum congruence law on random polynomials") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 10; ++trial) {
        int v = 4 + int(rng() % 7);  // up to 10
        PhasePolynomialMod8 p = random_phase_poly(rng, v);
        int k = 1 + int(rng() % 3);
        int j = int(rng() % 8);
        IntPolynomial pj = indicator_poly(p, j);
        IntPolynomial s = partial_sum(pj, k);
        int w = v - k;
        // Term-count bound from the binomial cost factor.
        uint64_t cap = uint64_t(1) << w;
        uint64_t bound = 0;
        for (int d = 0; d <= std::min(14 * (2 * k + 1), w); ++d) {
            bound += binom_capped(w, d, cap);
            if (bound >= cap) {
                bound = cap;
                break;
            }
        }
        CHECK(uint64_t(s.terms.size()) <= bound);
        int64_t modulus = int64_t(1) << (k + 1);
        for (uint64_t y = 0; y < (uint64_t(1) << w); ++y) {
            int64_t truth = 0;
            for (uint64_t z = 0; z < (uint64_t(1) << k); ++z)
                if (p.eval_integer(y | (z << w)) % 8 == j) ++truth;
            CHECK(mod_pos(s.eval(y), modulus) == truth % modulus);
        }
    }
}

TEST_CASE("evaluate_all examples and pointwise agreement") {
    IntPolynomial m;
    m.vars = 2;
    m.terms[0b11] = 1;  // x1 x2
    auto t1 = evaluate_all(m, 1 << 20);
    CHECK(t1 == std::vector<uint64_t>{0, 0, 0, 1});

    IntPolynomial a;
    a.vars = 2;
    a.terms[0] = 3;
    a.terms[0b01] = 2;  // 3 + 2 x1
    auto t2 = evaluate_all(a, 4);
    CHECK(t2 == std::vector<uint64_t>{3, 3, 1, 1});

    std::mt19937_64 rng(83);
    IntPolynomial r;
    r.vars = 10;
    for (int i = 0; i < 60; ++i) {
        uint64_t mask = 0;
        for (int d = 0; d < 3; ++d) mask |= uint64_t(1) << (rng() % 10);
        r.terms[mask] += int(rng() % 1000) - 500;
    }
    uint64_t modulus = uint64_t(1) << 30;
    auto table = evaluate_all(r, modulus);
    for (int trial = 0; trial < 50; ++trial) {
        uint64_t x = rng() % 1024;
        // Table index is the big-endian string; variable i is bit 9-i.
        uint64_t assignment = 0;
        for (int i = 0; i < 10; ++i)
            if (x >> (9 - i) & 1) assignment |= uint64_t(1) << i;
        BigInt expect = r.eval(assignment) % int64_t(modulus);
        if (expect < 0) expect += int64_t(modulus);
        CHECK(table[x] == expect.convert_to<uint64_t>());
    }
}

TEST_CASE("count_roots_mod8 examples") {
    PhasePolynomialMod8 p;
    p.v = 2;
    p.linear = {1, 1};
    p.quad_rows = {0, 0};
    auto n = count_roots_mod8(p, 1);
    CHECK(n[0] == 1);
    CHECK(n[1] == 2);
    CHECK(n[2] == 1);
    CHECK(n[3] + n[4] + n[5] + n[6] + n[7] == 0);

    PhasePolynomialMod8 zero;
    zero.v = 3;
    zero.linear = {0, 0, 0};
    zero.quad_rows = {0, 0, 0};
    auto nz = count_roots_mod8(zero, 1);
    CHECK(nz[0] == 8);

    PhasePolynomialMod8 q;
    q.v = 2;
    q.linear = {0, 0};
    q.quad_rows = {0b10, 0};  // 4 x1 x2
    auto nq = count_roots_mod8(q, 1);
    CHECK(nq[0] == 3);
    CHECK(nq[4] == 1);

    CHECK_THROWS_AS(count_roots_mod8(q, 2), std::invalid_argument);
    CHECK_THROWS_AS(count_roots_mod8(q, 0), std::invalid_argument);
}

TEST_CASE("counting equals direct enumeration exactly") {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 40; ++trial) {
        int v = 4 + int(rng() % 9);  // 4..12
        PhasePolynomialMod8 p = random_phase_poly(rng, v);
        CyclotomicAmplitude d = direct_sum(p);
        for (int k = 1; k <= 3; ++k) {
            CyclotomicAmplitude c = counting_sum(p, k);
            CHECK(d.same_value(c));
        }
    }
}

TEST_CASE("path-sum engines agree with the statevector oracle on circuits") {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 25; ++trial) {
        int width = 2 + int(rng() % 7);  // up to 8 qubits
        int h = 4 + int(rng() % 11);     // up to 14 H gates
        QuantumCircuit qc = random_htcz(rng, width, h, 10);
        std::string a(width, '0'), b(width, '0');
        for (auto& ch : a) ch = char('0' + (rng() & 1));
        for (auto& ch : b) ch = char('0' + (rng() & 1));

        std::complex<double> oracle = amplitude(qc, a, b);
        PhasePolynomialMod8 p = extract_phase_polynomial(qc, a, b);
        CHECK(p.v <= p.scale_exponent);
        CyclotomicAmplitude ds = direct_sum(p);
        CHECK(std::abs(ds.to_complex() - oracle) < 1e-9);
        CyclotomicAmplitude cs = amplitude_via_counting(qc, a, b);
        CHECK(std::abs(cs.to_complex() - oracle) < 1e-9);
        if (p.v >= 2 && !p.inconsistent) CHECK(ds.same_value(cs));
    }
}

TEST_CASE("k selection rule") {
    CHECK(choose_split_k(2) == 1);
    CHECK(choose_split_k(16) == 1);
    CHECK(choose_split_k(80) == 1);
    CHECK(choose_split_k(200) == 3);
}
