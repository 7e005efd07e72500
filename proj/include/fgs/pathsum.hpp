#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fgs/quantum.hpp"

namespace fgs {

using BigInt = boost::multiprecision::cpp_int;

// Degree-2 phase polynomial mod 8: amplitude = 2^{-h/2} sum_x omega^{p(x)}
// with omega = e^{i pi/4}. Cross terms carry (-1) phases, so every quadratic
// coefficient is 0 or 4.
struct PhasePolynomialMod8 {
    int v = 0;
    uint8_t constant = 0;
    std::vector<uint8_t> linear;      // alpha_i in Z_8
    std::vector<uint64_t> quad_rows;  // bit j>i of quad_rows[i] set <=> q_ij = 4
    int scale_exponent = 0;           // h (counts every H gate)
    bool inconsistent = false;        // boundary mismatch: amplitude is exactly 0

    // Exact integer value with coefficients read in [0,8).
    int64_t eval_integer(uint64_t assignment) const;
};

// Multilinear integer polynomial; monomials are variable subsets.
struct IntPolynomial {
    int vars = 0;
    std::map<uint64_t, BigInt> terms;  // subset mask -> coefficient

    int degree() const;
    BigInt eval(uint64_t assignment) const;
};

// Dense univariate integer polynomial (the modulus amplifier is not
// multilinear: genuine powers matter at integer arguments).
struct UnivariatePolynomial {
    std::vector<BigInt> coeffs;  // coeffs[i] * x^i

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    BigInt eval(const BigInt& x) const;
};

// Exact element a0 + a1 w + a2 w^2 + a3 w^3 of Z[w], w = e^{i pi/4},
// divided by sqrt(2)^half_exponent.
struct CyclotomicAmplitude {
    int64_t a0 = 0, a1 = 0, a2 = 0, a3 = 0;
    int half_exponent = 0;
    bool via_fallback = false;  // v < 2: computed by direct enumeration

    std::complex<double> to_complex() const;
    bool is_exact_zero() const { return a0 == 0 && a1 == 0 && a2 == 0 && a3 == 0; }
    bool same_value(const CyclotomicAmplitude& o) const {
        return a0 == o.a0 && a1 == o.a1 && a2 == o.a2 && a3 == o.a3 &&
               half_exponent == o.half_exponent;
    }
};

// Sum-over-paths extraction for {H,T,CZ} circuits: every H introduces a path
// variable, boundary-pinned variables are eliminated by substitution, so
// v <= h.
PhasePolynomialMod8 extract_phase_polynomial(const QuantumCircuit& qc, const std::string& a,
                                             const std::string& b);

// O(2^v) enumeration of sum_x omega^{p(x)}.
CyclotomicAmplitude direct_sum(const PhasePolynomialMod8& p);

// Degree-7 bit-indicator product q(y) = (1-C(y,1))(1-C(y,2))(1-C(y,4)):
// odd exactly when y = 0 mod 8, for y >= 0.
BigInt indicator_q_scalar(int64_t y);

// Multilinear p_j with p_j(x) = g_j(x) mod 2, where g_j flags
// p(x) = j mod 8; degree <= 14.
IntPolynomial indicator_poly(const PhasePolynomialMod8& p, int j);

// Modulus amplifier r_k(x) = x^k sum_{j<k} C(k-1+j,j)(1-x)^j of degree
// 2k-1: even -> 0 and odd -> 1 modulo 2^k.
UnivariatePolynomial mod_amplifier(int k);

// s_{j,k}(y) = sum_{z in {0,1}^k} r_{k+1}(p_j(y,z)) over the first v-k
// variables, coefficients reduced mod 2^{k+1}.
IntPolynomial partial_sum(const IntPolynomial& p_j, int k);

// Value of a multilinear polynomial at every assignment via the subset zeta
// transform. Table index is the big-endian assignment string x_1...x_w.
std::vector<uint64_t> evaluate_all(const IntPolynomial& poly, uint64_t modulus);

struct PipelineStats {
    uint64_t max_partial_sum_terms = 0;
};

// N_j = #{x : p(x) = j mod 8} via indicator -> amplifier -> partial sums ->
// evaluate-all. Always checks sum_j N_j = 2^v.
std::array<int64_t, 8> count_roots_mod8(const PhasePolynomialMod8& p, int k,
                                        PipelineStats* stats = nullptr);

CyclotomicAmplitude counting_sum(const PhasePolynomialMod8& p, int k,
                                 PipelineStats* stats = nullptr);

// k = max(1, floor(0.015035 * v)), clamped below v.
int choose_split_k(int v);

struct PathsumReport {
    CyclotomicAmplitude amp;
    int v = 0;
    int k = 0;
    uint64_t term_count = 0;
    bool fallback = false;
    bool inconsistent = false;
};

PathsumReport pathsum_report(const QuantumCircuit& qc, const std::string& a,
                             const std::string& b);

// extract -> count_roots -> assemble; falls back to direct_sum when v < 2.
CyclotomicAmplitude amplitude_via_counting(const QuantumCircuit& qc, const std::string& a,
                                           const std::string& b);

PhasePolynomialMod8 random_phase_poly(std::mt19937_64& rng, int v);

}  // namespace fgs
