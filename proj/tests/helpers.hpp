#pragma once

#include <random>
#include <vector>

#include "fgs/boolean.hpp"

namespace fgs::testhelp {

// Random AND/OR/NOT circuit with exactly `and_or` AND/OR gates; the output is
// the last gate (or input 0 when there are none).
inline BooleanCircuit random_circuit(std::mt19937_64& rng, int n, int and_or, int nots = 2) {
    BooleanCircuit c;
    c.n = n;
    auto wire = [&]() { return int(rng() % uint64_t(c.wire_count())); };
    int emitted_ao = 0, emitted_not = 0;
    while (emitted_ao < and_or || emitted_not < nots) {
        bool emit_ao = emitted_ao < and_or && (emitted_not >= nots || rng() % 2 == 0);
        if (emit_ao) {
            BoolOp op = rng() % 2 ? BoolOp::And : BoolOp::Or;
            int a = wire(), b = wire();
            if (a == b) b = int(rng() % uint64_t(n));
            if (a == b) {
                // Same-wire gate is legal but avoid it in random corpora.
                a = (b + 1) % c.wire_count();
            }
            c.gates.push_back(BoolGate{op, a, b});
            ++emitted_ao;
        } else {
            c.gates.push_back(BoolGate{BoolOp::Not, wire(), -1});
            ++emitted_not;
        }
    }
    c.output = c.gates.empty() ? 0 : c.wire_count() - 1;
    c.validate();
    return c;
}

// Conjunction pinning: AND over all n inputs with chosen polarities has
// exactly one satisfying assignment; adding a contradictory pair forces zero.
inline BooleanCircuit pinned_circuit(std::mt19937_64& rng, int n, bool satisfiable) {
    BooleanCircuit c;
    c.n = n;
    std::vector<int> lits;
    for (int i = 0; i < n; ++i) {
        if (rng() % 2) {
            lits.push_back(i);
        } else {
            c.gates.push_back(BoolGate{BoolOp::Not, i, -1});
            lits.push_back(c.wire_count() - 1);
        }
    }
    if (!satisfiable) {
        c.gates.push_back(BoolGate{BoolOp::Not, 0, -1});
        lits.push_back(0);
        lits.push_back(c.wire_count() - 1);
    }
    int acc = lits[0];
    for (size_t i = 1; i < lits.size(); ++i) {
        c.gates.push_back(BoolGate{BoolOp::And, acc, lits[i]});
        acc = c.wire_count() - 1;
    }
    c.output = acc;
    c.validate();
    return c;
}

// Random k-CNF with distinct variables per clause.
inline CnfFormula random_kcnf(std::mt19937_64& rng, int n, int m, int k) {
    CnfFormula f;
    f.n = n;
    for (int ci = 0; ci < m; ++ci) {
        std::vector<int> vars(n);
        for (int i = 0; i < n; ++i) vars[i] = i + 1;
        std::shuffle(vars.begin(), vars.end(), rng);
        Clause cl;
        for (int i = 0; i < k; ++i) cl.push_back(rng() % 2 ? vars[i] : -vars[i]);
        f.clauses.push_back(cl);
    }
    return f;
}

inline std::vector<uint8_t> assignment_bits(uint64_t u, int n) {
    std::vector<uint8_t> x(n);
    for (int i = 0; i < n; ++i) x[i] = (u >> (n - 1 - i)) & 1;
    return x;
}

}  // namespace fgs::testhelp
