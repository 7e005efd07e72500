#include "fgs/reversible.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace fgs {

int ceil_log2(int64_t v) {
    int r = 0;
    while ((int64_t(1) << r) < v) ++r;
    return r;
}

void RGate::validate(int width) const {
    auto check = [&](int b) {
        if (b < 0 || b >= width) throw std::invalid_argument("bit index out of range");
    };
    check(target);
    if (kind == RKind::Toffoli) {
        check(c1);
        check(c2);
        if (c1 == c2 || c1 == target || c2 == target)
            throw std::invalid_argument("TOFFOLI bits must be distinct");
    } else if (kind == RKind::GToffoli) {
        std::set<int> seen{target};
        for (const auto& c : controls) {
            check(c.bit);
            if (!seen.insert(c.bit).second)
                throw std::invalid_argument("GTOF bits must be distinct");
        }
    }
}

void ReversibleCircuit::validate() const {
    for (const auto& g : gates) g.validate(width);
}

std::vector<RGate> and_gadget(int a, int b, int anc) {
    return {RGate::toffoli(a, b, anc)};
}

std::vector<RGate> or_gadget(int a, int b, int anc) {
    return {RGate::not_gate(a),   RGate::not_gate(b), RGate::toffoli(a, b, anc),
            RGate::not_gate(anc), RGate::not_gate(a), RGate::not_gate(b)};
}

ReversibleCircuit build_counter(int r) {
    if (r < 1) throw std::invalid_argument("counter needs r >= 1");
    ReversibleCircuit c;
    c.width = 1 + r;
    // Register bit i (index 1+i) holds weight 2^{r-1-i}; bit i flips iff a
    // and every less significant bit are 1.
    for (int i = 0; i < r; ++i) {
        std::vector<PolarityControl> cs{{0, true}};
        for (int j = i + 1; j < r; ++j) cs.push_back({1 + j, true});
        c.gates.push_back(RGate::gtoffoli(std::move(cs), 1 + i));
    }
    return c;
}

namespace {

// Appends the counter cascade for "register += a" with the register bits
// at absolute indices reg[0..r-1] (big-endian).
void emit_counter(std::vector<RGate>& gates, int a, const std::vector<int>& reg) {
    int r = static_cast<int>(reg.size());
    for (int i = 0; i < r; ++i) {
        std::vector<PolarityControl> cs{{a, true}};
        for (int j = i + 1; j < r; ++j) cs.push_back({reg[j], true});
        gates.push_back(RGate::gtoffoli(std::move(cs), reg[i]));
    }
}

// OR of two wires whose logical values are (wire a xor !pa), (wire b xor !pb),
// written into a zeroed anc; both wires are restored.
void emit_or(std::vector<RGate>& gates, int a, bool pa, int b, bool pb, int anc) {
    if (pa) gates.push_back(RGate::not_gate(a));
    if (pb) gates.push_back(RGate::not_gate(b));
    gates.push_back(RGate::toffoli(a, b, anc));
    gates.push_back(RGate::not_gate(anc));
    if (pa) gates.push_back(RGate::not_gate(a));
    if (pb) gates.push_back(RGate::not_gate(b));
}

}  // namespace

ReversibleCircuit compile_cnf_counter(const CnfFormula& f) {
    int k = f.max_clause_width();
    int m = f.clause_count();
    if (m < 1) throw std::invalid_argument("formula needs at least one clause");
    if (k > f.n) throw std::invalid_argument("clause width exceeds variable count");
    for (const auto& c : f.clauses)
        for (Literal l : c) {
            int v = l < 0 ? -l : l;
            if (v < 1 || v > f.n) throw std::invalid_argument("literal out of range");
        }

    int r = ceil_log2(m + 1);
    ReversibleCircuit out;
    out.ledger.n = f.n;
    out.ledger.clause_scratch = k - 1;
    out.ledger.counter = r;
    out.ledger.borrowed = 1;
    out.ledger.output = 1;
    out.ledger.xi = (k - 1) + r + 1 + 1;
    out.width = f.n + out.ledger.xi;

    int scratch0 = f.n;
    std::vector<int> reg(r);
    for (int i = 0; i < r; ++i) reg[i] = f.n + (k - 1) + i;
    int output_bit = f.n + (k - 1) + r + 1;
    out.ledger.output_bit = output_bit;

    for (const auto& clause : f.clauses) {
        // Literals over distinct variables; repeated literals collapse and a
        // complementary pair makes the clause constant-true.
        std::map<int, int> pol;  // var -> +1 / -1 / 0 (tautology)
        bool taut = false;
        for (Literal l : clause) {
            int v = l < 0 ? -l : l;
            int s = l < 0 ? -1 : 1;
            auto it = pol.find(v);
            if (it == pol.end())
                pol[v] = s;
            else if (it->second != s)
                taut = true;
        }
        if (taut) {
            // Constant-true clause: unconditional increment through the first
            // scratch bit (a tautology needs width >= 2, so it exists).
            int s = scratch0;
            out.gates.push_back(RGate::not_gate(s));
            emit_counter(out.gates, s, reg);
            out.gates.push_back(RGate::not_gate(s));
            continue;
        }
        std::vector<std::pair<int, bool>> lits;  // (bit, positive)
        for (auto [v, s] : pol) lits.emplace_back(v - 1, s > 0);
        if (lits.size() == 1) {
            auto [bit, pos] = lits[0];
            if (!pos) out.gates.push_back(RGate::not_gate(bit));
            emit_counter(out.gates, bit, reg);
            if (!pos) out.gates.push_back(RGate::not_gate(bit));
            continue;
        }
        // Chain the OR into scratch bits, add to the counter, then uncompute
        // the chain so the scratch returns to 0.
        std::vector<RGate> chain;
        emit_or(chain, lits[0].first, lits[0].second, lits[1].first, lits[1].second, scratch0);
        for (size_t i = 2; i < lits.size(); ++i)
            emit_or(chain, scratch0 + static_cast<int>(i) - 2, true, lits[i].first,
                    lits[i].second, scratch0 + static_cast<int>(i) - 1);
        int clause_bit = scratch0 + static_cast<int>(lits.size()) - 2;
        out.gates.insert(out.gates.end(), chain.begin(), chain.end());
        emit_counter(out.gates, clause_bit, reg);
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) out.gates.push_back(*it);
    }

    // Fire the output bit iff the counter equals m.
    std::vector<PolarityControl> cmp;
    for (int i = 0; i < r; ++i) cmp.push_back({reg[i], ((m >> (r - 1 - i)) & 1) != 0});
    out.gates.push_back(RGate::gtoffoli(std::move(cmp), output_bit));
    out.validate();
    return out;
}

namespace {

struct ResolvedWire {
    int bit = -1;       // physical bit index
    bool positive = true;
    bool is_gate = false;
    int gate_index = -1;
};

}  // namespace

ReversibleCircuit compile_boolean_naive(const BooleanCircuit& f) {
    f.validate();
    int xi = f.and_or_count();
    ReversibleCircuit out;
    out.width = f.n + xi;
    out.ledger.n = f.n;
    out.ledger.xi = xi;
    out.ledger.output = xi > 0 ? 1 : 0;

    // Follow NOT chains down to an input or an AND/OR gate.
    auto resolve = [&](int wire) {
        bool pos = true;
        while (wire >= f.n && f.gates[wire - f.n].op == BoolOp::Not) {
            pos = !pos;
            wire = f.gates[wire - f.n].a;
        }
        ResolvedWire r;
        r.positive = pos;
        if (wire >= f.n) {
            r.is_gate = true;
            r.gate_index = wire - f.n;
        } else {
            r.bit = wire;
        }
        return r;
    };

    // The gate the circuit output resolves to gets the last ancilla.
    ResolvedWire out_res = resolve(f.output);
    std::vector<int> anc_of(f.gates.size(), -1);
    int next = f.n;
    for (size_t i = 0; i < f.gates.size(); ++i) {
        if (f.gates[i].op == BoolOp::Not) continue;
        if (out_res.is_gate && static_cast<int>(i) == out_res.gate_index) continue;
        anc_of[i] = next++;
    }
    if (out_res.is_gate) anc_of[out_res.gate_index] = f.n + xi - 1;

    auto bit_of = [&](const ResolvedWire& r) { return r.is_gate ? anc_of[r.gate_index] : r.bit; };

    for (size_t i = 0; i < f.gates.size(); ++i) {
        const auto& g = f.gates[i];
        if (g.op == BoolOp::Not) continue;
        ResolvedWire ra = resolve(g.a);
        ResolvedWire rb = resolve(g.b);
        int a = bit_of(ra), b = bit_of(rb);
        int anc = anc_of[i];
        bool pa = ra.positive, pb = rb.positive;
        if (a != b) {
            if (g.op == BoolOp::And) {
                if (!pa) out.gates.push_back(RGate::not_gate(a));
                if (!pb) out.gates.push_back(RGate::not_gate(b));
                out.gates.push_back(RGate::toffoli(a, b, anc));
                if (!pa) out.gates.push_back(RGate::not_gate(a));
                if (!pb) out.gates.push_back(RGate::not_gate(b));
            } else {
                emit_or(out.gates, a, pa, b, pb, anc);
            }
        } else {
            // Degenerate gate over one wire: AND/OR collapse to a copy, a
            // constant 0 (emit nothing) or a constant 1.
            bool same_pol = pa == pb;
            if (same_pol) {
                if (!pa) out.gates.push_back(RGate::not_gate(a));
                out.gates.push_back(RGate::cnot(a, anc));
                if (!pa) out.gates.push_back(RGate::not_gate(a));
            } else if (g.op == BoolOp::Or) {
                out.gates.push_back(RGate::not_gate(anc));
            }
        }
    }

    int out_bit = bit_of(out_res);
    if (!out_res.positive) out.gates.push_back(RGate::not_gate(out_bit));
    out.ledger.output_bit = out_bit;
    out.validate();
    return out;
}

ReversibleCircuit compile_boolean_naive(const CnfFormula& f) {
    return compile_boolean_naive(lower_to_circuit(f));
}

namespace {

// Two-pass V-chain: k >= 3 positive controls, k-2 borrowed bits with
// arbitrary values (restored), 4(k-2) TOFFOLIs.
void vchain(std::vector<RGate>& out, const std::vector<int>& ctrl, int target,
            const std::vector<int>& anc) {
    int k = static_cast<int>(ctrl.size());
    auto tof_at = [&](int i) {
        int tgt = (i == k - 1) ? target : anc[i - 1];
        out.push_back(RGate::toffoli(ctrl[i], anc[i - 2], tgt));
    };
    for (int i = k - 1; i >= 2; --i) tof_at(i);
    out.push_back(RGate::toffoli(ctrl[0], ctrl[1], anc[0]));
    for (int i = 2; i <= k - 1; ++i) tof_at(i);
    for (int i = k - 2; i >= 2; --i) tof_at(i);
    out.push_back(RGate::toffoli(ctrl[0], ctrl[1], anc[0]));
    for (int i = 2; i <= k - 2; ++i) tof_at(i);
}

// C^kX with positive controls, drawing borrowed bits from `pool`.
void cnx(std::vector<RGate>& out, std::vector<int> ctrl, int target, std::vector<int> pool) {
    int k = static_cast<int>(ctrl.size());
    if (k == 0) {
        out.push_back(RGate::not_gate(target));
        return;
    }
    if (k == 1) {
        out.push_back(RGate::cnot(ctrl[0], target));
        return;
    }
    if (k == 2) {
        out.push_back(RGate::toffoli(ctrl[0], ctrl[1], target));
        return;
    }
    if (static_cast<int>(pool.size()) >= k - 2) {
        vchain(out, ctrl, target, {pool.begin(), pool.begin() + (k - 2)});
        return;
    }
    if (pool.empty()) throw std::invalid_argument("insufficient free bit for decomposition");
    // One borrowed bit: split the controls and interleave the two halves
    // twice; each half sees the other half's wires as borrowable.
    int b = pool[0];
    int m1 = (k + 1) / 2;
    std::vector<int> first(ctrl.begin(), ctrl.begin() + m1);
    std::vector<int> second(ctrl.begin() + m1, ctrl.end());
    std::vector<int> pool_a = second;
    pool_a.push_back(target);
    std::vector<int> ctrl_b = second;
    ctrl_b.push_back(b);
    std::vector<int> pool_b = first;
    for (int rep = 0; rep < 2; ++rep) {
        cnx(out, first, b, pool_a);
        cnx(out, ctrl_b, target, pool_b);
    }
}

}  // namespace

std::vector<RGate> decompose_gtoffoli(const RGate& g, int borrowed_ancilla) {
    if (g.kind != RKind::GToffoli) throw std::invalid_argument("gate is not a GTOF");
    for (const auto& c : g.controls)
        if (c.bit == borrowed_ancilla)
            throw std::invalid_argument("borrowed ancilla collides with a control");
    if (g.target == borrowed_ancilla)
        throw std::invalid_argument("borrowed ancilla collides with the target");

    std::vector<RGate> out;
    std::vector<int> ctrl;
    for (const auto& c : g.controls) {
        if (!c.positive) out.push_back(RGate::not_gate(c.bit));
        ctrl.push_back(c.bit);
    }
    cnx(out, ctrl, g.target, {borrowed_ancilla});
    for (const auto& c : g.controls)
        if (!c.positive) out.push_back(RGate::not_gate(c.bit));
    return out;
}

ReversibleCircuit decompose_all_gtoffoli(const ReversibleCircuit& c, int borrowed_ancilla) {
    ReversibleCircuit out = c;
    out.gates.clear();
    for (const auto& g : c.gates) {
        if (g.kind == RKind::GToffoli && g.controls.size() >= 2) {
            auto sub = decompose_gtoffoli(g, borrowed_ancilla);
            out.gates.insert(out.gates.end(), sub.begin(), sub.end());
        } else {
            out.gates.push_back(g);
        }
    }
    return out;
}

void apply_rgate(const RGate& g, std::vector<uint8_t>& bits) {
    switch (g.kind) {
        case RKind::Not:
            bits[g.target] ^= 1;
            break;
        case RKind::Toffoli:
            bits[g.target] ^= bits[g.c1] & bits[g.c2];
            break;
        case RKind::GToffoli: {
            uint8_t fire = 1;
            for (const auto& c : g.controls)
                fire &= (bits[c.bit] == (c.positive ? 1 : 0)) ? 1 : 0;
            bits[g.target] ^= fire;
            break;
        }
    }
}

std::vector<uint8_t> run_reversible(const ReversibleCircuit& c, std::vector<uint8_t> input) {
    if (static_cast<int>(input.size()) != c.width)
        throw std::invalid_argument("input length " + std::to_string(input.size()) +
                                    " != width " + std::to_string(c.width));
    for (const auto& g : c.gates) apply_rgate(g, input);
    return input;
}

ReversibleCircuit reverse_circuit(const ReversibleCircuit& c) {
    ReversibleCircuit out = c;
    std::reverse(out.gates.begin(), out.gates.end());
    return out;
}

ReversibleCircuit parse_reversible_text(std::istream& in) {
    ReversibleCircuit c;
    std::string line;
    int lineno = 0;
    bool have_width = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream iss(line);
        std::string op;
        if (!(iss >> op) || op == "#") continue;
        if (op == "width") {
            if (!(iss >> c.width) || c.width < 1) throw parse_error(lineno, "bad width");
            have_width = true;
            continue;
        }
        if (!have_width) throw parse_error(lineno, "gate before width line");
        if (op == "NOT") {
            int t;
            if (!(iss >> t)) throw parse_error(lineno, "NOT needs a target");
            c.gates.push_back(RGate::not_gate(t));
        } else if (op == "TOF") {
            int a, b, t;
            if (!(iss >> a >> b >> t)) throw parse_error(lineno, "TOF needs c1 c2 t");
            c.gates.push_back(RGate::toffoli(a, b, t));
        } else if (op == "GTOF") {
            std::vector<std::string> toks;
            std::string tok;
            while (iss >> tok) toks.push_back(tok);
            if (toks.empty()) throw parse_error(lineno, "GTOF needs controls and a target");
            std::vector<PolarityControl> cs;
            for (size_t i = 0; i + 1 < toks.size(); ++i) {
                if (toks[i].size() < 2 || (toks[i][0] != '+' && toks[i][0] != '-'))
                    throw parse_error(lineno, "GTOF control must be +bit or -bit");
                cs.push_back({std::stoi(toks[i].substr(1)), toks[i][0] == '+'});
            }
            c.gates.push_back(RGate::gtoffoli(std::move(cs), std::stoi(toks.back())));
        } else {
            throw parse_error(lineno, "unknown gate '" + op + "'");
        }
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw parse_error(lineno, e.what());
    }
    return c;
}

ReversibleCircuit parse_reversible_text(const std::string& text) {
    std::istringstream iss(text);
    return parse_reversible_text(iss);
}

std::string reversible_to_text(const ReversibleCircuit& c) {
    std::ostringstream os;
    os << "width " << c.width << "\n";
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case RKind::Not:
                os << "NOT " << g.target << "\n";
                break;
            case RKind::Toffoli:
                os << "TOF " << g.c1 << " " << g.c2 << " " << g.target << "\n";
                break;
            case RKind::GToffoli:
                os << "GTOF";
                for (const auto& pc : g.controls)
                    os << " " << (pc.positive ? '+' : '-') << pc.bit;
                os << " " << g.target << "\n";
                break;
        }
    }
    return os.str();
}

}  // namespace fgs
