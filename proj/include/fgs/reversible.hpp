#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fgs/boolean.hpp"

namespace fgs {

struct PolarityControl {
    int bit = -1;
    bool positive = true;

    friend bool operator==(const PolarityControl&, const PolarityControl&) = default;
};

enum class RKind { Not, Toffoli, GToffoli };

// GToffoli with a single positive control is the CNOT of this gate set.
struct RGate {
    RKind kind = RKind::Not;
    int target = -1;
    int c1 = -1, c2 = -1;               // Toffoli controls
    std::vector<PolarityControl> controls;  // GToffoli controls

    static RGate not_gate(int t) { return RGate{RKind::Not, t, -1, -1, {}}; }
    static RGate toffoli(int c1, int c2, int t) { return RGate{RKind::Toffoli, t, c1, c2, {}}; }
    static RGate gtoffoli(std::vector<PolarityControl> cs, int t) {
        return RGate{RKind::GToffoli, t, -1, -1, std::move(cs)};
    }
    static RGate cnot(int c, int t) { return gtoffoli({{c, true}}, t); }

    void validate(int width) const;

    friend bool operator==(const RGate&, const RGate&) = default;
};

struct AncillaLedger {
    int n = 0;
    int xi = 0;
    // Breakdown for the counter compilation; all zero for the naive one.
    int clause_scratch = 0;
    int counter = 0;
    int borrowed = 0;
    int output = 0;
    int output_bit = -1;

    friend bool operator==(const AncillaLedger&, const AncillaLedger&) = default;
};

struct ReversibleCircuit {
    int width = 0;
    std::vector<RGate> gates;
    AncillaLedger ledger;

    void validate() const;

    friend bool operator==(const ReversibleCircuit&, const ReversibleCircuit&) = default;
};

// AND(a,b) -> anc as one TOFFOLI; OR(a,b) -> anc as a NOT-conjugated TOFFOLI
// that restores a and b. anc must start at 0.
std::vector<RGate> and_gadget(int a, int b, int anc);
std::vector<RGate> or_gadget(int a, int b, int anc);

// |a>|b> -> |a>|b + a mod 2^r> on 1+r bits (a at index 0, b big-endian on
// 1..r), cascaded widest-first from r generalized TOFFOLIs.
ReversibleCircuit build_counter(int r);

// Clause-by-clause counter compilation of a k-CNF. Bit layout: payload,
// k-1 clause scratch, ceil(log2(m+1)) counter, 1 borrowed, 1 output.
ReversibleCircuit compile_cnf_counter(const CnfFormula& f);

// One fresh ancilla per AND/OR gate; the output gate's ancilla is the last
// bit, so |x>|0^xi> -> |junk(x)>|f(x)>.
ReversibleCircuit compile_boolean_naive(const BooleanCircuit& f);
ReversibleCircuit compile_boolean_naive(const CnfFormula& f);

// Borrowed-ancilla decomposition: the ancilla may hold any value and is
// restored. Output gates are NOT, TOFFOLI and single-control GToffoli.
std::vector<RGate> decompose_gtoffoli(const RGate& g, int borrowed_ancilla);

// Replaces every multi-control GToffoli in the circuit.
ReversibleCircuit decompose_all_gtoffoli(const ReversibleCircuit& c, int borrowed_ancilla);

std::vector<uint8_t> run_reversible(const ReversibleCircuit& c, std::vector<uint8_t> input);
void apply_rgate(const RGate& g, std::vector<uint8_t>& bits);

// Every gate is self-inverse, so the inverse is the reversed gate list.
ReversibleCircuit reverse_circuit(const ReversibleCircuit& c);

// Text format: "width W", then "NOT t" / "TOF c1 c2 t" / "GTOF [+c|-c]... t".
ReversibleCircuit parse_reversible_text(std::istream& in);
ReversibleCircuit parse_reversible_text(const std::string& text);
std::string reversible_to_text(const ReversibleCircuit& c);

int ceil_log2(int64_t v);  // smallest r with 2^r >= v

}  // namespace fgs
