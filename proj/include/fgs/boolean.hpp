#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgs {

// Parse failure carrying the 1-based input line it was detected on.
class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// DIMACS-style signed literal: variable index in [1, n], negative means complemented.
using Literal = int;
using Clause = std::vector<Literal>;

struct CnfFormula {
    int n = 0;
    std::vector<Clause> clauses;

    int clause_count() const { return static_cast<int>(clauses.size()); }
    int max_clause_width() const;
    // m/n; informational only.
    double clause_density() const { return n == 0 ? 0.0 : double(clauses.size()) / n; }
};

bool operator==(const CnfFormula& a, const CnfFormula& b);

CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(const std::string& text);
std::string cnf_to_dimacs(const CnfFormula& f);

enum class BoolOp { And, Or, Not };

// Wire indices: 0..n-1 are primary inputs, n+j is the output of gates[j].
struct BoolGate {
    BoolOp op;
    int a = -1;
    int b = -1;  // unused for Not

    friend bool operator==(const BoolGate&, const BoolGate&) = default;
};

struct BooleanCircuit {
    int n = 0;
    std::vector<BoolGate> gates;
    int output = -1;

    int wire_count() const { return n + static_cast<int>(gates.size()); }
    int and_or_count() const;
    void validate() const;

    friend bool operator==(const BooleanCircuit&, const BooleanCircuit&) = default;
};

bool eval(const CnfFormula& f, const std::vector<uint8_t>& x);
bool eval(const BooleanCircuit& f, const std::vector<uint8_t>& x);

struct CountReport {
    int64_t sharp = 0;
    int64_t gap = 0;
    int n = 0;

    friend bool operator==(const CountReport&, const CountReport&) = default;
};

inline constexpr int kDefaultEnumerationCap = 28;

// Cap on n for exhaustive counting; FGS_ENUM_CAP overrides the default.
int enumeration_cap();

class enumeration_limit_error : public std::runtime_error {
public:
    enumeration_limit_error(int n, int cap)
        : std::runtime_error("n=" + std::to_string(n) +
                             " exceeds enumeration cap " + std::to_string(cap)) {}
};

CountReport count(const CnfFormula& f);
CountReport count(const BooleanCircuit& f);

// Balanced OR tree per clause, balanced AND tree over clauses; a width-3
// clause lowers to exactly two binary ORs.
BooleanCircuit lower_to_circuit(const CnfFormula& f);

// g(x, x_{n+1}) = [x_{n+1} & !f(x)] | [!x_{n+1} & (x_1 & ... & x_n)],
// so gap(g) = 2^n - 2 + sum_x (-1)^{!f(x)} = 2(#f - 1).
BooleanCircuit unique_gap_reduction(const BooleanCircuit& f);

// Text format: optional "inputs <n>" header, one gate per line
// ("g1 = AND x1 x2", "g2 = NOT g1", ...), final line "out g<i>".
BooleanCircuit parse_circuit_text(std::istream& in);
BooleanCircuit parse_circuit_text(const std::string& text);
std::string circuit_to_text(const BooleanCircuit& f);

}  // namespace fgs
