#include "fgs/boolean.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <thread>

namespace fgs {

int CnfFormula::max_clause_width() const {
    size_t k = 0;
    for (const auto& c : clauses) k = std::max(k, c.size());
    return static_cast<int>(k);
}

bool operator==(const CnfFormula& a, const CnfFormula& b) {
    return a.n == b.n && a.clauses == b.clauses;
}

namespace {

// Splits a line into whitespace tokens.
std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

bool parse_int(const std::string& tok, long& out) {
    if (tok.empty()) return false;
    char* end = nullptr;
    errno = 0;
    long v = std::strtol(tok.c_str(), &end, 10);
    if (errno != 0 || end != tok.c_str() + tok.size()) return false;
    out = v;
    return true;
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula f;
    bool have_header = false;
    long declared_m = 0;
    Clause current;
    bool in_clause = false;
    std::string line;
    int lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "c") continue;
        if (toks[0] == "p") {
            if (have_header) throw parse_error(lineno, "duplicate header");
            if (toks.size() != 4 || toks[1] != "cnf")
                throw parse_error(lineno, "malformed header, expected 'p cnf <n> <m>'");
            long n = 0, m = 0;
            if (!parse_int(toks[2], n) || !parse_int(toks[3], m) || n < 1 || m < 0)
                throw parse_error(lineno, "malformed header counts");
            f.n = static_cast<int>(n);
            declared_m = m;
            have_header = true;
            continue;
        }
        if (!have_header) throw parse_error(lineno, "clause before 'p cnf' header");
        for (const auto& tok : toks) {
            long lit = 0;
            if (!parse_int(tok, lit)) throw parse_error(lineno, "bad token '" + tok + "'");
            if (lit == 0) {
                if (!in_clause) throw parse_error(lineno, "empty clause");
                f.clauses.push_back(current);
                current.clear();
                in_clause = false;
                if (static_cast<long>(f.clauses.size()) > declared_m)
                    throw parse_error(lineno, "more clauses than declared");
                continue;
            }
            long var = lit < 0 ? -lit : lit;
            if (var > f.n)
                throw parse_error(lineno, "literal " + tok + " out of range 1.." + std::to_string(f.n));
            current.push_back(static_cast<Literal>(lit));
            in_clause = true;
        }
    }
    if (in_clause) throw parse_error(lineno, "unterminated clause (missing 0)");
    if (static_cast<long>(f.clauses.size()) != declared_m)
        throw parse_error(lineno, "clause count mismatch: declared " + std::to_string(declared_m) +
                                      ", found " + std::to_string(f.clauses.size()));
    return f;
}

CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream iss(text);
    return parse_dimacs(iss);
}

std::string cnf_to_dimacs(const CnfFormula& f) {
    std::ostringstream os;
    os << "p cnf " << f.n << " " << f.clauses.size() << "\n";
    for (const auto& c : f.clauses) {
        for (Literal l : c) os << l << " ";
        os << "0\n";
    }
    return os.str();
}

int BooleanCircuit::and_or_count() const {
    int k = 0;
    for (const auto& g : gates)
        if (g.op != BoolOp::Not) ++k;
    return k;
}

void BooleanCircuit::validate() const {
    if (n < 1) throw std::invalid_argument("circuit needs at least one input");
    for (size_t i = 0; i < gates.size(); ++i) {
        const auto& g = gates[i];
        int limit = n + static_cast<int>(i);
        if (g.a < 0 || g.a >= limit)
            throw std::invalid_argument("gate " + std::to_string(i + 1) + " input out of range");
        if (g.op != BoolOp::Not && (g.b < 0 || g.b >= limit))
            throw std::invalid_argument("gate " + std::to_string(i + 1) + " input out of range");
    }
    if (output < 0 || output >= wire_count())
        throw std::invalid_argument("output wire out of range");
}

bool eval(const CnfFormula& f, const std::vector<uint8_t>& x) {
    if (static_cast<int>(x.size()) != f.n)
        throw std::invalid_argument("assignment length " + std::to_string(x.size()) +
                                    " != n=" + std::to_string(f.n));
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (Literal l : c) {
            int v = l < 0 ? -l : l;
            bool val = x[v - 1] != 0;
            if (l < 0) val = !val;
            if (val) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

bool eval(const BooleanCircuit& f, const std::vector<uint8_t>& x) {
    if (static_cast<int>(x.size()) != f.n)
        throw std::invalid_argument("assignment length " + std::to_string(x.size()) +
                                    " != n=" + std::to_string(f.n));
    std::vector<uint8_t> w(f.wire_count());
    std::copy(x.begin(), x.end(), w.begin());
    for (size_t i = 0; i < f.gates.size(); ++i) {
        const auto& g = f.gates[i];
        switch (g.op) {
            case BoolOp::And: w[f.n + i] = w[g.a] & w[g.b]; break;
            case BoolOp::Or: w[f.n + i] = w[g.a] | w[g.b]; break;
            case BoolOp::Not: w[f.n + i] = w[g.a] ^ 1; break;
        }
    }
    return w[f.output] != 0;
}

int enumeration_cap() {
    if (const char* env = std::getenv("FGS_ENUM_CAP")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 62) return static_cast<int>(v);
    }
    return kDefaultEnumerationCap;
}

namespace {

// Exhaustive #f over the assignment range [lo, hi). Enumeration is
// lexicographic over x with x_1 as the most significant bit.
template <typename F>
int64_t count_range(const F& f, int n, uint64_t lo, uint64_t hi) {
    std::vector<uint8_t> x(n);
    int64_t sharp = 0;
    for (uint64_t u = lo; u < hi; ++u) {
        for (int i = 0; i < n; ++i) x[i] = (u >> (n - 1 - i)) & 1;
        if (eval(f, x)) ++sharp;
    }
    return sharp;
}

template <typename F>
CountReport count_impl(const F& f, int n) {
    int cap = enumeration_cap();
    if (n > cap) throw enumeration_limit_error(n, cap);
    uint64_t total = uint64_t(1) << n;
    int64_t sharp = 0;
    unsigned workers = std::thread::hardware_concurrency();
    if (n >= 20 && workers > 1) {
        workers = std::min<unsigned>(workers, 16);
        std::vector<int64_t> partial(workers, 0);
        std::vector<std::thread> pool;
        uint64_t chunk = total / workers;
        for (unsigned w = 0; w < workers; ++w) {
            uint64_t lo = w * chunk;
            uint64_t hi = (w + 1 == workers) ? total : lo + chunk;
            pool.emplace_back([&, w, lo, hi] { partial[w] = count_range(f, n, lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (int64_t p : partial) sharp += p;
    } else {
        sharp = count_range(f, n, 0, total);
    }
    return CountReport{sharp, static_cast<int64_t>(total) - 2 * sharp, n};
}

}  // namespace

CountReport count(const CnfFormula& f) { return count_impl(f, f.n); }
CountReport count(const BooleanCircuit& f) { return count_impl(f, f.n); }

namespace {

// Balanced binary reduction of `wires` with op, appending gates to `c`.
int reduce_balanced(BooleanCircuit& c, std::vector<int> wires, BoolOp op) {
    while (wires.size() > 1) {
        std::vector<int> next;
        for (size_t i = 0; i + 1 < wires.size(); i += 2) {
            c.gates.push_back(BoolGate{op, wires[i], wires[i + 1]});
            next.push_back(c.n + static_cast<int>(c.gates.size()) - 1);
        }
        if (wires.size() % 2 == 1) next.push_back(wires.back());
        wires = std::move(next);
    }
    return wires[0];
}

}  // namespace

BooleanCircuit lower_to_circuit(const CnfFormula& f) {
    if (f.n < 1) throw std::invalid_argument("formula needs n >= 1");
    BooleanCircuit c;
    c.n = f.n;
    std::vector<int> clause_wires;
    for (const auto& clause : f.clauses) {
        if (clause.empty()) throw std::invalid_argument("empty clause");
        std::vector<int> lits;
        for (Literal l : clause) {
            int v = (l < 0 ? -l : l) - 1;
            if (l < 0) {
                c.gates.push_back(BoolGate{BoolOp::Not, v, -1});
                lits.push_back(c.n + static_cast<int>(c.gates.size()) - 1);
            } else {
                lits.push_back(v);
            }
        }
        clause_wires.push_back(reduce_balanced(c, lits, BoolOp::Or));
    }
    if (clause_wires.empty()) {
        // Constant-true formula: x1 | !x1.
        c.gates.push_back(BoolGate{BoolOp::Not, 0, -1});
        c.gates.push_back(BoolGate{BoolOp::Or, 0, c.n});
        c.output = c.n + 1;
        return c;
    }
    c.output = reduce_balanced(c, clause_wires, BoolOp::And);
    return c;
}

BooleanCircuit unique_gap_reduction(const BooleanCircuit& f) {
    f.validate();
    BooleanCircuit g;
    g.n = f.n + 1;
    // Re-emit f's gates; input wires keep their index, gate wires shift by one.
    auto shift = [&](int w) { return w < f.n ? w : w + 1; };
    for (const auto& gate : f.gates) {
        BoolGate ng = gate;
        ng.a = shift(ng.a);
        if (ng.op != BoolOp::Not) ng.b = shift(ng.b);
        g.gates.push_back(ng);
    }
    int f_out = shift(f.output);
    int xn1 = f.n;  // the added input x_{n+1}

    auto emit = [&](BoolOp op, int a, int b) {
        g.gates.push_back(BoolGate{op, a, b});
        return g.n + static_cast<int>(g.gates.size()) - 1;
    };
    int not_f = emit(BoolOp::Not, f_out, -1);
    int left = emit(BoolOp::And, xn1, not_f);
    std::vector<int> allx(f.n);
    for (int i = 0; i < f.n; ++i) allx[i] = i;
    int conj = reduce_balanced(g, allx, BoolOp::And);
    int not_xn1 = emit(BoolOp::Not, xn1, -1);
    int right = emit(BoolOp::And, not_xn1, conj);
    g.output = emit(BoolOp::Or, left, right);
    return g;
}

namespace {

int parse_wire(const std::string& tok, int n, int gates_defined, int lineno) {
    long idx = 0;
    if (tok.size() > 1 && (tok[0] == 'x' || tok[0] == 'g') &&
        parse_int(tok.substr(1), idx) && idx >= 1) {
        if (tok[0] == 'x') {
            if (idx > n) throw parse_error(lineno, "input " + tok + " out of range");
            return static_cast<int>(idx) - 1;
        }
        if (idx > gates_defined) throw parse_error(lineno, "gate " + tok + " not yet defined");
        return n + static_cast<int>(idx) - 1;
    }
    throw parse_error(lineno, "bad wire reference '" + tok + "'");
}

}  // namespace

BooleanCircuit parse_circuit_text(std::istream& in) {
    BooleanCircuit c;
    std::string line;
    int lineno = 0;
    bool have_inputs = false, have_out = false;
    long max_x_seen = 0;
    std::vector<std::vector<std::string>> gate_lines;
    std::string out_tok;
    int out_line = 0;

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty() || toks[0] == "#") continue;
        if (toks[0] == "inputs") {
            long n = 0;
            if (toks.size() == 2 && parse_int(toks[1], n) && n >= 1) {
                c.n = static_cast<int>(n);
            } else if (toks.size() >= 2) {
                // "inputs x1 x2 ... xn" form
                c.n = static_cast<int>(toks.size()) - 1;
            } else {
                throw parse_error(lineno, "malformed inputs line");
            }
            have_inputs = true;
            continue;
        }
        if (toks[0] == "out") {
            if (toks.size() != 2) throw parse_error(lineno, "malformed out line");
            out_tok = toks[1];
            out_line = lineno;
            have_out = true;
            continue;
        }
        // g<i> = OP w [w]
        if (toks.size() < 4 || toks[1] != "=")
            throw parse_error(lineno, "malformed gate line");
        long gi = 0;
        if (toks[0].size() < 2 || toks[0][0] != 'g' || !parse_int(toks[0].substr(1), gi) ||
            gi != static_cast<long>(gate_lines.size()) + 1)
            throw parse_error(lineno, "gates must be named g1, g2, ... in order");
        for (const auto& t : toks)
            if (t.size() > 1 && t[0] == 'x') {
                long xi = 0;
                if (parse_int(t.substr(1), xi)) max_x_seen = std::max<long>(max_x_seen, xi);
            }
        toks.push_back(std::to_string(lineno));
        gate_lines.push_back(toks);
    }
    if (!have_inputs) c.n = std::max(1, static_cast<int>(max_x_seen));
    if (!have_out) throw parse_error(lineno, "missing 'out' line");

    for (const auto& toks : gate_lines) {
        int gl = std::stoi(toks.back());
        const std::string& op = toks[2];
        int defined = static_cast<int>(c.gates.size());
        if (op == "AND" || op == "OR") {
            if (toks.size() != 6) throw parse_error(gl, op + " needs two operands");
            int a = parse_wire(toks[3], c.n, defined, gl);
            int b = parse_wire(toks[4], c.n, defined, gl);
            c.gates.push_back(BoolGate{op == "AND" ? BoolOp::And : BoolOp::Or, a, b});
        } else if (op == "NOT") {
            if (toks.size() != 5) throw parse_error(gl, "NOT needs one operand");
            int a = parse_wire(toks[3], c.n, defined, gl);
            c.gates.push_back(BoolGate{BoolOp::Not, a, -1});
        } else {
            throw parse_error(gl, "unknown op '" + op + "'");
        }
    }
    c.output = parse_wire(out_tok, c.n, static_cast<int>(c.gates.size()), out_line);
    c.validate();
    return c;
}

BooleanCircuit parse_circuit_text(const std::string& text) {
    std::istringstream iss(text);
    return parse_circuit_text(iss);
}

std::string circuit_to_text(const BooleanCircuit& f) {
    std::ostringstream os;
    os << "inputs " << f.n << "\n";
    auto wire_name = [&](int w) {
        return w < f.n ? "x" + std::to_string(w + 1) : "g" + std::to_string(w - f.n + 1);
    };
    for (size_t i = 0; i < f.gates.size(); ++i) {
        const auto& g = f.gates[i];
        os << "g" << (i + 1) << " = ";
        switch (g.op) {
            case BoolOp::And: os << "AND " << wire_name(g.a) << " " << wire_name(g.b); break;
            case BoolOp::Or: os << "OR " << wire_name(g.a) << " " << wire_name(g.b); break;
            case BoolOp::Not: os << "NOT " << wire_name(g.a); break;
        }
        os << "\n";
    }
    os << "out " << wire_name(f.output) << "\n";
    return os.str();
}

}  // namespace fgs
