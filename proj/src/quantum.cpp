#include "fgs/quantum.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fgs {

const char* qkind_name(QKind k) {
    switch (k) {
        case QKind::X: return "X";
        case QKind::H: return "H";
        case QKind::Z: return "Z";
        case QKind::S: return "S";
        case QKind::Sdg: return "SDG";
        case QKind::T: return "T";
        case QKind::Tdg: return "TDG";
        case QKind::CZ: return "CZ";
        case QKind::CNOT: return "CNOT";
        case QKind::Toffoli: return "CCX";
        case QKind::GToffoli: return "GTOF";
        case QKind::MCZ: return "MCZ";
    }
    return "?";
}

void QGate::validate(int width) const {
    auto check = [&](int q) {
        if (q < 0 || q >= width) throw std::invalid_argument("qubit index out of range");
    };
    switch (kind) {
        case QKind::X:
        case QKind::H:
        case QKind::Z:
        case QKind::S:
        case QKind::Sdg:
        case QKind::T:
        case QKind::Tdg:
            check(target);
            break;
        case QKind::CZ:
        case QKind::CNOT:
            check(target);
            check(c1);
            if (c1 == target) throw std::invalid_argument("two-qubit gate needs distinct qubits");
            break;
        case QKind::Toffoli:
            check(target);
            check(c1);
            check(c2);
            if (c1 == c2 || c1 == target || c2 == target)
                throw std::invalid_argument("TOFFOLI qubits must be distinct");
            break;
        case QKind::GToffoli: {
            check(target);
            std::set<int> seen{target};
            for (const auto& c : controls) {
                check(c.bit);
                if (!seen.insert(c.bit).second)
                    throw std::invalid_argument("GTOF qubits must be distinct");
            }
            break;
        }
        case QKind::MCZ: {
            std::set<int> seen;
            if (controls.empty()) throw std::invalid_argument("MCZ needs at least one qubit");
            for (const auto& c : controls) {
                check(c.bit);
                if (!seen.insert(c.bit).second)
                    throw std::invalid_argument("MCZ qubits must be distinct");
            }
            break;
        }
    }
}

QGate mcz(std::vector<PolarityControl> controls, int width) {
    QGate g{QKind::MCZ, -1, -1, -1, std::move(controls)};
    g.validate(width);
    return g;
}

void MeasurementSpec::validate(int width) const {
    if (measured_qubits.size() != accept_outcome.size())
        throw std::invalid_argument("accept outcome length must match measured qubit count");
    std::set<int> seen;
    for (int q : measured_qubits) {
        if (q < 0 || q >= width)
            throw std::invalid_argument("measured qubit " + std::to_string(q) + " out of range");
        if (!seen.insert(q).second) throw std::invalid_argument("duplicate measured qubit");
    }
    for (char b : accept_outcome)
        if (b != '0' && b != '1') throw std::invalid_argument("accept outcome must be bits");
}

int QuantumCircuit::t_count() const {
    int t = 0;
    for (const auto& g : gates)
        if (g.kind == QKind::T || g.kind == QKind::Tdg) ++t;
    return t;
}

int QuantumCircuit::h_count() const {
    int h = 0;
    for (const auto& g : gates)
        if (g.kind == QKind::H) ++h;
    return h;
}

void QuantumCircuit::validate() const {
    for (const auto& g : gates) g.validate(width);
    if (!measure.measured_qubits.empty()) measure.validate(width);
}

QuantumCircuit lift_reversible(const ReversibleCircuit& c) {
    QuantumCircuit qc;
    qc.width = c.width;
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case RKind::Not:
                qc.x(g.target);
                break;
            case RKind::Toffoli:
                qc.add(QGate::toffoli(g.c1, g.c2, g.target));
                break;
            case RKind::GToffoli:
                if (g.controls.size() == 1) {
                    const auto& pc = g.controls[0];
                    if (!pc.positive) qc.x(pc.bit);
                    qc.cnot(pc.bit, g.target);
                    if (!pc.positive) qc.x(pc.bit);
                } else if (g.controls.size() == 2 && g.controls[0].positive &&
                           g.controls[1].positive) {
                    qc.add(QGate::toffoli(g.controls[0].bit, g.controls[1].bit, g.target));
                } else {
                    qc.add(QGate::gtoffoli(g.controls, g.target));
                }
                break;
        }
    }
    return qc;
}

namespace {

// Fixed 7-T TOFFOLI network; verified against the permutation matrix by the
// statevector oracle (exact, no global phase).
void emit_toffoli_7t(QuantumCircuit& qc, int a, int b, int c) {
    qc.h(c);
    qc.cnot(b, c);
    qc.tdg(c);
    qc.cnot(a, c);
    qc.t(c);
    qc.cnot(b, c);
    qc.tdg(c);
    qc.cnot(a, c);
    qc.t(b);
    qc.t(c);
    qc.h(c);
    qc.cnot(a, b);
    qc.t(a);
    qc.tdg(b);
    qc.cnot(a, b);
}

}  // namespace

QuantumCircuit toffoli_to_clifford_t(const QuantumCircuit& qc) {
    QuantumCircuit out;
    out.width = qc.width;
    out.measure = qc.measure;
    for (const auto& g : qc.gates) {
        switch (g.kind) {
            case QKind::Toffoli:
                emit_toffoli_7t(out, g.c1, g.c2, g.target);
                break;
            case QKind::GToffoli: {
                if (g.controls.size() > 2)
                    throw std::invalid_argument(
                        "GTOF with more than two controls must be decomposed first");
                if (g.controls.size() < 2) {
                    // Single-control form is already Clifford.
                    if (g.controls.empty()) {
                        out.x(g.target);
                        break;
                    }
                    const auto& pc = g.controls[0];
                    if (!pc.positive) out.x(pc.bit);
                    out.cnot(pc.bit, g.target);
                    if (!pc.positive) out.x(pc.bit);
                    break;
                }
                for (const auto& pc : g.controls)
                    if (!pc.positive) out.x(pc.bit);
                emit_toffoli_7t(out, g.controls[0].bit, g.controls[1].bit, g.target);
                for (const auto& pc : g.controls)
                    if (!pc.positive) out.x(pc.bit);
                break;
            }
            case QKind::MCZ:
                if (g.controls.size() > 2)
                    throw std::invalid_argument(
                        "MCZ with more than two qubits must be decomposed first");
                out.add(g);
                break;
            default:
                out.add(g);
                break;
        }
    }
    return out;
}

namespace {

// Drops adjacent H pairs on the same qubit (gates on other qubits between
// them commute past); H^2 = I exactly, so amplitudes are untouched.
QuantumCircuit cancel_adjacent_h(const QuantumCircuit& qc) {
    std::vector<QGate> kept;
    std::vector<char> alive;
    std::vector<int> open_h(qc.width, -1);
    auto touched = [](const QGate& g) {
        std::vector<int> qs;
        if (g.target >= 0) qs.push_back(g.target);
        if (g.c1 >= 0) qs.push_back(g.c1);
        if (g.c2 >= 0) qs.push_back(g.c2);
        for (const auto& pc : g.controls) qs.push_back(pc.bit);
        return qs;
    };
    for (const auto& g : qc.gates) {
        if (g.kind == QKind::H) {
            int q = g.target;
            if (open_h[q] >= 0) {
                alive[open_h[q]] = 0;
                open_h[q] = -1;
                continue;
            }
            kept.push_back(g);
            alive.push_back(1);
            open_h[q] = static_cast<int>(kept.size()) - 1;
            continue;
        }
        for (int q : touched(g)) open_h[q] = -1;
        kept.push_back(g);
        alive.push_back(1);
    }
    QuantumCircuit out;
    out.width = qc.width;
    out.measure = qc.measure;
    for (size_t i = 0; i < kept.size(); ++i)
        if (alive[i]) out.add(kept[i]);
    return out;
}

}  // namespace

QuantumCircuit rewrite_to_htcz(const QuantumCircuit& qc) {
    QuantumCircuit out;
    out.width = qc.width;
    out.measure = qc.measure;
    auto t_times = [&](int q, int reps) {
        for (int i = 0; i < reps; ++i) out.t(q);
    };
    for (const auto& g : qc.gates) {
        switch (g.kind) {
            case QKind::H:
                out.h(g.target);
                break;
            case QKind::T:
                out.t(g.target);
                break;
            case QKind::CZ:
                out.cz(g.c1, g.target);
                break;
            case QKind::Z:
                t_times(g.target, 4);
                break;
            case QKind::S:
                t_times(g.target, 2);
                break;
            case QKind::Sdg:
                t_times(g.target, 6);
                break;
            case QKind::Tdg:
                t_times(g.target, 7);
                break;
            case QKind::X:
                out.h(g.target);
                t_times(g.target, 4);
                out.h(g.target);
                break;
            case QKind::CNOT:
                out.h(g.target);
                out.cz(g.c1, g.target);
                out.h(g.target);
                break;
            case QKind::MCZ:
                if (g.controls.size() == 1) {
                    t_times(g.controls[0].bit, 4);
                    break;
                }
                if (g.controls.size() == 2 && g.controls[0].positive && g.controls[1].positive) {
                    out.cz(g.controls[0].bit, g.controls[1].bit);
                    break;
                }
                throw std::invalid_argument(std::string("cannot rewrite gate ") + qkind_name(g.kind));
            default:
                throw std::invalid_argument(std::string("cannot rewrite gate ") + qkind_name(g.kind));
        }
    }
    return cancel_adjacent_h(out);
}

QuantumCircuit inverse(const QuantumCircuit& qc) {
    QuantumCircuit out;
    out.width = qc.width;
    out.measure = qc.measure;
    for (auto it = qc.gates.rbegin(); it != qc.gates.rend(); ++it) {
        QGate g = *it;
        if (g.kind == QKind::T)
            g.kind = QKind::Tdg;
        else if (g.kind == QKind::Tdg)
            g.kind = QKind::T;
        else if (g.kind == QKind::S)
            g.kind = QKind::Sdg;
        else if (g.kind == QKind::Sdg)
            g.kind = QKind::S;
        out.add(std::move(g));
    }
    return out;
}

QuantumCircuit decompose_wide_gates(const QuantumCircuit& qc, int borrowed_qubit) {
    QuantumCircuit out;
    out.width = qc.width;
    out.measure = qc.measure;
    auto emit_gtof = [&](const QGate& g) {
        RGate rg = RGate::gtoffoli(g.controls, g.target);
        for (const auto& sub : decompose_gtoffoli(rg, borrowed_qubit)) {
            switch (sub.kind) {
                case RKind::Not:
                    out.x(sub.target);
                    break;
                case RKind::Toffoli:
                    out.add(QGate::toffoli(sub.c1, sub.c2, sub.target));
                    break;
                case RKind::GToffoli:
                    out.cnot(sub.controls[0].bit, sub.target);
                    break;
            }
        }
    };
    for (const auto& g : qc.gates) {
        if (g.kind == QKind::GToffoli && g.controls.size() >= 2) {
            emit_gtof(g);
        } else if (g.kind == QKind::MCZ && g.controls.size() >= 2) {
            // Pick a positive participant as the conjugation target; if all
            // are negative, NOT-conjugate one into positive polarity.
            QGate work = g;
            size_t pick = work.controls.size();
            for (size_t i = 0; i < work.controls.size(); ++i)
                if (work.controls[i].positive) {
                    pick = i;
                    break;
                }
            bool flipped = false;
            if (pick == work.controls.size()) {
                pick = 0;
                flipped = true;
                out.x(work.controls[0].bit);
            }
            int tq = work.controls[pick].bit;
            QGate gt = QGate::gtoffoli({}, tq);
            for (size_t i = 0; i < work.controls.size(); ++i)
                if (i != pick) gt.controls.push_back(work.controls[i]);
            out.h(tq);
            if (gt.controls.size() >= 2)
                emit_gtof(gt);
            else if (gt.controls.size() == 1) {
                if (!gt.controls[0].positive) out.x(gt.controls[0].bit);
                out.cnot(gt.controls[0].bit, tq);
                if (!gt.controls[0].positive) out.x(gt.controls[0].bit);
            } else {
                out.x(tq);
            }
            out.h(tq);
            if (flipped) out.x(work.controls[0].bit);
        } else {
            out.add(g);
        }
    }
    return out;
}

QuantumCircuit parse_quantum_text(std::istream& in) {
    QuantumCircuit qc;
    std::string line;
    int lineno = 0;
    bool have_width = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream iss(line);
        std::string op;
        if (!(iss >> op) || op == "#") continue;
        if (op == "qubits") {
            if (!(iss >> qc.width) || qc.width < 1) throw parse_error(lineno, "bad qubit count");
            have_width = true;
            continue;
        }
        if (!have_width) throw parse_error(lineno, "gate before qubits line");
        if (op == "measure") {
            std::vector<std::string> toks;
            std::string tok;
            while (iss >> tok) toks.push_back(tok);
            auto accept_it = std::find(toks.begin(), toks.end(), "accept");
            if (accept_it == toks.end() || accept_it + 1 == toks.end())
                throw parse_error(lineno, "measure needs 'accept <bits>'");
            MeasurementSpec spec;
            for (auto it = toks.begin(); it != accept_it; ++it)
                spec.measured_qubits.push_back(std::stoi(*it));
            spec.accept_outcome = *(accept_it + 1);
            if (accept_it + 2 != toks.end()) {
                if (*(accept_it + 2) != "marginal")
                    throw parse_error(lineno, "unknown measure suffix");
                spec.semantics = MeasurementSpec::Semantics::Marginal;
            }
            qc.measure = std::move(spec);
            continue;
        }
        auto read_int = [&](const char* what) {
            int v;
            if (!(iss >> v)) throw parse_error(lineno, std::string(op) + " needs " + what);
            return v;
        };
        if (op == "H" || op == "X" || op == "Z" || op == "S" || op == "SDG" || op == "T" ||
            op == "TDG") {
            QKind k = op == "H"   ? QKind::H
                      : op == "X" ? QKind::X
                      : op == "Z" ? QKind::Z
                      : op == "S" ? QKind::S
                      : op == "SDG" ? QKind::Sdg
                      : op == "T" ? QKind::T
                                  : QKind::Tdg;
            qc.add(QGate::single(k, read_int("a target")));
        } else if (op == "CZ") {
            int a = read_int("two qubits"), b = read_int("two qubits");
            qc.cz(a, b);
        } else if (op == "CNOT") {
            int c = read_int("control and target"), t = read_int("control and target");
            qc.cnot(c, t);
        } else if (op == "CCX") {
            int a = read_int("three qubits"), b = read_int("three qubits"),
                t = read_int("three qubits");
            qc.add(QGate::toffoli(a, b, t));
        } else if (op == "GTOF" || op == "MCZ") {
            std::vector<std::string> toks;
            std::string tok;
            while (iss >> tok) toks.push_back(tok);
            if (toks.empty()) throw parse_error(lineno, op + " needs operands");
            std::vector<PolarityControl> cs;
            size_t ncontrols = op == "GTOF" ? toks.size() - 1 : toks.size();
            for (size_t i = 0; i < ncontrols; ++i) {
                if (toks[i].size() < 2 || (toks[i][0] != '+' && toks[i][0] != '-'))
                    throw parse_error(lineno, op + " control must be +q or -q");
                cs.push_back({std::stoi(toks[i].substr(1)), toks[i][0] == '+'});
            }
            if (op == "GTOF")
                qc.add(QGate::gtoffoli(std::move(cs), std::stoi(toks.back())));
            else
                qc.add(QGate{QKind::MCZ, -1, -1, -1, std::move(cs)});
        } else {
            throw parse_error(lineno, "unknown gate '" + op + "'");
        }
    }
    try {
        qc.validate();
    } catch (const std::invalid_argument& e) {
        throw parse_error(lineno, e.what());
    }
    return qc;
}

QuantumCircuit parse_quantum_text(const std::string& text) {
    std::istringstream iss(text);
    return parse_quantum_text(iss);
}

std::string quantum_to_text(const QuantumCircuit& qc) {
    std::ostringstream os;
    os << "qubits " << qc.width << "\n";
    for (const auto& g : qc.gates) {
        switch (g.kind) {
            case QKind::X:
            case QKind::H:
            case QKind::Z:
            case QKind::S:
            case QKind::Sdg:
            case QKind::T:
            case QKind::Tdg:
                os << qkind_name(g.kind) << " " << g.target << "\n";
                break;
            case QKind::CZ:
                os << "CZ " << g.c1 << " " << g.target << "\n";
                break;
            case QKind::CNOT:
                os << "CNOT " << g.c1 << " " << g.target << "\n";
                break;
            case QKind::Toffoli:
                os << "CCX " << g.c1 << " " << g.c2 << " " << g.target << "\n";
                break;
            case QKind::GToffoli:
                os << "GTOF";
                for (const auto& pc : g.controls)
                    os << " " << (pc.positive ? '+' : '-') << pc.bit;
                os << " " << g.target << "\n";
                break;
            case QKind::MCZ:
                os << "MCZ";
                for (const auto& pc : g.controls)
                    os << " " << (pc.positive ? '+' : '-') << pc.bit;
                os << "\n";
                break;
        }
    }
    if (!qc.measure.measured_qubits.empty()) {
        os << "measure";
        for (int q : qc.measure.measured_qubits) os << " " << q;
        os << " accept " << qc.measure.accept_outcome;
        if (qc.measure.semantics == MeasurementSpec::Semantics::Marginal) os << " marginal";
        os << "\n";
    }
    return os.str();
}

}  // namespace fgs
