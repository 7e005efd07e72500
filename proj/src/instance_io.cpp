#include "fgs/instance_io.hpp"

#include <json.hpp>

namespace fgs {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json dyadic_json(const ExactDyadic& d) {
    return ordered_json{{"num", d.num_string()}, {"den", d.den_string()}, {"value", d.value()}};
}

ExactDyadic dyadic_from(const ordered_json& j) {
    BigInt num(j.at("num").get<std::string>());
    BigInt den(j.at("den").get<std::string>());
    int log2_den = 0;
    while (den > 1) {
        if ((den & 1) != 0) throw std::invalid_argument("formula denominator must be a power of 2");
        den >>= 1;
        ++log2_den;
    }
    return ExactDyadic{num, log2_den};
}

ordered_json measure_json(const MeasurementSpec& spec) {
    return ordered_json{
        {"qubits", spec.measured_qubits},
        {"accept", spec.accept_outcome},
        {"semantics",
         spec.semantics == MeasurementSpec::Semantics::ExactOutcome ? "exact" : "marginal"}};
}

MeasurementSpec measure_from(const ordered_json& j) {
    MeasurementSpec spec;
    spec.measured_qubits = j.at("qubits").get<std::vector<int>>();
    spec.accept_outcome = j.at("accept").get<std::string>();
    spec.semantics = j.at("semantics").get<std::string>() == "marginal"
                         ? MeasurementSpec::Semantics::Marginal
                         : MeasurementSpec::Semantics::ExactOutcome;
    return spec;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
    ordered_json j;
    j["type"] = instance_type(inst);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GapCoreInstance>) {
                j["n"] = v.n;
                j["xi"] = v.xi;
                j["gap"] = v.gap;
                j["formula"] = dyadic_json(v.eta_formula);
                j["circuit"] = quantum_to_text(v.V);
            } else if constexpr (std::is_same_v<T, Dqc1Instance>) {
                j["N"] = v.N;
                j["clean_qubit"] = v.clean_qubit;
                j["accept_outcome"] = std::string(1, v.accept_outcome);
                if (v.p_formula) j["formula"] = dyadic_json(*v.p_formula);
                j["circuit"] = quantum_to_text(v.W);
                j["embedded_circuit"] = quantum_to_text(v.embedded_V);
            } else if constexpr (std::is_same_v<T, Hc1qInstance>) {
                j["N"] = v.N;
                j["n"] = v.n;
                j["xi"] = v.xi;
                j["accept_outcome"] = v.accept.accept_outcome;
                j["measure"] = measure_json(v.accept);
                j["formula"] = dyadic_json(v.p_formula);
                j["ledger"] = ordered_json{{"n", v.C.ledger.n},
                                           {"xi", v.C.ledger.xi},
                                           {"clause_scratch", v.C.ledger.clause_scratch},
                                           {"counter", v.C.ledger.counter},
                                           {"borrowed", v.C.ledger.borrowed},
                                           {"output", v.C.ledger.output},
                                           {"output_bit", v.C.ledger.output_bit}};
                j["circuit"] = reversible_to_text(v.C);
            } else if constexpr (std::is_same_v<T, CliffordTInstance>) {
                j["n"] = v.n;
                j["xi"] = v.xi;
                j["t"] = v.t;
                j["formula"] = dyadic_json(v.p_formula);
                j["circuit"] = quantum_to_text(v.V);
            } else if constexpr (std::is_same_v<T, HCountInstance>) {
                j["n"] = v.n;
                j["xi"] = v.xi;
                j["h"] = v.h;
                j["accept_outcome"] = v.W.measure.accept_outcome;
                j["formula"] = dyadic_json(v.p_formula);
                j["circuit"] = quantum_to_text(v.W);
            } else if constexpr (std::is_same_v<T, SharpMarginalInstance>) {
                j["n"] = v.n;
                j["xi"] = v.xi;
                j["h"] = v.h;
                j["accept_outcome"] = v.V.measure.accept_outcome;
                j["formula"] = dyadic_json(v.p_formula);
                j["circuit"] = quantum_to_text(v.V);
            } else if constexpr (std::is_same_v<T, GadgetizedInstance>) {
                j["n"] = v.n;
                j["t"] = v.t;
                j["circuit"] = quantum_to_text(v.Vc);
                j["source_circuit"] = quantum_to_text(v.source);
            } else if constexpr (std::is_same_v<T, ReversibleCircuit>) {
                j["n"] = v.ledger.n;
                j["xi"] = v.ledger.xi;
                j["ledger"] = ordered_json{{"clause_scratch", v.ledger.clause_scratch},
                                           {"counter", v.ledger.counter},
                                           {"borrowed", v.ledger.borrowed},
                                           {"output", v.ledger.output},
                                           {"output_bit", v.ledger.output_bit}};
                j["circuit"] = reversible_to_text(v);
            }
        },
        inst);
    return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    std::string type = j.at("type").get<std::string>();
    if (type == "gap-core") {
        GapCoreInstance v;
        v.n = j.at("n").get<int>();
        v.xi = j.at("xi").get<int>();
        v.gap = j.at("gap").get<int64_t>();
        v.eta_formula = dyadic_from(j.at("formula"));
        v.V = parse_quantum_text(j.at("circuit").get<std::string>());
        return v;
    }
    if (type == "dqc1") {
        Dqc1Instance v;
        v.N = j.at("N").get<int>();
        v.clean_qubit = j.at("clean_qubit").get<int>();
        v.accept_outcome = j.at("accept_outcome").get<std::string>().at(0);
        if (j.contains("formula")) v.p_formula = dyadic_from(j.at("formula"));
        v.W = parse_quantum_text(j.at("circuit").get<std::string>());
        v.embedded_V = parse_quantum_text(j.at("embedded_circuit").get<std::string>());
        return v;
    }
    if (type == "hc1q") {
        Hc1qInstance v;
        v.N = j.at("N").get<int>();
        v.n = j.at("n").get<int>();
        v.xi = j.at("xi").get<int>();
        v.accept = measure_from(j.at("measure"));
        v.p_formula = dyadic_from(j.at("formula"));
        v.C = parse_reversible_text(j.at("circuit").get<std::string>());
        const auto& l = j.at("ledger");
        v.C.ledger.n = l.at("n").get<int>();
        v.C.ledger.xi = l.at("xi").get<int>();
        v.C.ledger.clause_scratch = l.at("clause_scratch").get<int>();
        v.C.ledger.counter = l.at("counter").get<int>();
        v.C.ledger.borrowed = l.at("borrowed").get<int>();
        v.C.ledger.output = l.at("output").get<int>();
        v.C.ledger.output_bit = l.at("output_bit").get<int>();
        return v;
    }
    if (type == "clifford-t-sharp" || type == "clifford-t-gap") {
        CliffordTInstance v;
        v.variant =
            type == "clifford-t-sharp" ? CliffordTVariant::Sharp : CliffordTVariant::Gap;
        v.n = j.at("n").get<int>();
        v.xi = j.at("xi").get<int>();
        v.t = j.at("t").get<int>();
        v.p_formula = dyadic_from(j.at("formula"));
        v.V = parse_quantum_text(j.at("circuit").get<std::string>());
        return v;
    }
    if (type == "h-count") {
        HCountInstance v;
        v.n = j.at("n").get<int>();
        v.xi = j.at("xi").get<int>();
        v.h = j.at("h").get<int>();
        v.p_formula = dyadic_from(j.at("formula"));
        v.W = parse_quantum_text(j.at("circuit").get<std::string>());
        return v;
    }
    if (type == "sharp-marginal") {
        SharpMarginalInstance v;
        v.n = j.at("n").get<int>();
        v.xi = j.at("xi").get<int>();
        v.h = j.at("h").get<int>();
        v.p_formula = dyadic_from(j.at("formula"));
        v.V = parse_quantum_text(j.at("circuit").get<std::string>());
        return v;
    }
    if (type == "gadgetized") {
        GadgetizedInstance v;
        v.n = j.at("n").get<int>();
        v.t = j.at("t").get<int>();
        v.Vc = parse_quantum_text(j.at("circuit").get<std::string>());
        v.source = parse_quantum_text(j.at("source_circuit").get<std::string>());
        return v;
    }
    if (type == "reversible") {
        ReversibleCircuit v = parse_reversible_text(j.at("circuit").get<std::string>());
        v.ledger.n = j.at("n").get<int>();
        v.ledger.xi = j.at("xi").get<int>();
        if (j.contains("ledger")) {
            const auto& l = j.at("ledger");
            v.ledger.clause_scratch = l.at("clause_scratch").get<int>();
            v.ledger.counter = l.at("counter").get<int>();
            v.ledger.borrowed = l.at("borrowed").get<int>();
            v.ledger.output = l.at("output").get<int>();
            v.ledger.output_bit = l.at("output_bit").get<int>();
        }
        return v;
    }
    throw std::invalid_argument("unknown instance type '" + type + "'");
}

}  // namespace fgs
