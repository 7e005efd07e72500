#pragma once

#include <variant>

#include "fgs/constructions.hpp"
#include "fgs/statevector.hpp"

namespace fgs {

using Instance = std::variant<GapCoreInstance, Dqc1Instance, Hc1qInstance, CliffordTInstance,
                              HCountInstance, SharpMarginalInstance, GadgetizedInstance,
                              ReversibleCircuit>;

std::string instance_type(const Instance& inst);

// Exact average over the mixed register of the clean-qubit accept
// probability (typed wrapper around the statevector average).
double dqc1_accept_probability(const Dqc1Instance& inst);

struct VerifyReport {
    std::string instance_type;
    int n = -1, xi = -1, t = -1, h = -1;
    bool has_formula = false;
    ExactDyadic formula;
    double formula_value = 0;
    double oracle_value = 0;
    double abs_diff = 0;
    bool pass = false;
    double timing_ms = 0;
};

// Oracle value vs closed-form value at 1e-9.
VerifyReport verify_instance(const Instance& inst);

VerifyReport verify_instance(const GapCoreInstance&);
VerifyReport verify_instance(const Dqc1Instance&);
VerifyReport verify_instance(const Hc1qInstance&);
VerifyReport verify_instance(const CliffordTInstance&);
VerifyReport verify_instance(const HCountInstance&);
VerifyReport verify_instance(const SharpMarginalInstance&);
VerifyReport verify_instance(const GadgetizedInstance&);

}  // namespace fgs
