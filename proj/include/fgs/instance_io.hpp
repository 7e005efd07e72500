#pragma once

#include <string>

#include "fgs/verify.hpp"

namespace fgs {

// One JSON object per instance: {type, n, xi, t, h, formula:{num,den,value},
// accept_outcome, circuit} with circuits embedded in their text formats.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

}  // namespace fgs
