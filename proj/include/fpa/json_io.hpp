#pragma once

#include <string>

#include "fpa/model.hpp"

namespace fpa {

// Instance document with optional plan:
//   {
//     "params": {"a": ..., "b": ..., "T": ..., "B": ...},
//     "values": [{"type": "point", "v": ...} |
//                {"type": "uniform", "lo": ..., "hi": ...} |
//                {"type": "discrete", "atoms": [[value, prob], ...]}, ...],
//     "competitor": {... same tags plus {"type": "constant", "m": ...}},
//     "plan": {"rho_hat": [...], "eps": [...]}        // optional
//   }
// Doubles are emitted in shortest round-trip form, so save/load is lossless.

struct InstanceDocument {
    Instance instance;
    std::optional<BudgetPlan> plan;
};

std::string to_json(const InstanceDocument& doc);
InstanceDocument instance_from_json(const std::string& text);

InstanceDocument load_instance(const std::string& path);
void save_instance(const InstanceDocument& doc, const std::string& path);

}  // namespace fpa
