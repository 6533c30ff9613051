#include "gsis/tolerance.hpp"

#include <nlohmann/json.hpp>

#include "gsis/errors.hpp"

namespace gsis {

ToleranceConfig apply_tolerance_overrides(ToleranceConfig base, const std::string& json_text) {
    if (json_text.empty()) return base;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("tolerance override is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("tolerance override must be a JSON object of name -> number");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number())
            throw ParseError("tolerance override for '" + it.key() + "' is not a number");
        const double v = it.value().get<double>();
        if (!(v > 0))
            throw ParseError("tolerance override for '" + it.key() + "' must be positive");
        const std::string& k = it.key();
        if (k == "sym_rel") base.sym_rel = v;
        else if (k == "comm_rel") base.comm_rel = v;
        else if (k == "eig_rel") base.eig_rel = v;
        else if (k == "orth_abs") base.orth_abs = v;
        else if (k == "group_rel") base.group_rel = v;
        else if (k == "rank_rel") base.rank_rel = v;
        else if (k == "pinv_rel") base.pinv_rel = v;
        else if (k == "subspace_eq") base.subspace_eq = v;
        else if (k == "support_rel") base.support_rel = v;
        else if (k == "classify_rel") base.classify_rel = v;
        else throw ParseError("unknown tolerance override key '" + k + "'");
    }
    return base;
}

} // namespace gsis
