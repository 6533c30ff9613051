#pragma once

#include <string>

namespace gsis {

/// Central tolerance policy. Relative tolerances are multiplied by a scale
/// derived from the data they check (documented per field); absolute ones are
/// used as-is. Every numerical comparison in the library routes through one
/// of these knobs so behaviour can be overridden in one place (the CLI maps
/// the GSIS_TOL_OVERRIDE environment variable onto this struct).
struct ToleranceConfig {
    double sym_rel = 1e-10;      ///< symmetry check, x (1 + max |entry|)
    double comm_rel = 1e-10;     ///< commutator check, x (1 + max |entry|)
    double eig_rel = 1e-9;       ///< eigendecomposition residual, x (1 + max |entry|)
    double orth_abs = 1e-10;     ///< orthonormality residual, absolute
    double group_rel = 1e-8;     ///< eigenvalue grouping, x (1 + max |eigenvalue|)
    double rank_rel = 1e-9;      ///< rank cutoff, x sigma_max
    double pinv_rel = 1e-10;     ///< pseudo-inverse cutoff, x sigma_max
    double subspace_eq = 1e-8;   ///< subspace equality (projector distance), absolute
    double support_rel = 1e-12;  ///< signal support threshold, x ||x||_2
    double classify_rel = 1e-8;  ///< filter classification, x (1 + max |entry|)

    double sym(double scale) const { return sym_rel * (1.0 + scale); }
    double comm(double scale) const { return comm_rel * (1.0 + scale); }
    double eig(double scale) const { return eig_rel * (1.0 + scale); }
    double group(double scale) const { return group_rel * (1.0 + scale); }
    double classify(double scale) const { return classify_rel * (1.0 + scale); }
};

/// Applies overrides given as a JSON object mapping field names to doubles,
/// e.g. {"group_rel": 1e-6}. Unknown keys or non-numeric values raise
/// ParseError. An empty string returns `base` unchanged.
ToleranceConfig apply_tolerance_overrides(ToleranceConfig base, const std::string& json_text);

} // namespace gsis
