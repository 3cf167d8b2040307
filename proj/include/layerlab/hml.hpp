#pragma once

#include "layerlab/solvers.hpp"

namespace layerlab {

/**
 * State for the locally extrapolated layer variants. branch_1 evolves with
 * absorption mu*sigma and branch_2 with 2*mu*sigma; after every step both
 * branches are re-seeded with the combination 2*branch_1 - branch_2, so
 * between steps branch_1 == branch_2 == combined.
 */
struct HmlPair {
    FieldState branch_1;
    FieldState branch_2;

    explicit HmlPair(const FieldState& start) : branch_1(start), branch_2(start) {}

    /// 2*branch_1 - branch_2, componentwise.
    [[nodiscard]] FieldState combined() const;
};

/**
 * One step of local extrapolation: Ex once from the combined fields, then
 * branch-wise Ey and Hz (each branch's Hz consumes its own Ey), then both
 * fields combined and the branches re-seeded.
 */
void step_hml_v2(HmlPair& p, const StepContext& c);

/**
 * Split-field local extrapolation: as v2 except Ey is combined immediately
 * after its two branch updates and both Hz branches consume the combined Ey.
 */
void step_hml_v3(HmlPair& p, const StepContext& c);

}  // namespace layerlab
