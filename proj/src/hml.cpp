#include "layerlab/hml.hpp"

#include <cstring>

namespace layerlab {

namespace {

// dst = 2*dst - src, elementwise
void extrapolate_into(std::vector<double>& dst, const std::vector<double>& src) {
    for (size_t n = 0; n < dst.size(); ++n) dst[n] = 2.0 * dst[n] - src[n];
}

}  // namespace

FieldState HmlPair::combined() const {
    FieldState out = branch_1;
    auto comb = [](std::vector<double>& a, const std::vector<double>& b) {
        for (size_t n = 0; n < a.size(); ++n) a[n] = 2.0 * a[n] - b[n];
    };
    comb(out.ex, branch_2.ex);
    comb(out.ey, branch_2.ey);
    comb(out.hz, branch_2.hz);
    if (out.has_split()) {
        comb(out.hzx, branch_2.hzx);
        comb(out.hzy, branch_2.hzy);
    }
    if (out.has_w()) comb(out.w, branch_2.w);
    return out;
}

// Shared skeleton of the two local extrapolation variants. On entry both
// branches hold the combined state of the previous step.
static void step_hml_local(HmlPair& p, const StepContext& c, bool combine_ey_first) {
    FieldState& s1 = p.branch_1;
    FieldState& s2 = p.branch_2;

    // (1) Ex once; it does not involve the absorption.
    kernels::update_ex_plain(s1, c);
    kernels::apply_ex_boundary(s1, c);
    s2.ex = s1.ex;

    // (2) Ey with sigma and with 2*sigma. Branch 2 first: it must read the
    // not-yet-overwritten fields of the shared starting state.
    kernels::update_ey_smart(s1, c, 2.0, s2.ey);
    kernels::update_ey_smart(s1, c, 1.0, s1.ey);
    kernels::apply_ey_boundary(s1, c, s1.ey);   // east value taken from old hz
    kernels::apply_ey_boundary(s1, c, s2.ey);   // identical for both branches

    if (combine_ey_first) {
        extrapolate_into(s1.ey, s2.ey);
        s2.ey = s1.ey;
    }

    // (3) Hz with sigma and with 2*sigma, each branch consuming its own Ey
    // (which is the combined one when combine_ey_first).
    kernels::update_hz_smart(s2, s2.ey, c, 2.0, s2.hz);
    kernels::update_hz_smart(s1, s1.ey, c, 1.0, s1.hz);

    // combine and re-seed both branches with the combined state
    if (!combine_ey_first) extrapolate_into(s1.ey, s2.ey);
    extrapolate_into(s1.hz, s2.hz);
    s2.ey = s1.ey;
    s2.hz = s1.hz;
}

void step_hml_v2(HmlPair& p, const StepContext& c) { step_hml_local(p, c, false); }

void step_hml_v3(HmlPair& p, const StepContext& c) { step_hml_local(p, c, true); }

}  // namespace layerlab
