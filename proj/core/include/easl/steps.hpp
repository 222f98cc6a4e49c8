#ifndef EASL_STEPS_HPP
#define EASL_STEPS_HPP

#include <optional>

#include "easl/atom.hpp"

namespace easl {

enum class RationalStep {
    proc_msg,
    aff_mod_b,
    sel_ev,
    rel_pl,
    appl_pl,
    sel_app_pl,
    add_im,
    sel_int,
    exc_int,
    clr_int,
};

enum class AffectiveStep {
    ev_class,
    appr,
    emph_appr,
    em_reg,
    emph_reg,
    em_sel,
    aff_ad,
    sel_cs,
    cope,
};

const char* step_name(RationalStep s);
const char* step_name(AffectiveStep s);

// Parses the lowercase step atoms used by coping belief-update effects
// (procmsg, affmodb, selev, relpl, applpl, selapppl, addim, selint, excint,
// clrint).
std::optional<RationalStep> rational_step_from_atom(Atom a);

} // namespace easl

#endif
