#include "easl/steps.hpp"

namespace easl {

const char* step_name(RationalStep s) {
    switch (s) {
    case RationalStep::proc_msg: return "ProcMsg";
    case RationalStep::aff_mod_b: return "AffModB";
    case RationalStep::sel_ev: return "SelEv";
    case RationalStep::rel_pl: return "RelPl";
    case RationalStep::appl_pl: return "ApplPl";
    case RationalStep::sel_app_pl: return "SelAppPl";
    case RationalStep::add_im: return "AddIm";
    case RationalStep::sel_int: return "SelInt";
    case RationalStep::exc_int: return "ExcInt";
    case RationalStep::clr_int: return "ClrInt";
    }
    return "?";
}

const char* step_name(AffectiveStep s) {
    switch (s) {
    case AffectiveStep::ev_class: return "EvClass";
    case AffectiveStep::appr: return "Appr";
    case AffectiveStep::emph_appr: return "EmphAppr";
    case AffectiveStep::em_reg: return "EmReg";
    case AffectiveStep::emph_reg: return "EmphReg";
    case AffectiveStep::em_sel: return "EmSel";
    case AffectiveStep::aff_ad: return "AffAd";
    case AffectiveStep::sel_cs: return "SelCs";
    case AffectiveStep::cope: return "Cope";
    }
    return "?";
}

std::optional<RationalStep> rational_step_from_atom(Atom a) {
    const std::string& s = a.str();
    if (s == "procmsg") return RationalStep::proc_msg;
    if (s == "affmodb") return RationalStep::aff_mod_b;
    if (s == "selev") return RationalStep::sel_ev;
    if (s == "relpl") return RationalStep::rel_pl;
    if (s == "applpl") return RationalStep::appl_pl;
    if (s == "selapppl") return RationalStep::sel_app_pl;
    if (s == "addim") return RationalStep::add_im;
    if (s == "selint") return RationalStep::sel_int;
    if (s == "excint") return RationalStep::exc_int;
    if (s == "clrint") return RationalStep::clr_int;
    return std::nullopt;
}

} // namespace easl
