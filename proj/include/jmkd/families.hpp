#pragma once

#include "families_jm.hpp"
#include "families_kd.hpp"

namespace jmkd {

inline BuiltFamily build_family(const std::string& id, const FamilyInputs& in) {
    if (id == "JM-P2A") return build_jm_p2a(in);
    if (id == "JM-P2B") return build_jm_p2b(in);
    if (id == "JM-PN") return build_jm_pn(in);
    if (id == "JM-Y1") return build_jm_y1(in);
    if (id == "JM-Y2") return build_jm_y2(in);
    if (id == "JM-YN") return build_jm_yn(in);
    if (id == "JM-L1") return build_jm_l1(in);
    if (id == "JM-L2") return build_jm_l2(in);
    if (id == "JM-L3") return build_jm_l3(in);
    if (id == "JM-L4") return build_jm_l4(in);
    if (id == "KD-Q1") return build_kd_q1(in);
    if (id == "KD-Q2") return build_kd_q2(in);
    if (id == "KD-LX") return build_kd_lx(in);
    if (id == "KD-LY") return build_kd_ly(in);
    throw FamilyError("unknown family id \"" + id + "\"");
}

}  // namespace jmkd
