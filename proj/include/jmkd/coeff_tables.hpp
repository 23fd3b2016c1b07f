// Shared containers for coefficient recurrences and the cross-check report.
//
// Every generated coefficient family exists in two independent forms: the
// value produced by running the defining recurrence, and a closed-form
// expression for the same object.  The discrepancy report records, per
// coefficient, whether the two agree; mismatches carry a note describing the
// exact defect in the closed form.  Honest mismatches are data, not errors.
#pragma once

#include "poly.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace jmkd {

struct DiscrepancyEntry {
    std::string family;       // family identifier, e.g. "JM-P2B"
    std::string index;        // which coefficient, e.g. "B[-3]"
    std::string recurrence;   // value obtained from the recurrence
    std::string closed_form;  // value obtained from the closed-form expression
    std::string inputs;       // seeds / sizes the comparison ran with
    bool match = false;
    std::string note;         // empty when matching; defect description otherwise
};

using DiscrepancyReport = std::vector<DiscrepancyEntry>;

inline nlohmann::ordered_json to_json(const DiscrepancyEntry& d) {
    nlohmann::ordered_json j;
    j["family"] = d.family;
    j["index"] = d.index;
    j["recurrenceValue"] = d.recurrence;
    j["closedFormValue"] = d.closed_form;
    j["inputs"] = d.inputs;
    j["match"] = d.match;
    j["note"] = d.note;
    return j;
}

inline nlohmann::ordered_json to_json(const DiscrepancyReport& r) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& d : r) arr.push_back(to_json(d));
    return arr;
}

inline DiscrepancyEntry compare_polys(const std::string& family, const std::string& index,
                                      const Poly& rec, const Poly& closed,
                                      const std::string& inputs, const std::string& note_on_mismatch) {
    DiscrepancyEntry d;
    d.family = family;
    d.index = index;
    d.recurrence = rec.to_string();
    d.closed_form = closed.to_string();
    d.inputs = inputs;
    d.match = (rec == closed);
    if (!d.match) d.note = note_on_mismatch;
    return d;
}

}  // namespace jmkd
