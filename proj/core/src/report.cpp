#include "gosc/report.hpp"

#include <algorithm>
#include <cmath>

namespace gosc {

std::string to_string(ItemKind k) {
    switch (k) {
        case ItemKind::Check: return "check";
        case ItemKind::Informational: return "informational";
        case ItemKind::ExpectedFail: return "expected-fail";
    }
    return "check";
}

VerificationItem& VerificationReport::add(std::string id, std::string tag, double residual, double tolerance,
                                          ItemKind kind, Compare cmp, std::string note) {
    VerificationItem it;
    it.id = std::move(id);
    it.paper_ref = std::move(tag);
    it.residual = residual;
    it.tolerance = tolerance;
    it.kind = kind;
    it.compare = cmp;
    it.note = std::move(note);
    if (std::isnan(residual)) it.pass = false;
    else it.pass = cmp == Compare::AtMost ? residual <= tolerance : residual > tolerance;
    items.push_back(std::move(it));
    return items.back();
}

void VerificationReport::append(const VerificationReport& other, const std::string& prefix) {
    for (VerificationItem it : other.items) {
        if (!prefix.empty()) it.id = prefix + it.id;
        items.push_back(std::move(it));
    }
}

bool VerificationReport::ok() const { return failures() == 0; }

int VerificationReport::failures() const {
    return static_cast<int>(std::count_if(items.begin(), items.end(),
                                          [](const VerificationItem& it) { return it.counts() && !it.pass; }));
}

const VerificationItem* VerificationReport::find(const std::string& id) const {
    for (const auto& it : items)
        if (it.id == id) return &it;
    return nullptr;
}

void VerificationReport::sort_by_id() {
    std::stable_sort(items.begin(), items.end(),
                     [](const VerificationItem& a, const VerificationItem& b) { return a.id < b.id; });
}

}  // namespace gosc
