#pragma once

#include <string>
#include <vector>

namespace gosc {

enum class ItemKind {
    Check,          // counts toward the verdict
    Informational,  // printed-formula cross-checks, never affects the verdict
    ExpectedFail    // theory predicts a violation here; a violation still fails the verdict
};

enum class Compare {
    AtMost,   // pass iff residual <= tolerance
    Exceeds   // pass iff residual > tolerance (negative controls)
};

std::string to_string(ItemKind k);

struct FailureLocation {
    int row = -1;
    int col = -1;
    double value = 0.0;
    std::string note;
};

struct VerificationItem {
    std::string id;
    std::string paper_ref;  // topical tag
    double residual = 0.0;
    double tolerance = 0.0;
    ItemKind kind = ItemKind::Check;
    Compare compare = Compare::AtMost;
    bool pass = false;
    std::string note;
    std::vector<FailureLocation> failures;  // worst few locations when failing

    bool counts() const { return kind != ItemKind::Informational; }
};

struct VerificationReport {
    std::string name;
    std::vector<VerificationItem> items;

    VerificationItem& add(std::string id, std::string tag, double residual, double tolerance,
                          ItemKind kind = ItemKind::Check, Compare cmp = Compare::AtMost, std::string note = {});
    void append(const VerificationReport& other, const std::string& prefix = {});
    // true iff every counted item passes
    bool ok() const;
    int failures() const;
    const VerificationItem* find(const std::string& id) const;
    void sort_by_id();
};

}  // namespace gosc
