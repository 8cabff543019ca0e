#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace cogsheaf {

/// One violated rule, e.g. {"latin-square", "row 3", "duplicate entry 1"}.
struct Violation {
    std::string rule;
    std::string where;
    std::string detail;
};

/// Outcome of a report-style validator.  Validators never throw on semantic
/// failures; they collect every violation in a deterministic order (ids
/// ascending) so the first entry is the canonical counterexample.
class ValidationReport {
public:
    bool ok() const { return violations_.empty(); }

    void add(std::string rule, std::string where, std::string detail = "") {
        violations_.push_back({std::move(rule), std::move(where), std::move(detail)});
    }

    /// Merge another report, prefixing its locations (used when a validator
    /// runs sub-validators, e.g. a complex validating its groups).
    void absorb(const ValidationReport& sub, const std::string& prefix) {
        for (const Violation& v : sub.violations_) {
            std::string where = prefix;
            if (!v.where.empty()) where += ", " + v.where;
            violations_.push_back({v.rule, where, v.detail});
        }
    }

    const std::vector<Violation>& violations() const { return violations_; }

    std::string summary() const {
        if (ok()) return "ok";
        std::ostringstream out;
        for (const Violation& v : violations_) {
            out << v.rule;
            if (!v.where.empty()) out << " at " << v.where;
            if (!v.detail.empty()) out << ": " << v.detail;
            out << '\n';
        }
        return out.str();
    }

private:
    std::vector<Violation> violations_;
};

} // namespace cogsheaf
