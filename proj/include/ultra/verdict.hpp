#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ultra {

/// Outcome of a condition check on a finite truncation window.
///
/// Holds is reserved for conditions that are decided exactly on the window
/// (universally quantified finite checks).  Limit conditions can only ever
/// return HoldsEmpirically, Fails or Inconclusive.
enum class Status { Holds, HoldsEmpirically, Fails, Inconclusive };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Holds: return "holds";
        case Status::HoldsEmpirically: return "holds-empirically";
        case Status::Fails: return "fails";
        case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// First counterexample (or tail diagnostic anchor) of a failed check.
struct Witness {
    long k = -1;                 ///< primary index
    long j = -1;                 ///< secondary index (pair conditions), -1 if unused
    double lhs = 0.0;            ///< violated inequality, left side (log-space where applicable)
    double rhs = 0.0;            ///< violated inequality, right side
    std::string detail;
};

struct Verdict {
    Status status = Status::Inconclusive;
    std::optional<Witness> witness;
    std::map<std::string, double> diag;  ///< tail slopes, empirical constants, partial sums, ...
    std::string note;

    bool passed() const {
        return status == Status::Holds || status == Status::HoldsEmpirically;
    }

    static Verdict holds() { return {Status::Holds, std::nullopt, {}, {}}; }
    static Verdict holds_empirically() { return {Status::HoldsEmpirically, std::nullopt, {}, {}}; }
    static Verdict fails(Witness w) { return {Status::Fails, std::move(w), {}, {}}; }
    static Verdict inconclusive(std::string why = {}) {
        Verdict v;
        v.status = Status::Inconclusive;
        v.note = std::move(why);
        return v;
    }

    Verdict& with(const std::string& key, double value) {
        diag[key] = value;
        return *this;
    }
};

/// Ordered list of named sub-verdicts; aggregation is pessimistic.
struct Report {
    std::vector<std::pair<std::string, Verdict>> items;

    void add(std::string name, Verdict v) { items.emplace_back(std::move(name), std::move(v)); }

    const Verdict* find(const std::string& name) const {
        for (const auto& [n, v] : items)
            if (n == name) return &v;
        return nullptr;
    }

    /// Fails dominates, then Inconclusive, then HoldsEmpirically, then Holds.
    Status aggregate() const {
        bool any_emp = false, any_inc = false;
        for (const auto& [n, v] : items) {
            if (v.status == Status::Fails) return Status::Fails;
            if (v.status == Status::Inconclusive) any_inc = true;
            if (v.status == Status::HoldsEmpirically) any_emp = true;
        }
        if (any_inc) return Status::Inconclusive;
        if (any_emp) return Status::HoldsEmpirically;
        return Status::Holds;
    }
};

}  // namespace ultra
