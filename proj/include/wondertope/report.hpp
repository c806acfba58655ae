#pragma once

#include <string>
#include <vector>

namespace wt {

enum class CheckStatus { pass, fail, skipped };

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string witness;  // free-form payload: pole orders, residues, failing sets
};

/// Structured pass/fail record per verified clause, deterministic order.
struct VerificationReport {
    std::vector<Check> checks;

    void add(const std::string& name, bool ok, const std::string& witness = "") {
        checks.push_back({name, ok ? CheckStatus::pass : CheckStatus::fail, witness});
    }
    void skip(const std::string& name, const std::string& why) {
        checks.push_back({name, CheckStatus::skipped, why});
    }
    void merge(const VerificationReport& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }

    size_t passed() const;
    size_t failed() const;
    size_t skipped() const;
    bool ok() const { return failed() == 0; }

    std::string table() const;
};

}  // namespace wt
