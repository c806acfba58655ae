#include "wondertope/report.hpp"

#include <algorithm>
#include <sstream>

namespace wt {

size_t VerificationReport::passed() const {
    return size_t(std::count_if(checks.begin(), checks.end(),
                                [](const Check& c) { return c.status == CheckStatus::pass; }));
}

size_t VerificationReport::failed() const {
    return size_t(std::count_if(checks.begin(), checks.end(),
                                [](const Check& c) { return c.status == CheckStatus::fail; }));
}

size_t VerificationReport::skipped() const {
    return size_t(std::count_if(checks.begin(), checks.end(),
                                [](const Check& c) { return c.status == CheckStatus::skipped; }));
}

std::string VerificationReport::table() const {
    std::ostringstream os;
    for (auto& c : checks) {
        const char* s = c.status == CheckStatus::pass ? "pass"
                        : c.status == CheckStatus::fail ? "FAIL"
                                                        : "skip";
        os << "[" << s << "] " << c.name;
        if (!c.witness.empty()) os << "  -- " << c.witness;
        os << "\n";
    }
    os << passed() << " passed, " << failed() << " failed, " << skipped() << " skipped\n";
    return os.str();
}

}  // namespace wt
