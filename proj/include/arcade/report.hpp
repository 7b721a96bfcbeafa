#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace arcade {

// One law violation with a concrete witness (atom names or tuple text).
struct Violation {
    std::string law;
    std::vector<std::string> witness;
    std::string detail;
};

// Validation outcome. Stores up to kept_max violations but counts all of
// them, so reports stay bounded on badly broken large structures.
struct ValidationReport {
    static constexpr std::size_t kept_max = 256;

    std::vector<Violation> violations;
    std::size_t total = 0;

    bool ok() const { return total == 0; }

    void add(std::string law, std::vector<std::string> witness, std::string detail = {}) {
        ++total;
        if (violations.size() < kept_max)
            violations.push_back({std::move(law), std::move(witness), std::move(detail)});
    }

    std::string summary() const {
        if (ok()) return "ok";
        std::ostringstream os;
        os << total << " violation(s)";
        if (!violations.empty()) {
            os << "; first: " << violations.front().law << " [";
            for (std::size_t i = 0; i < violations.front().witness.size(); ++i)
                os << (i ? ", " : "") << violations.front().witness[i];
            os << "]";
            if (!violations.front().detail.empty()) os << " " << violations.front().detail;
        }
        return os.str();
    }
};

} // namespace arcade
