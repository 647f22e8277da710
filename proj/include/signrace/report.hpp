#pragma once

#include <string>

#include "json.hpp"

namespace signrace {

enum class Status { Pass, Fail, ReportOnly };

const char* to_string(Status s);

/// Outcome of one numerical check: what was measured against which bound.
/// `ReportOnly` marks comparisons whose formal regime is out of reach, so the
/// numbers are informative but nothing is asserted.
struct Report {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json measured = nlohmann::json::object();
    nlohmann::json bound = nlohmann::json::object();
    Status status = Status::ReportOnly;
    double tolerance = 0.0;

    bool failed() const noexcept { return status == Status::Fail; }
    nlohmann::json to_json() const;
};

inline Status pass_if(bool ok) { return ok ? Status::Pass : Status::Fail; }

}  // namespace signrace
