#include "signrace/report.hpp"

namespace signrace {

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass:
            return "pass";
        case Status::Fail:
            return "fail";
        case Status::ReportOnly:
            return "report-only";
    }
    return "report-only";
}

nlohmann::json Report::to_json() const {
    return {
        {"check", check},     {"params", params},  {"measured", measured},
        {"bound", bound},     {"status", to_string(status)},
        {"tolerance", tolerance},
    };
}

}  // namespace signrace
