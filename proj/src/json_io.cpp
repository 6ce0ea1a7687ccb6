#include "taylor/json_io.hpp"

#include "taylor/errors.hpp"

namespace taylor {

nlohmann::ordered_json scheme_to_json(const ExpansionScheme& scheme) {
    nlohmann::ordered_json j;
    j["n"] = scheme.n();
    j["t"] = std::vector<double>(scheme.nodes().begin(), scheme.nodes().end());
    j["omega"] = std::vector<double>(scheme.weights().begin(), scheme.weights().end());
    return j;
}

ExpansionScheme scheme_from_json(const nlohmann::json& j) {
    try {
        const int n = j.at("n").get<int>();
        const auto t = j.at("t").get<std::vector<double>>();
        const auto omega = j.at("omega").get<std::vector<double>>();
        if (n < 1 || t.size() != static_cast<std::size_t>(n + 1)) {
            throw Error(ErrorKind::LengthMismatch,
                        "\"t\" must hold n+1 = " + std::to_string(n + 1) + " nodes");
        }
        return ExpansionScheme::from_nodes(t, omega);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed scheme JSON: ") + e.what());
    }
}

nlohmann::ordered_json report_to_json(const RemainderReport& report) {
    nlohmann::ordered_json j;
    j["approx"] = report.approximation;
    j["true"] = report.true_value;
    j["remainder"] = report.remainder;
    j["lo"] = report.envelope_lo;
    j["hi"] = report.envelope_hi;
    j["width"] = report.bound_width;
    j["contained"] = report.contained;
    return j;
}

nlohmann::ordered_json quad_to_json(const QuadReport& report) {
    nlohmann::ordered_json j;
    j["value"] = report.value;
    j["true"] = report.true_value ? nlohmann::ordered_json(*report.true_value) : nullptr;
    j["abs_error"] = report.abs_error ? nlohmann::ordered_json(*report.abs_error) : nullptr;
    j["bound"] = report.bound;
    j["n"] = report.n;
    return j;
}

} // namespace taylor
