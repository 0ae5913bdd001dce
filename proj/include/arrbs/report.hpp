#ifndef ARRBS_REPORT_HPP
#define ARRBS_REPORT_HPP

#include <json.hpp>
#include <set>
#include <string>
#include <vector>

#include "arrbs/bsformulas.hpp"

namespace arrbs {

// Deterministic report: same input, same bytes. All rationals serialize as
// "p" or "p/q".
class Report {
public:
    Report(std::string command, const std::string& input_text);

    nlohmann::json& body() { return body_; }
    const nlohmann::json& body() const { return body_; }
    void warn(const std::string& w) { warnings_.push_back(w); }
    const std::vector<std::string>& warnings() const { return warnings_; }

    std::string to_json() const;
    std::string to_human() const;

private:
    std::string command_;
    std::string input_echo_;
    std::string input_hash_;
    nlohmann::json body_;
    std::vector<std::string> warnings_;
};

std::string content_hash(const std::string& text);

nlohmann::json lattice_json(const Arrangement& a, const std::vector<Flat>& lattice);
nlohmann::json edges_json(const std::vector<EdgeRecord>& edges);
nlohmann::json certificate_json(const FreenessCertificate& cert, const Arrangement& a);
nlohmann::json factors_json(const SLinearFactorSet& fs);
nlohmann::json roots_json(const std::set<Rational>& roots);

// Product display: "(s1 + 1)(3 s1 + 2)" or "1" when empty.
std::string factors_human(const SLinearFactorSet& fs);
std::string roots_human(const std::set<Rational>& roots);

} // namespace arrbs

#endif
