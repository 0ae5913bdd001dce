#include "arrbs/report.hpp"

#include <functional>
#include <sstream>

namespace arrbs {

std::string content_hash(const std::string& text) {
    // FNV-1a 64-bit
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

Report::Report(std::string command, const std::string& input_text)
    : command_(std::move(command)), input_echo_(input_text), input_hash_(content_hash(input_text)) {}

std::string Report::to_json() const {
    nlohmann::json j;
    j["input"] = {{"command", command_}, {"text", input_echo_}, {"hash", input_hash_}};
    for (auto& [key, value] : body_.items()) j[key] = value;
    j["warnings"] = warnings_;
    return j.dump(2) + "\n";
}

std::string Report::to_human() const {
    std::ostringstream os;
    os << "# arrbs " << command_ << " (input " << input_hash_ << ")\n";
    std::function<void(const std::string&, const nlohmann::json&, int)> render =
        [&](const std::string& key, const nlohmann::json& v, int indent) {
            std::string pad(static_cast<size_t>(indent), ' ');
            if (v.is_object()) {
                os << pad << key << ":\n";
                for (auto& [k2, v2] : v.items()) render(k2, v2, indent + 2);
            } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
                os << pad << key << ":\n";
                int i = 0;
                for (const auto& item : v) render("[" + std::to_string(i++) + "]", item, indent + 2);
            } else if (v.is_array()) {
                bool multiword = false;
                for (const auto& item : v)
                    if (item.is_string() && item.get<std::string>().find(' ') != std::string::npos) multiword = true;
                if (multiword) {
                    os << pad << key << ":\n";
                    for (const auto& item : v) os << pad << "  " << item.get<std::string>() << "\n";
                } else {
                    os << pad << key << ":";
                    for (const auto& item : v) os << " " << (item.is_string() ? item.get<std::string>() : item.dump());
                    os << "\n";
                }
            } else {
                os << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        };
    for (auto& [key, value] : body_.items()) render(key, value, 0);
    for (const auto& w : warnings_) os << "warning: " << w << "\n";
    return os.str();
}

nlohmann::json lattice_json(const Arrangement& a, const std::vector<Flat>& lattice) {
    nlohmann::json flats = nlohmann::json::array();
    for (const Flat& x : lattice) {
        nlohmann::json jx;
        jx["id"] = x.id;
        jx["rank"] = x.rank;
        nlohmann::json jset = nlohmann::json::array();
        for (int t : x.jset)
            jset.push_back({{"form", a.form(t).str(a.vars)}, {"multiplicity", a.mult[static_cast<size_t>(t)]}});
        jx["J"] = jset;
        if (x.rank >= 1) jx["indecomposable"] = is_indecomposable(a, x);
        flats.push_back(jx);
    }
    return {{"flats", flats}, {"count", lattice.size()}};
}

nlohmann::json edges_json(const std::vector<EdgeRecord>& edges) {
    nlohmann::json out = nlohmann::json::array();
    for (const EdgeRecord& e : edges) {
        nlohmann::json je;
        je["flat"] = e.flat_id;
        je["rank"] = e.rank;
        je["d_X"] = e.d_x;
        je["d_X_red"] = e.d_x_red;
        je["d_X_k"] = e.d_x_k;
        je["d_X_prime"] = e.d_x_prime;
        je["d_X_second"] = e.d_x_second;
        je["indecomposable"] = e.indecomposable;
        out.push_back(je);
    }
    return out;
}

nlohmann::json certificate_json(const FreenessCertificate& cert, const Arrangement& a) {
    nlohmann::json j;
    switch (cert.status) {
        case FreenessStatus::Free: j["status"] = "Free"; break;
        case FreenessStatus::NotFree: j["status"] = "NotFree"; break;
        case FreenessStatus::Inconclusive: j["status"] = "Inconclusive"; break;
    }
    j["exponents"] = cert.exponents;
    nlohmann::json basis = nlohmann::json::array();
    for (const Derivation& d : cert.basis) {
        nlohmann::json row = nlohmann::json::array();
        for (const Poly& p : d.coeffs) row.push_back(p.str(a.vars));
        basis.push_back(row);
    }
    j["basis"] = basis;
    if (cert.status == FreenessStatus::Free) {
        j["saito_det"] = cert.saito_det.str(a.vars);
        j["terao_factorization"] = cert.terao_factorization_ok;
    }
    if (!cert.witness.empty()) j["witness"] = cert.witness;
    return j;
}

nlohmann::json factors_json(const SLinearFactorSet& fs) {
    nlohmann::json out = nlohmann::json::array();
    for (const SLinear& f : fs.factors) out.push_back(f.str());
    return out;
}

nlohmann::json roots_json(const std::set<Rational>& roots) {
    nlohmann::json out = nlohmann::json::array();
    for (const Rational& r : roots) out.push_back(r.str());
    return out;
}

std::string factors_human(const SLinearFactorSet& fs) {
    if (fs.factors.empty()) return "1";
    std::ostringstream os;
    for (const SLinear& f : fs.factors) os << "(" << f.str() << ")";
    return os.str();
}

std::string roots_human(const std::set<Rational>& roots) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const Rational& r : roots) {
        if (!first) os << ", ";
        first = false;
        os << r.str();
    }
    os << "}";
    return os.str();
}

} // namespace arrbs
