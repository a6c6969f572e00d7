#include "mft/json_io.hpp"

#include <fstream>
#include <sstream>

namespace mft {

json to_json(const MomentPolynomial& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json t;
        t["e"] = e;
        t["c"] = rat_to_string(c);
        terms.push_back(t);
    }
    return json{{"budget", p.budget()}, {"terms", terms}};
}

json to_json(const LaurentExpr& e) {
    json terms = json::array();
    for (const auto& [z, c] : e.terms()) {
        json t;
        t["z"] = z;
        t["coeff"] = to_json(c);
        terms.push_back(t);
    }
    return json{{"vars", e.vars()}, {"lambda_exp", e.lambda_exp()}, {"terms", terms}};
}

json to_json(const FreeEnergy& f) {
    json j;
    j["genus"] = f.genus;
    if (f.log_token) {
        j["log_token"] = true;
        j["value"] = "-(1/24) log rho0";
        return j;
    }
    j["log_token"] = false;
    j["two_lambda_exp"] = f.two_lambda_exp;
    j["poly"] = to_json(f.poly);
    return j;
}

std::string intersection_key(const std::vector<int>& k) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] == 0) continue;
        if (!first) os << ",";
        first = false;
        os << "k" << (i + 2) << "=" << k[i];
    }
    return os.str();
}

json to_json(const IntersectionTable& t) {
    json entries = json::array();
    for (const auto& [k, v] : t.entries) {
        json e;
        e["key"] = intersection_key(k);
        e["exponents"] = k;
        e["value"] = rat_to_string(v);
        entries.push_back(e);
    }
    return json{{"genus", t.genus}, {"entries", entries}};
}

json to_json(const ExpansionMonomial& m) {
    json chords = json::array();
    for (auto [a, b] : m.chords) chords.push_back(json::array({a, b}));
    json threads = json::array();
    for (const auto& th : m.threads) {
        json t;
        t["pair"] = json::array({th.pair.first, th.pair.second});
        t["parity"] = th.even_row ? "even" : "odd";
        threads.push_back(t);
    }
    return json{{"sign", m.sign}, {"chords", chords}, {"threads", threads}};
}

json spectrum_to_json(const Spectrum& s) {
    return json{{"eigenvalues", s.eigenvalues},
                {"multiplicities", s.multiplicities},
                {"V", s.V},
                {"lambda", s.lambda}};
}

Spectrum spectrum_from_json(const json& j) {
    Spectrum s;
    try {
        s.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
        s.multiplicities = j.at("multiplicities").get<std::vector<double>>();
        s.V = j.at("V").get<double>();
        if (j.contains("lambda")) s.lambda = j.at("lambda").get<double>();
    } catch (const json::exception& e) {
        throw DomainError(std::string("spectrum schema: ") + e.what());
    }
    s.validate();
    return s;
}

Spectrum load_spectrum(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open spectrum file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DomainError(std::string("spectrum parse: ") + e.what());
    }
    return spectrum_from_json(j);
}

} // namespace mft
