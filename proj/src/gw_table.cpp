#include "gvd/gw_table.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gvd/errors.hpp"

namespace gvd {

namespace {

std::vector<unsigned long> parse_degree_key(const std::string& key, unsigned h11) {
    std::vector<unsigned long> deg;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("gw table: bad degree component '" + part + "' in key '" + key + "'");
        deg.push_back(std::stoul(part));
    }
    if (deg.size() != h11)
        throw UsageError("gw table: degree key '" + key + "' has " + std::to_string(deg.size()) +
                         " components, expected h11 = " + std::to_string(h11));
    bool all_zero = true;
    for (unsigned long d : deg)
        if (d != 0) all_zero = false;
    if (all_zero) throw UsageError("gw table: zero degree vector forbidden (key '" + key + "')");
    return deg;
}

std::map<std::vector<unsigned long>, long> parse_counts(const nlohmann::json& obj, unsigned h11,
                                                        const char* field) {
    if (!obj.is_object()) throw UsageError(std::string("gw table: ") + field + " must be an object");
    std::map<std::vector<unsigned long>, long> out;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!it.value().is_number_integer())
            throw UsageError(std::string("gw table: ") + field + "['" + it.key() +
                             "'] must be an integer");
        out[parse_degree_key(it.key(), h11)] = it.value().get<long>();
    }
    return out;
}

} // namespace

void validate_gw_table(const GWTable& t) {
    if (t.h11 < 1) throw UsageError("gw table: h11 must be >= 1");
    if (t.chat < 1) throw UsageError("gw table: chat must be >= 1");
    if (t.kappa.size() != t.h11) throw UsageError("gw table: kappa must be h11 x h11 x h11");
    for (const auto& plane : t.kappa) {
        if (plane.size() != t.h11) throw UsageError("gw table: kappa must be h11 x h11 x h11");
        for (const auto& row : plane)
            if (row.size() != t.h11) throw UsageError("gw table: kappa must be h11 x h11 x h11");
    }
    for (unsigned a = 0; a < t.h11; ++a)
        for (unsigned b = 0; b < t.h11; ++b)
            for (unsigned c = 0; c < t.h11; ++c) {
                long v = t.kappa[a][b][c];
                if (v != t.kappa[a][c][b] || v != t.kappa[b][a][c] || v != t.kappa[b][c][a] ||
                    v != t.kappa[c][a][b] || v != t.kappa[c][b][a])
                    throw UsageError("gw table: kappa not symmetric at (" + std::to_string(a) +
                                     "," + std::to_string(b) + "," + std::to_string(c) + ")");
            }
    if (t.c2.size() != t.h11)
        throw UsageError("gw table: c2 must have h11 = " + std::to_string(t.h11) + " entries");
    for (const auto& m : {t.N0, t.N1})
        for (const auto& [deg, cnt] : m) {
            (void)cnt;
            if (deg.size() != t.h11) throw UsageError("gw table: degree vector length != h11");
            bool all_zero = true;
            for (unsigned long d : deg)
                if (d != 0) all_zero = false;
            if (all_zero) throw UsageError("gw table: zero degree vector forbidden");
        }
}

GWTable parse_gw_table(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("gw table: JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw UsageError("gw table: top level must be a JSON object");

    static const char* known[] = {"h11", "chat", "kappa", "c2", "N0", "N1"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) throw UsageError("gw table: unknown field '" + it.key() + "'");
    }
    for (const char* k : {"h11", "chat", "kappa", "c2"})
        if (!doc.contains(k)) throw UsageError(std::string("gw table: missing field '") + k + "'");

    GWTable t;
    if (!doc["h11"].is_number_integer() || doc["h11"].get<long>() < 1)
        throw UsageError("gw table: h11 must be a positive integer");
    t.h11 = doc["h11"].get<unsigned>();
    if (!doc["chat"].is_number_integer()) throw UsageError("gw table: chat must be an integer");
    t.chat = doc["chat"].get<long>();

    try {
        t.kappa = doc["kappa"].get<std::vector<std::vector<std::vector<long>>>>();
        t.c2 = doc["c2"].get<std::vector<long>>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("gw table: bad kappa/c2 shape: ") + e.what());
    }
    if (doc.contains("N0")) t.N0 = parse_counts(doc["N0"], t.h11, "N0");
    if (doc.contains("N1")) t.N1 = parse_counts(doc["N1"], t.h11, "N1");

    validate_gw_table(t);
    return t;
}

GWTable load_gw_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("gw table: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_gw_table(buf.str());
}

} // namespace gvd
