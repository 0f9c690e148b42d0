#include "report.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "inspect/csv.hpp"

namespace inspect::cli {

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

Index as_index(const json& value, const std::string& what) {
    if (!value.is_number_integer()) throw ParseError(what + " must be an integer", 1, 1);
    return value.get<Index>();
}

ChangepointList from_json(const json& doc) {
    ChangepointList out;
    if (!doc.is_object() || !doc.contains("changepoints") || !doc["changepoints"].is_array())
        throw ParseError("JSON input needs a 'changepoints' array", 1, 1);
    for (const auto& item : doc["changepoints"]) {
        if (item.is_object()) {
            if (!item.contains("location")) throw ParseError("changepoint object without 'location'", 1, 1);
            out.changepoints.push_back(as_index(item["location"], "location"));
        } else {
            out.changepoints.push_back(as_index(item, "changepoint"));
        }
    }
    if (doc.contains("n")) out.n = as_index(doc["n"], "n");
    else if (doc.contains("config") && doc["config"].contains("n")) out.n = as_index(doc["config"]["n"], "n");
    return out;
}

ChangepointList from_text(const std::string& text) {
    ChangepointList out;
    std::size_t line = 1, column = 1, i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            column = 1;
            ++i;
            continue;
        }
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            ++column;
            ++i;
            continue;
        }
        const std::size_t start = i, start_column = column;
        while (i < text.size() && text[i] != ',' && !std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            ++column;
        }
        const std::string token = text.substr(start, i - start);
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) throw ParseError("cannot parse '" + token + "' as an integer", line, start_column);
        out.changepoints.push_back(static_cast<Index>(value));
    }
    return out;
}

}  // namespace

ChangepointList read_changepoint_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t first = 0;
    while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
    if (first < text.size() && (text[first] == '{' || text[first] == '[')) {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
            throw ParseError("invalid JSON in '" + path + "'", line, column);
        }
        if (doc.is_array()) doc = json{{"changepoints", doc}};
        return from_json(doc);
    }
    return from_text(text);
}

json metrics_report(const std::vector<Index>& truth, const std::vector<Index>& estimate, Index n) {
    json out;
    json warnings = json::array();
    const std::vector<double> a(truth.begin(), truth.end());
    const std::vector<double> b(estimate.begin(), estimate.end());
    if (a.empty() || b.empty()) {
        out["hausdorff"] = nullptr;
        out["wasserstein1"] = nullptr;
        warnings.push_back(std::string(a.empty() ? "truth" : "estimate") +
                           " has no changepoints; distances are undefined");
    } else {
        out["hausdorff"] = hausdorff(a, b);
        out["wasserstein1"] = wasserstein1(PointMasses::uniform(b), PointMasses::uniform(a));
    }
    out["ari"] = adjusted_rand_index(Segmentation{n, truth}, Segmentation{n, estimate});
    out["n"] = n;
    out["warnings"] = warnings;
    return out;
}

json noise_json(const NoiseProfile& profile, const std::vector<Index>& passthrough_rows) {
    json sigma = json::array();
    for (Index j = 0; j < profile.sigma_hat.size(); ++j) sigma.push_back(profile.sigma_hat(j));
    return json{{"estimator", "mad"}, {"sigma_hat", sigma}, {"passthrough_rows", passthrough_rows}};
}

void write_json(const std::string& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace inspect::cli
