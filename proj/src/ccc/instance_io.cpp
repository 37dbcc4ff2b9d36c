#include "ccc/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ccc {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

}  // namespace

std::string write_instance(const CccInstance& inst) {
    json edges = json::array();
    for (int u = 0; u < inst.n(); ++u) {
        for (int v = u + 1; v < inst.n(); ++v) {
            const Color c = inst.color(u, v);
            if (c != kGamma) edges.push_back(json::array({u, v, c}));
        }
    }
    json doc;
    doc["version"] = 1;
    doc["n"] = inst.n();
    doc["L"] = inst.num_colors();
    doc["edges"] = std::move(edges);
    return doc.dump(1) + "\n";
}

CccInstance read_instance(const std::string& text) {
    json doc = json::parse(text);
    if (!doc.is_object()) throw std::invalid_argument("instance document is not an object");
    if (doc.value("version", 0) != 1)
        throw std::invalid_argument("unsupported instance document version");
    const int n = doc.at("n").get<int>();
    const int L = doc.at("L").get<int>();
    CccInstance inst(n, L);
    std::vector<char> listed(pair_count(n), 0);
    for (const json& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 3)
            throw std::invalid_argument("edge record must be [u, v, color]");
        const int u = e[0].get<int>();
        const int v = e[1].get<int>();
        Color c;
        if (e[2].is_string()) {
            if (e[2].get<std::string>() != "gamma")
                throw std::invalid_argument("unknown color token in edge record");
            c = kGamma;
        } else {
            c = e[2].get<int>();
            if (c < 0 || c >= L) throw std::invalid_argument("edge color out of range");
        }
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw std::invalid_argument("edge vertex out of range");
        const std::size_t p = pair_index(n, u, v);
        if (listed[p] && inst.color(u, v) != c)
            throw std::invalid_argument("conflicting duplicate edge record");
        listed[p] = 1;
        inst.set_color(u, v, c);
    }
    return inst;
}

void save_instance(const CccInstance& inst, const std::string& path) {
    write_file(path, write_instance(inst));
}

CccInstance load_instance(const std::string& path) { return read_instance(read_file(path)); }

std::string write_cc_base(const CcBase& base, bool include_metric) {
    json edges = json::array();
    for (int u = 0; u < base.n; ++u)
        for (int v = u + 1; v < base.n; ++v)
            if (base.positive[pair_index(base.n, u, v)])
                edges.push_back(json::array({u, v, "+"}));
    json doc;
    doc["version"] = 1;
    doc["n"] = base.n;
    doc["edges"] = std::move(edges);
    if (include_metric) {
        json metric = json::array();
        for (int u = 0; u < base.n; ++u)
            for (int v = u + 1; v < base.n; ++v)
                metric.push_back(json::array({u, v, base.metric[pair_index(base.n, u, v)]}));
        doc["metric"] = std::move(metric);
    }
    return doc.dump(1) + "\n";
}

CcBase read_cc_base(const std::string& text, bool* has_metric) {
    json doc = json::parse(text);
    if (doc.value("version", 0) != 1)
        throw std::invalid_argument("unsupported base document version");
    CcBase base;
    base.n = doc.at("n").get<int>();
    if (base.n < 1) throw std::invalid_argument("base needs vertices");
    base.positive.assign(pair_count(base.n), false);
    base.metric.assign(pair_count(base.n), 1.0);
    for (const json& e : doc.at("edges")) {
        const int u = e.at(0).get<int>();
        const int v = e.at(1).get<int>();
        if (u < 0 || v < 0 || u >= base.n || v >= base.n || u == v)
            throw std::invalid_argument("base edge vertex out of range");
        const std::string sign = e.at(2).get<std::string>();
        if (sign != "+" && sign != "-")
            throw std::invalid_argument("base edge sign must be '+' or '-'");
        base.positive[pair_index(base.n, u, v)] = sign == "+";
    }
    bool metric_present = doc.contains("metric");
    if (metric_present) {
        for (const json& m : doc.at("metric")) {
            const int u = m.at(0).get<int>();
            const int v = m.at(1).get<int>();
            if (u < 0 || v < 0 || u >= base.n || v >= base.n || u == v)
                throw std::invalid_argument("base metric vertex out of range");
            base.metric[pair_index(base.n, u, v)] = m.at(2).get<double>();
        }
    }
    if (has_metric) *has_metric = metric_present;
    return base;
}

void save_cc_base(const CcBase& base, const std::string& path, bool include_metric) {
    write_file(path, write_cc_base(base, include_metric));
}

CcBase load_cc_base(const std::string& path, bool* has_metric) {
    return read_cc_base(read_file(path), has_metric);
}

TabularData read_tabular_text(const std::string& text, char delimiter,
                              const std::string& group_col) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty tabular file");
    auto split = [delimiter](const std::string& s) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ls(s);
        while (std::getline(ls, cell, delimiter)) out.push_back(cell);
        return out;
    };
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split(line);
    int group_idx = -1;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == group_col) group_idx = static_cast<int>(i);
    if (group_idx < 0)
        throw std::invalid_argument("group column '" + group_col + "' not found");
    const int d = static_cast<int>(header.size()) - 1;
    if (d < 1) throw std::invalid_argument("tabular file has no feature columns");

    std::vector<std::vector<double>> rows;
    std::vector<int> groups;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line);
        if (cells.size() != header.size())
            throw std::invalid_argument("tabular row width mismatch");
        std::vector<double> feat;
        feat.reserve(d);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            try {
                if (static_cast<int>(i) == group_idx) {
                    groups.push_back(std::stoi(cells[i]));
                } else {
                    feat.push_back(std::stod(cells[i]));
                }
            } catch (const std::exception&) {
                throw std::invalid_argument("non-numeric cell '" + cells[i] + "'");
            }
        }
        rows.push_back(std::move(feat));
    }
    if (rows.empty()) throw std::invalid_argument("tabular file has no data rows");

    TabularData data;
    data.features.resize(static_cast<long>(rows.size()), d);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < d; ++c) data.features(static_cast<long>(r), c) = rows[r][c];
    data.groups = std::move(groups);
    return data;
}

TabularData load_tabular(const std::string& path, char delimiter, const std::string& group_col) {
    return read_tabular_text(read_file(path), delimiter, group_col);
}

}  // namespace ccc
