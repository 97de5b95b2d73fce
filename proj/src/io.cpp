#include "polylab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "polylab/error.hpp"

namespace polylab::io {

using nlohmann::json;

namespace {

double number(const json& j, const std::string& what)
{
    if (!j.is_number()) throw Error(ErrorKind::Parse, what + " must be a number");
    return j.get<double>();
}

Vec2 pair_of(const json& j, const std::string& what)
{
    if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Parse, what + " must be a pair of numbers");
    return {number(j[0], what), number(j[1], what)};
}

json pair_json(const Vec2& v) { return json::array({v[0], v[1]}); }

json parse(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
    }
}

const json& member(const json& obj, const char* key)
{
    if (!obj.is_object() || !obj.contains(key)) throw Error(ErrorKind::Parse, std::string("missing key '") + key + "'");
    return obj.at(key);
}

}  // namespace

OutlineSpec outline_from_json(const std::string& text)
{
    const json j = parse(text);
    OutlineSpec s;
    const json& verts = member(j, "vertices");
    if (!verts.is_array()) throw Error(ErrorKind::Parse, "vertices must be an array");
    for (std::size_t i = 0; i < verts.size(); ++i) s.vertices.push_back(pair_of(verts[i], "vertex " + std::to_string(i)));
    s.ray_in = pair_of(member(j, "ray_in"), "ray_in");
    s.ray_out = pair_of(member(j, "ray_out"), "ray_out");
    const json& sp = member(j, "speeds");
    if (!sp.is_array()) throw Error(ErrorKind::Parse, "speeds must be an array");
    for (const auto& v : sp) s.speeds.push_back(number(v, "speed"));
    s.alpha = j.contains("alpha") ? number(j["alpha"], "alpha") : 0.0;
    s.beta = j.contains("beta") ? number(j["beta"], "beta") : 0.0;
    return s;
}

std::string outline_to_json(const OutlineSpec& s)
{
    json j;
    j["vertices"] = json::array();
    for (const auto& v : s.vertices) j["vertices"].push_back(pair_json(v));
    j["ray_in"] = pair_json(s.ray_in);
    j["ray_out"] = pair_json(s.ray_out);
    j["speeds"] = s.speeds;
    j["alpha"] = s.alpha;
    j["beta"] = s.beta;
    return j.dump(2) + "\n";
}

MomentumMap map_from_json(const std::string& text)
{
    const json j = parse(text);
    MomentumMap m;
    m.base = pair_of(member(j, "base"), "base");
    m.y1 = number(member(j, "y1"), "y1");
    const Vec2 lin = pair_of(member(j, "linear"), "linear");
    m.linear1 = lin[0];
    m.linear2 = lin[1];
    const json& ks = member(j, "kinks");
    if (!ks.is_array()) throw Error(ErrorKind::Parse, "kinks must be an array");
    for (const auto& k : ks) {
        const Vec2 jump = pair_of(member(k, "jump"), "jump");
        m.kinks.push_back({number(member(k, "y"), "kink y"), jump[0], jump[1]});
    }
    const Vec2 q = pair_of(member(j, "quad"), "quad");
    m.quad1 = q[0];
    m.quad2 = q[1];
    return m;
}

std::string map_to_json(const MomentumMap& m)
{
    json j;
    j["base"] = pair_json(m.base);
    j["y1"] = m.y1;
    j["linear"] = json::array({m.linear1, m.linear2});
    j["kinks"] = json::array();
    for (const auto& k : m.kinks) j["kinks"].push_back({{"y", k.y0}, {"jump", json::array({k.jump1, k.jump2})}});
    j["quad"] = json::array({m.quad1, m.quad2});
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorKind::Parse, "write failed for " + path);
}

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

CsvTable parse_csv(const std::string& text)
{
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto cells = split(line);
        if (t.header.empty()) {
            t.header = cells;
            continue;
        }
        if (cells.size() != t.header.size())
            throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected " +
                                              std::to_string(t.header.size()) + " cells");
        std::vector<double> row;
        for (const auto& c : cells) {
            if (c == "nan" || c == "NaN") {
                row.push_back(std::nan(""));
                continue;
            }
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(c, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != c.size())
                throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": '" + c + "' is not a number");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw Error(ErrorKind::Parse, "CSV has no header row");
    return t;
}

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_csv(const CsvTable& t)
{
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += format_number(row[i]);
        }
        out += "\n";
    }
    return out;
}

CsvTable require_columns(const CsvTable& t, const std::vector<std::string>& names)
{
    if (t.header != names) {
        std::string want;
        for (const auto& n : names) want += (want.empty() ? "" : ",") + n;
        throw Error(ErrorKind::Parse, "expected CSV header '" + want + "'");
    }
    return t;
}

namespace {

std::vector<std::pair<double, double>> two_columns(const std::string& path, const std::vector<std::string>& names)
{
    const auto t = require_columns(parse_csv(read_file(path)), names);
    std::vector<std::pair<double, double>> out;
    for (const auto& r : t.rows) {
        if (!std::isfinite(r[0]) || !std::isfinite(r[1])) throw Error(ErrorKind::Parse, path + ": values must be finite");
        out.emplace_back(r[0], r[1]);
    }
    return out;
}

}  // namespace

std::vector<std::pair<double, double>> read_trace_csv(const std::string& path) { return two_columns(path, {"y", "value"}); }

std::vector<std::pair<double, double>> read_points_csv(const std::string& path) { return two_columns(path, {"x", "y"}); }

}  // namespace polylab::io
