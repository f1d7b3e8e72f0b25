#include "rydfibre/results_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "rydfibre/error.hpp"

namespace rydfibre {

double Record::get(const std::string& key) const {
    const auto it = values.find(key);
    return it == values.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
}

std::size_t ResultSet::failures() const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.ok() ? 0 : 1;
    return n;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

void write_csv(std::ostream& os, const ResultSet& rs) {
    os << "index,status";
    for (const auto& c : rs.columns) os << ',' << c;
    os << ",model,error\n";
    for (const auto& r : rs.records) {
        os << r.index << ',' << r.status;
        for (const auto& c : rs.columns) {
            os << ',';
            if (auto it = r.values.find(c); it != r.values.end()) os << format_double(it->second);
        }
        os << ',' << csv_escape(r.model) << ',' << csv_escape(r.error) << '\n';
    }
}

ResultSet read_csv(std::istream& is, const std::string& scenario) {
    ResultSet rs;
    rs.scenario = scenario;
    std::string line;
    if (!std::getline(is, line)) throw IoError("empty CSV");
    const auto header = split_csv_line(line);
    if (header.size() < 4 || header[0] != "index" || header[1] != "status" ||
        header[header.size() - 2] != "model" || header.back() != "error")
        throw IoError("unexpected CSV header");
    rs.columns.assign(header.begin() + 2, header.end() - 2);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) throw IoError("CSV row has wrong number of cells");
        Record r;
        r.index = std::stoul(cells[0]);
        r.status = cells[1];
        for (std::size_t c = 0; c < rs.columns.size(); ++c) {
            const auto& cell = cells[c + 2];
            if (cell.empty()) continue;
            r.values[rs.columns[c]] = cell == "nan" ? std::numeric_limits<double>::quiet_NaN()
                                                    : std::strtod(cell.c_str(), nullptr);
        }
        r.model = cells[cells.size() - 2];
        r.error = cells.back();
        rs.records.push_back(std::move(r));
    }
    return rs;
}

void write_json(std::ostream& os, const ResultSet& rs) {
    using nlohmann::json;
    json j;
    j["scenario"] = rs.scenario;
    j["columns"] = rs.columns;
    j["config"] = rs.config_json.empty() ? json::object() : json::parse(rs.config_json);
    j["provenance"] = {{"version", rs.provenance.version},
                       {"timestamp", rs.provenance.timestamp},
                       {"defects_path", rs.provenance.defects_path}};
    char hash[20];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(rs.provenance.defects_hash));
    j["provenance"]["defects_fnv1a64"] = hash;
    json recs = json::array();
    for (const auto& r : rs.records) {
        json o;
        o["index"] = r.index;
        o["status"] = r.status;
        if (!r.error.empty()) o["error"] = r.error;
        if (!r.model.empty()) o["model"] = r.model;
        json vals = json::object();
        for (const auto& [k, v] : r.values) vals[k] = std::isfinite(v) ? json(v) : json(nullptr);
        o["values"] = vals;
        recs.push_back(o);
    }
    j["records"] = recs;
    os << j.dump(2) << '\n';
}

std::vector<std::filesystem::path> emit_files(const ResultSet& rs, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> out;
    const auto csv = dir / (rs.scenario + ".csv");
    {
        std::ofstream f(csv);
        if (!f) throw IoError("cannot write " + csv.string());
        write_csv(f, rs);
    }
    out.push_back(csv);
    const auto js = dir / (rs.scenario + ".json");
    {
        std::ofstream f(js);
        if (!f) throw IoError("cannot write " + js.string());
        write_json(f, rs);
    }
    out.push_back(js);
    return out;
}

}  // namespace rydfibre
