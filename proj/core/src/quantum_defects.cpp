#include "rydfibre/quantum_defects.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "rydfibre/error.hpp"

#ifndef RYDFIBRE_DEFAULT_DEFECTS_PATH
#define RYDFIBRE_DEFAULT_DEFECTS_PATH "rb87_quantum_defects.dat"
#endif

namespace rydfibre {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

QuantumDefectTable QuantumDefectTable::parse(const std::string& text) {
    QuantumDefectTable t;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        auto fail = [&](const std::string& why) {
            throw IoError("quantum-defect table line " + std::to_string(lineno) + ": " + why);
        };

        if (line.find(',') == std::string::npos) {
            std::istringstream kv(line);
            std::string key;
            double value = 0.0;
            if (!(kv >> key >> value)) fail("expected '<key> <value>'");
            if (key == "rydberg_constant_ghz")
                t.rydberg_ghz_ = value;
            else if (key == "core_polarizability_au")
                t.core_polarizability_au_ = value;
            else
                fail("unknown key '" + key + "'");
            continue;
        }

        std::istringstream row(line);
        std::string field;
        std::vector<std::string> cols;
        while (std::getline(row, field, ',')) cols.push_back(trim(field));
        if (cols.size() != 5) fail("expected 5 comma-separated columns");
        try {
            const int l = std::stoi(cols[1]);
            const int two_j = std::stoi(cols[2]);
            const DefectSeries s{std::stod(cols[3]), std::stod(cols[4])};
            if (s.delta0 < 0.0) fail("delta0 must be non-negative");
            t.set_series(l, two_j, s);
        } catch (const std::invalid_argument&) {
            fail("non-numeric column");
        }
    }
    if (t.rydberg_ghz_ <= 0.0) throw IoError("quantum-defect table: missing rydberg_constant_ghz");
    t.source_ = text;
    t.hash_ = fnv1a64(text);
    return t;
}

QuantumDefectTable QuantumDefectTable::load(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open quantum-defect table " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::filesystem::path QuantumDefectTable::bundled_path() { return RYDFIBRE_DEFAULT_DEFECTS_PATH; }

const QuantumDefectTable& QuantumDefectTable::bundled() {
    static const QuantumDefectTable table = load(bundled_path());
    return table;
}

QuantumDefectTable QuantumDefectTable::hydrogenic(double rydberg_ghz, int max_l) {
    QuantumDefectTable t;
    t.rydberg_ghz_ = rydberg_ghz;
    for (int l = 0; l <= max_l; ++l) {
        if (l > 0) t.set_series(l, 2 * l - 1, {});
        t.set_series(l, 2 * l + 1, {});
    }
    return t;
}

void QuantumDefectTable::set_series(int l, int two_j, DefectSeries s) {
    series_[{l, two_j}] = s;
    if (l > max_l_) max_l_ = l;
}

bool QuantumDefectTable::has_series(int l, int two_j) const {
    return series_.count({l, two_j}) > 0 || l > max_l_;
}

double QuantumDefectTable::defect(int n, int l, int two_j) const {
    if (l > max_l_) return 0.0;
    const auto it = series_.find({l, two_j});
    if (it == series_.end())
        throw MissingSeriesError("no quantum-defect series for L=" + std::to_string(l) +
                                 ", 2J=" + std::to_string(two_j));
    const double d0 = it->second.delta0;
    const double x = n - d0;
    return d0 + it->second.delta2 / (x * x);
}

double QuantumDefectTable::energy(const AtomState& s) const {
    s.validate();
    const double ns = s.n - defect(s.n, s.l, s.two_j);
    return -rydberg_ghz_ / (ns * ns);
}

}  // namespace rydfibre
