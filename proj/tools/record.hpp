#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qpgas {

/// Fixed 17-significant-digit formatting; the CSV/JSON emitters below never
/// go through iostream locale machinery, so output is byte-stable.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_complex(std::complex<double> v) {
    if (v.imag() == 0.0) return fmt17(v.real());
    return fmt17(v.real()) + (v.imag() < 0.0 ? "-" : "+") + fmt17(std::abs(v.imag())) + "i";
}

/// One output record; the column set is shared by every subcommand:
/// q,p,phi,tau,domain,dim,T,mu,value,verdict. Unset cells emit empty (CSV)
/// or null (JSON).
struct Record {
    std::optional<std::string> q;
    std::optional<std::string> p;
    std::optional<double> phi;
    std::optional<double> tau;
    std::optional<std::string> domain;
    std::optional<double> dim;
    std::optional<double> temperature;
    std::optional<double> mu;
    std::optional<double> value;
    std::optional<std::string> verdict;
};

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

inline const char* kColumns[10] = {"q",   "p", "phi", "tau",   "domain",
                                   "dim", "T", "mu",  "value", "verdict"};

inline void emit_csv(std::ostream& os, const std::vector<Record>& records) {
    os << "q,p,phi,tau,domain,dim,T,mu,value,verdict\n";
    auto cell_s = [](const std::optional<std::string>& v) {
        return v ? csv_escape(*v) : std::string();
    };
    auto cell_d = [](const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); };
    for (const Record& r : records) {
        os << cell_s(r.q) << ',' << cell_s(r.p) << ',' << cell_d(r.phi) << ',' << cell_d(r.tau)
           << ',' << cell_s(r.domain) << ',' << cell_d(r.dim) << ',' << cell_d(r.temperature)
           << ',' << cell_d(r.mu) << ',' << cell_d(r.value) << ',' << cell_s(r.verdict) << '\n';
    }
}

inline void emit_json(std::ostream& os, const std::vector<Record>& records) {
    auto field_s = [](std::ostream& o, const char* key, const std::optional<std::string>& v) {
        o << '"' << key << "\":";
        if (v) o << '"' << json_escape(*v) << '"';
        else o << "null";
    };
    auto field_d = [](std::ostream& o, const char* key, const std::optional<double>& v) {
        o << '"' << key << "\":";
        if (v && std::isfinite(*v)) o << fmt17(*v);
        else o << "null";
    };
    os << "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const Record& r = records[i];
        os << "  {";
        field_s(os, "q", r.q);
        os << ',';
        field_s(os, "p", r.p);
        os << ',';
        field_d(os, "phi", r.phi);
        os << ',';
        field_d(os, "tau", r.tau);
        os << ',';
        field_s(os, "domain", r.domain);
        os << ',';
        field_d(os, "dim", r.dim);
        os << ',';
        field_d(os, "T", r.temperature);
        os << ',';
        field_d(os, "mu", r.mu);
        os << ',';
        field_d(os, "value", r.value);
        os << ',';
        field_s(os, "verdict", r.verdict);
        os << (i + 1 < records.size() ? "},\n" : "}\n");
    }
    os << "]\n";
}

} // namespace qpgas
