#ifndef TPLAB_IO_HPP
#define TPLAB_IO_HPP

// Serialization: JSON-lines path records, RFC 4180 CSV curves and the
// key=value run configuration format.

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tplab/errors.hpp"
#include "tplab/process.hpp"
#include "tplab/sampler.hpp"

namespace tplab::io {

using json = nlohmann::ordered_json;

/// Shortest representation that reads back to the same double.
inline std::string format_number(double x) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

// ---------------------------------------------------------------------------
// Process descriptors

inline std::string mixture_to_string(const MixtureParams& m) {
    std::string s;
    for (std::size_t i = 0; i < m.components.size(); ++i) {
        const auto& c = m.components[i];
        s += (i ? ";" : "") + format_number(c.weight) + ":" + format_number(c.params.alpha) + ":" +
             format_number(c.params.lambda);
    }
    return s;
}

/// "b:alpha:lambda;b:alpha:lambda;..."
inline MixtureParams parse_mixture(const std::string& spec) {
    MixtureParams m;
    std::istringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) {
            continue;
        }
        std::istringstream is(item);
        std::string b, a, l;
        if (!std::getline(is, b, ':') || !std::getline(is, a, ':') || !std::getline(is, l)) {
            throw DomainError("mixture component '" + item + "' is not weight:alpha:lambda");
        }
        try {
            m.components.push_back({std::stod(b), {std::stod(a), std::stod(l)}});
        } catch (const std::exception&) {
            throw DomainError("mixture component '" + item + "' has a non-numeric field");
        }
    }
    m.validate();
    return m;
}

inline json descriptor_to_json(const ProcessDescriptor& d) {
    json j;
    j["family"] = family_name(d.family);
    switch (d.family) {
        case Family::fou:
        case Family::tfbm:
        case Family::tfgn:
            j["alpha"] = d.single.alpha;
            j["lambda"] = d.single.lambda;
            break;
        case Family::tfbm2:
            j["alpha"] = d.two.alpha;
            j["beta"] = d.two.beta;
            j["lambda"] = d.two.lambda;
            break;
        case Family::mixed: j["mixture"] = mixture_to_string(d.mixture); break;
        case Family::tmbm:
            j["profile"] = d.profile->description();
            j["lambda"] = d.single.lambda;
            break;
    }
    return j;
}

inline ProcessDescriptor descriptor_from_json(const json& j) {
    auto num = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_number()) {
            throw DomainError(std::string("process record lacks numeric field '") + key + "'");
        }
        return j[key].get<double>();
    };
    if (!j.contains("family") || !j["family"].is_string()) {
        throw DomainError("process record lacks 'family'");
    }
    Family f = parse_family(j["family"].get<std::string>());
    switch (f) {
        case Family::fou: return ProcessDescriptor::fou({num("alpha"), num("lambda")});
        case Family::tfbm: return ProcessDescriptor::tfbm({num("alpha"), num("lambda")});
        case Family::tfgn: return ProcessDescriptor::tfgn({num("alpha"), num("lambda")});
        case Family::tfbm2: return ProcessDescriptor::tfbm2({num("alpha"), num("beta"), num("lambda")});
        case Family::mixed: return ProcessDescriptor::mixed(parse_mixture(j.at("mixture").get<std::string>()));
        case Family::tmbm:
            return ProcessDescriptor::tmbm(HurstProfile::parse(j.at("profile").get<std::string>()), num("lambda"));
    }
    throw DomainError("unreachable family");
}

// ---------------------------------------------------------------------------
// Paths

inline json path_to_json(const GaussianPath& p) {
    json j;
    j["seed"] = p.seed;
    j["master_seed"] = p.master_seed;
    j["path_index"] = p.path_index;
    j["t0"] = p.grid.t0;
    j["dt"] = p.grid.dt;
    j["n"] = p.grid.n;
    j["method"] = method_name(p.method);
    j["family"] = family_name(p.process.family);
    j["process"] = descriptor_to_json(p.process);
    j["rng"] = kRngAlgorithm;
    j["jitter"] = p.jitter;
    j["warnings"] = p.warnings;
    j["values"] = p.values;
    return j;
}

inline void write_paths(std::ostream& os, const std::vector<GaussianPath>& paths) {
    for (const auto& p : paths) {
        os << path_to_json(p).dump() << '\n';
    }
}

/// Reads JSON-lines path records; schema errors name the offending line.
inline std::vector<GaussianPath> read_paths(std::istream& is) {
    std::vector<GaussianPath> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto fail = [&](const std::string& why) {
            return DomainError("path file line " + std::to_string(lineno) + ": " + why);
        };
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw fail(std::string("invalid JSON (") + e.what() + ")");
        }
        try {
            GaussianPath p;
            if (!j.is_object()) {
                throw fail("record is not an object");
            }
            for (const char* key : {"seed", "t0", "dt", "values", "method", "family"}) {
                if (!j.contains(key)) {
                    throw fail(std::string("missing field '") + key + "'");
                }
            }
            p.seed = j["seed"].get<std::uint64_t>();
            p.master_seed = j.value("master_seed", p.seed);
            p.path_index = j.value("path_index", std::uint64_t{0});
            p.grid.t0 = j["t0"].get<double>();
            p.grid.dt = j["dt"].get<double>();
            p.values = j["values"].get<std::vector<double>>();
            p.grid.n = p.values.size();
            if (j.contains("n") && j["n"].get<std::size_t>() != p.grid.n) {
                throw fail("'n' does not match the number of values");
            }
            const auto method = j["method"].get<std::string>();
            if (method == "cholesky") {
                p.method = SampleMethod::cholesky;
            } else if (method == "spectral_increments") {
                p.method = SampleMethod::spectral_increments;
            } else {
                throw fail("unknown method '" + method + "'");
            }
            if (j.contains("process")) {
                p.process = descriptor_from_json(j["process"]);
            } else {
                // Minimal records carry only the family; parameters default.
                p.process.family = parse_family(j["family"].get<std::string>());
            }
            p.jitter = j.value("jitter", 0.0);
            if (j.contains("warnings")) {
                p.warnings = j["warnings"].get<std::vector<std::string>>();
            }
            p.grid.validate();
            out.push_back(std::move(p));
        } catch (const json::exception& e) {
            throw fail(std::string("schema error (") + e.what() + ")");
        } catch (const DomainError& e) {
            const std::string what = e.what();
            if (what.rfind("path file line", 0) == 0) {
                throw;
            }
            throw fail(what);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') {
            q += '"';
        }
        q += c;
    }
    return q + "\"";
}

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void header(const std::vector<std::string>& cols) { row(cols); }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            os_ << (i ? "," : "") << csv_field(fields[i]);
        }
        os_ << "\r\n";
    }

    void row(const std::vector<double>& values) {
        std::vector<std::string> f;
        f.reserve(values.size());
        for (double v : values) {
            f.push_back(format_number(v));
        }
        row(f);
    }

private:
    std::ostream& os_;
};

// ---------------------------------------------------------------------------
// key=value configuration

/// Parses "key = value" lines; '#' starts a comment. Keys are the long CLI
/// flag names without dashes.
inline std::map<std::string, std::string> parse_config(std::istream& is, const std::string& name = "config") {
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DomainError(name + " line " + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw DomainError(name + " line " + std::to_string(lineno) + ": empty key");
        }
        kv[key] = value;
    }
    return kv;
}

inline std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open config file " + path);
    }
    return parse_config(in, path);
}

}  // namespace tplab::io

#endif
