#include "ultra/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ultra::io {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError(path, "", "cannot open file");
    try {
        json j;
        in >> j;
        return j;
    } catch (const std::exception& e) {
        throw FileError(path, "", std::string("invalid JSON: ") + e.what());
    }
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

/// fmt for JSON value position: non-finite becomes null.
std::string fmt_json(double v) {
    if (!std::isfinite(v)) return "null";
    return fmt(v);
}

std::string witness_json(const Witness& w) {
    std::ostringstream os;
    os << "{\"k\":" << w.k << ",\"j\":" << w.j << ",\"lhs\":" << fmt_json(w.lhs)
       << ",\"rhs\":" << fmt_json(w.rhs) << ",\"detail\":\"" << json_escape(w.detail) << "\"}";
    return os.str();
}

}  // namespace

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

FileError::FileError(const std::string& p, const std::string& f, const std::string& what)
    : std::runtime_error(p + (f.empty() ? "" : (" [" + f + "]")) + ": " + what),
      path(p),
      field(f) {}

// ---------------------------------------------------------------------------
// sequence files

seqcore::WeightSequence load_sequence(const std::string& path) {
    const json j = parse_file(path);
    if (!j.contains("name") || !j["name"].is_string()) throw FileError(path, "name", "missing or not a string");
    if (!j.contains("K") || !j["K"].is_number_integer()) throw FileError(path, "K", "missing or not an integer");
    if (!j.contains("log_values") || !j["log_values"].is_array())
        throw FileError(path, "log_values", "missing or not an array");
    const int K = j["K"].get<int>();
    std::vector<double> v;
    for (const auto& x : j["log_values"]) {
        if (!x.is_number()) throw FileError(path, "log_values", "non-numeric entry");
        v.push_back(x.get<double>());
    }
    if (static_cast<int>(v.size()) != K + 1)
        throw FileError(path, "log_values", "length must be K+1");
    if (!v.empty() && v[0] != 0.0) throw FileError(path, "log_values", "log_values[0] must be 0.0");
    try {
        return seqcore::make_sequence(j["name"].get<std::string>(), std::move(v));
    } catch (const std::invalid_argument& e) {
        throw FileError(path, "log_values", e.what());
    }
}

void save_sequence(const seqcore::WeightSequence& M, const std::string& path,
                   const std::map<std::string, std::string>& meta) {
    json j;
    j["name"] = M.name;
    j["K"] = M.K();
    j["log_values"] = M.logM;
    j["meta"] = json::object();
    for (const auto& [k, v] : meta) j["meta"][k] = v;
    write_file(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// weight-function files

omega::WeightFunction load_weight_function(const std::string& path) {
    const json j = parse_file(path);
    if (!j.contains("family") || !j["family"].is_string())
        throw FileError(path, "family", "missing or not a string");
    const std::string fam = j["family"].get<std::string>();
    const double t_max = j.value("t_max", 1e8);
    const json params = j.value("params", json::object());
    try {
        if (fam == "power") return omega::make_weight_function(omega::Power{params.at("a").get<double>()}, t_max);
        if (fam == "log-power")
            return omega::make_weight_function(omega::LogPower{params.at("beta").get<double>()}, t_max);
        if (fam == "table") {
            omega::Table tb;
            tb.t = params.at("t").get<std::vector<double>>();
            tb.w = params.at("w").get<std::vector<double>>();
            return omega::make_weight_function(std::move(tb), t_max);
        }
    } catch (const json::exception& e) {
        throw FileError(path, "params", e.what());
    } catch (const std::invalid_argument& e) {
        throw FileError(path, "params", e.what());
    }
    throw FileError(path, "family", "unknown family '" + fam + "'");
}

void save_weight_function(const omega::WeightFunction& w, const std::string& path) {
    json j;
    j["t_max"] = w.t_max;
    if (const auto* p = std::get_if<omega::Power>(&w.family)) {
        j["family"] = "power";
        j["params"] = {{"a", p->a}};
    } else if (const auto* lp = std::get_if<omega::LogPower>(&w.family)) {
        j["family"] = "log-power";
        j["params"] = {{"beta", lp->beta}};
    } else {
        const auto& tb = std::get<omega::Table>(w.family);
        j["family"] = "table";
        j["params"] = {{"t", tb.t}, {"w", tb.w}};
    }
    write_file(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// matrix files

matrices::WeightMatrix load_matrix(const std::string& index_path) {
    const json j = parse_file(index_path);
    if (!j.contains("lambdas") || !j["lambdas"].is_array())
        throw FileError(index_path, "lambdas", "missing or not an array");
    if (!j.contains("sequence_files") || !j["sequence_files"].is_array())
        throw FileError(index_path, "sequence_files", "missing or not an array");
    const auto lambdas = j["lambdas"].get<std::vector<double>>();
    const auto files = j["sequence_files"].get<std::vector<std::string>>();
    if (lambdas.size() != files.size())
        throw FileError(index_path, "sequence_files", "length mismatch with lambdas");

    const auto dir = std::filesystem::path(index_path).parent_path();
    matrices::WeightMatrix mm;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const auto p = dir / files[i];
        mm.entries.push_back({lambdas[i], load_sequence(p.string())});
    }
    return mm;
}

void save_matrix(const matrices::WeightMatrix& mm, const std::string& index_path) {
    const auto dir = std::filesystem::path(index_path).parent_path();
    const auto stem = std::filesystem::path(index_path).stem().string();
    json j;
    j["lambdas"] = json::array();
    j["sequence_files"] = json::array();
    for (std::size_t i = 0; i < mm.entries.size(); ++i) {
        const std::string fname = stem + "_" + std::to_string(i) + ".json";
        save_sequence(mm.entries[i].M, (dir / fname).string());
        j["lambdas"].push_back(mm.entries[i].lambda);
        j["sequence_files"].push_back(fname);
    }
    write_file(index_path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// operator files

spectral::OperatorSystem load_operator(const std::string& path, int dim) {
    const json j = parse_file(path);
    if (!j.is_array() || j.empty()) throw FileError(path, "", "expected a nonempty array of operators");
    spectral::OperatorSystem sys;
    for (const auto& jop : j) {
        if (!jop.is_array() || jop.empty())
            throw FileError(path, "operator", "each operator is a nonempty array of terms");
        spectral::Operator op;
        for (const auto& jt : jop) {
            if (!jt.contains("coeff") || !jt["coeff"].is_number())
                throw FileError(path, "coeff", "missing or not a number");
            if (!jt.contains("multi_index") || !jt["multi_index"].is_array())
                throw FileError(path, "multi_index", "missing or not an array");
            const auto mi = jt["multi_index"].get<std::vector<int>>();
            if (mi.size() != static_cast<std::size_t>(dim))
                throw FileError(path, "multi_index", "length must equal dim");
            for (int x : mi)
                if (x < 0) throw FileError(path, "multi_index", "entries must be >= 0");
            spectral::Operator::Term t{jt["coeff"].get<double>(), {mi[0], dim == 2 ? mi[1] : 0}};
            op.terms.push_back(t);
        }
        sys.ops.push_back(std::move(op));
    }
    return sys;
}

void save_operator(const spectral::OperatorSystem& P, const std::string& path) {
    json j = json::array();
    for (const auto& op : P.ops) {
        json jop = json::array();
        for (const auto& t : op.terms) {
            json jt;
            jt["coeff"] = t.coeff;
            jt["multi_index"] = {t.alpha[0], t.alpha[1]};
            jop.push_back(jt);
        }
        j.push_back(jop);
    }
    write_file(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// reports

std::string norm_table_csv(const spectral::NormTable& t) {
    std::ostringstream os;
    os << "word_or_alpha,log_norm,cutoff_flag\n";
    for (const auto& r : t.rows) {
        os << '"' << (r.label.empty() ? "-" : r.label) << "\"," << fmt(r.log_norm) << ","
           << (r.cutoff_limited ? 1 : 0) << "\n";
    }
    return os.str();
}

std::string verdict_json(const Verdict& v) {
    std::ostringstream os;
    os << "{\"status\":\"" << to_string(v.status) << "\"";
    os << ",\"witness\":" << (v.witness ? witness_json(*v.witness) : "null");
    os << ",\"diag\":{";
    bool first = true;
    for (const auto& [k, val] : v.diag) {
        if (!first) os << ",";
        first = false;
        os << "\"" << json_escape(k) << "\":" << fmt_json(val);
    }
    os << "}";
    if (!v.note.empty()) os << ",\"note\":\"" << json_escape(v.note) << "\"";
    os << "}";
    return os.str();
}

std::string report_json(const Report& r) {
    std::ostringstream os;
    os << "{\"aggregate\":\"" << to_string(r.aggregate()) << "\",\"items\":[";
    for (std::size_t i = 0; i < r.items.size(); ++i) {
        if (i) os << ",";
        os << "{\"name\":\"" << json_escape(r.items[i].first)
           << "\",\"verdict\":" << verdict_json(r.items[i].second) << "}";
    }
    os << "]}";
    return os.str();
}

std::string classification_json(const spectral::Classification& c) {
    std::ostringstream os;
    os << "{\"s_hat\":" << fmt_json(c.s_hat) << ",\"log_h_hat\":" << fmt_json(c.log_h_hat)
       << ",\"rows_used\":" << c.rows_used << ",\"candidates\":[";
    for (std::size_t i = 0; i < c.candidates.size(); ++i) {
        const auto& ev = c.candidates[i];
        if (i) os << ",";
        os << "{\"name\":\"" << json_escape(ev.name) << "\",\"roumieu\":" << verdict_json(ev.roumieu)
           << ",\"beurling\":" << verdict_json(ev.beurling)
           << ",\"h_sup_tail\":" << fmt_json(ev.h_sup_tail) << ",\"h_last\":" << fmt_json(ev.h_last)
           << ",\"tail_slope\":" << fmt_json(ev.tail_slope) << "}";
    }
    os << "]}";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    const auto p = std::filesystem::path(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw FileError(path, "", "cannot open for writing");
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError(path, "", "cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace ultra::io
