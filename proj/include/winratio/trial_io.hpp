#pragma once

// Dataset ingestion (long CSV: arm,time,event) and report rendering.
// Text tables print WR to 6 significant digits and AUC to 8 decimals; the
// CSV form is a fixed-header pairwise table; the JSON tree has stable key
// order. All three are byte-deterministic for identical reports.

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "winratio/analysis.hpp"
#include "winratio/comparison.hpp"
#include "winratio/detail/sha256.hpp"
#include "winratio/errors.hpp"

namespace winratio {

struct TrialDataset {
    std::string name;
    std::vector<Arm> arms;
};

namespace detail {

inline std::string fmt_auc(double auc) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8f", auc);
    return buf;
}

inline std::string fmt_wr(double wr) {
    if (std::isinf(wr)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", wr);
    return buf;
}

inline std::string fmt_opt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// cycle in precedence order -> "A > B > C > A" beats chain (reversed walk)
inline std::string beats_chain(const std::vector<std::string>& nodes) {
    std::string s = nodes.front();
    for (std::size_t k = nodes.size(); k-- > 1;) s += " > " + nodes[k];
    s += " > " + nodes.front();
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Long CSV ingest: header `arm,time,event`, one observation per row,
// event in {0,1}, time a non-negative decimal. Rows are grouped by arm in
// order of first appearance; malformed rows are rejected with their line
// number and field.

inline TrialDataset parse_long_csv(std::istream& in, const std::string& name) {
    TrialDataset ds;
    ds.name = name;
    std::map<std::string, std::size_t> arm_index;

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!header_seen) {
            if (fields != std::vector<std::string>{"arm", "time", "event"})
                throw DataError("line " + std::to_string(line_no) +
                                ": expected header 'arm,time,event'");
            header_seen = true;
            continue;
        }
        if (fields == std::vector<std::string>{"arm", "time", "event"})
            throw DataError("line " + std::to_string(line_no) + ": duplicate header");
        if (fields.size() != 3)
            throw DataError("line " + std::to_string(line_no) + ": expected 3 columns, got " +
                            std::to_string(fields.size()));

        const std::string& label = fields[0];
        if (label.empty())
            throw DataError("line " + std::to_string(line_no) + ": empty arm label");

        double time = 0.0;
        std::size_t used = 0;
        try {
            time = std::stod(fields[1], &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != fields[1].size() || !std::isfinite(time))
            throw DataError("line " + std::to_string(line_no) + ": time '" + fields[1] +
                            "' is not a finite number");
        if (time < 0.0)
            throw DataError("line " + std::to_string(line_no) + ": time '" + fields[1] +
                            "' is negative");

        bool event = false;
        if (fields[2] == "1") event = true;
        else if (fields[2] == "0") event = false;
        else
            throw DataError("line " + std::to_string(line_no) + ": event '" + fields[2] +
                            "' must be 0 or 1");

        auto [it, inserted] = arm_index.try_emplace(label, ds.arms.size());
        if (inserted) ds.arms.push_back(Arm{label, {}});
        ds.arms[it->second].records.push_back(EventRecord{time, event});
    }
    if (!header_seen) throw DataError("empty input: missing header 'arm,time,event'");
    if (ds.arms.size() < 2) throw DataError("dataset needs at least 2 arms");
    return ds;
}

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw DataError("I/O failure reading: " + path);
    return ss.str();
}

inline TrialDataset load_dataset(const std::string& path) {
    const std::string bytes = read_file_bytes(path);
    std::istringstream in(bytes);
    std::string name = path;
    const std::size_t slash = name.find_last_of("/\\");
    if (slash != std::string::npos) name = name.substr(slash + 1);
    return parse_long_csv(in, name);
}

inline std::string file_digest(const std::string& path) {
    return detail::Sha256::of(read_file_bytes(path));
}

// convenience: load + digest + full pipeline
inline AnalysisReport analyze_dataset_file(const std::string& path,
                                           const AnalysisOptions& options) {
    const TrialDataset ds = load_dataset(path);
    return analyze_arms(ds.name, ds.arms, options, file_digest(path));
}

// ---------------------------------------------------------------------------
// Renderers

enum class ReportFormat { text, csv, json_tree };

namespace detail {

struct OrientedRow {
    std::string winner, loser;
    bool decided = true;
    double auc = 0.5;  // Pr(loser < winner) when decided, Pr(first < second) otherwise
    double wr = 1.0;
    const PairResult* src = nullptr;
};

inline OrientedRow orient(const PairResult& p, double tie_epsilon) {
    OrientedRow row;
    row.src = &p;
    if (p.cmp.auc > 0.5 + tie_epsilon) {
        row.winner = p.second;
        row.loser = p.first;
        row.auc = p.cmp.auc;
    } else if (p.cmp.auc < 0.5 - tie_epsilon) {
        row.winner = p.first;
        row.loser = p.second;
        row.auc = 1.0 - p.cmp.auc;
    } else {
        row.winner = p.first;
        row.loser = p.second;
        row.decided = false;
        row.auc = p.cmp.auc;
    }
    row.wr = wr_from_auc(row.auc);
    return row;
}

inline std::string render_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << "Dataset: " << r.dataset << "\n";
    if (!r.arm_summaries.empty()) {
        os << "Arms:";
        for (const auto& a : r.arm_summaries) os << " " << a << ";";
        os << "\n";
    }
    for (const auto& s : r.spec_strings) os << "Spec: " << s << "\n";
    // thread count deliberately not echoed: reports must be byte-identical
    // across thread counts
    os << "Options: tie_epsilon=" << fmt_opt(r.options.tie_epsilon)
       << " max_loop=" << (r.options.max_loop > 0 ? r.options.max_loop
                                                  : static_cast<int>(r.graph.nodes.size()));
    if (!r.spec_strings.empty()) {
        os << " method=" << auc_method_name(r.options.method)
           << " seed=" << r.options.seed;
        if (r.options.method != AucMethod::quadrature) os << " samples=" << r.options.samples;
        if (r.options.method != AucMethod::mc) os << " abs_tol=" << fmt_opt(r.options.abs_tol);
    }
    os << " version=" << kVersion << "\n";
    if (!r.input_digest.empty()) os << "Input digest: sha256:" << r.input_digest << "\n";

    os << "\nPairwise comparisons:\n";
    for (const auto& p : r.pairwise) {
        const OrientedRow row = orient(p, r.options.tie_epsilon);
        if (!row.decided) {
            os << "  " << row.winner << " ~ " << row.loser << "   AUC " << fmt_auc(row.auc)
               << " within tie epsilon\n";
            continue;
        }
        os << "  " << row.winner << " > " << row.loser << "   WR " << fmt_wr(row.wr)
           << "   AUC " << fmt_auc(row.auc);
        if (p.cmp.wins_first + p.cmp.wins_second > 0) {
            const auto w = row.winner == p.second ? p.cmp.wins_second : p.cmp.wins_first;
            const auto l = row.winner == p.second ? p.cmp.wins_first : p.cmp.wins_second;
            os << "   wins " << w << ":" << l << " (indeterminate " << p.cmp.indeterminate
               << ")";
        }
        if (p.estimate && p.estimate->method == AucEstimate::Method::monte_carlo)
            os << "   mc n=" << p.estimate->n << " se=" << fmt_auc(p.estimate->std_error);
        else if (p.estimate && p.estimate->method == AucEstimate::Method::quadrature)
            os << "   quadrature";
        else if (p.estimate)
            os << "   exact";
        if (p.cross_check) {
            // oriented the same way as the printed AUC
            const bool flipped = row.winner == p.first;
            const double mc = flipped ? 1.0 - p.cross_check->value : p.cross_check->value;
            os << "   mc check " << fmt_auc(mc) << " (se " << fmt_auc(p.cross_check->std_error)
               << ")";
        }
        os << "   " << p.cmp.strength.name() << "\n";
    }

    os << "\nNon-transitive loops:\n";
    if (r.loops.cycles.empty()) {
        os << "  No non-transitive loops detected.\n";
    } else {
        for (std::size_t k = 0; k < r.loops.cycles.size(); ++k) {
            const Cycle& c = r.loops.cycles[k];
            const CycleAudit& a = r.audits[k];
            os << "  " << beats_chain(c.nodes) << "   min AUC " << fmt_auc(c.min_auc) << " ("
               << a.min_edge_to << " > " << a.min_edge_from << ")   bound(" << c.length
               << ") " << fmt_auc(c.bound) << "   "
               << (a.satisfied ? "within bound" : "VIOLATED") << "   product "
               << fmt_auc(c.auc_product) << "\n";
        }
    }

    if (r.certificate) {
        os << "\nCertificate: " << certificate_name(r.certificate->kind);
        if (r.certificate->kind != CertificateKind::none) {
            os << " (ordering key " << r.certificate->key_name << ":";
            for (std::size_t i = 0; i < r.certificate->keys.size(); ++i)
                os << (i ? ", " : " ") << fmt_opt(r.certificate->keys[i]);
            os << "); no non-transitive loop can form";
        } else {
            os << " (no guarantee either way)";
        }
        os << "\n";
    }
    if (!r.sufficiency.empty()) {
        std::size_t guaranteed = 0;
        for (const auto& n : r.sufficiency)
            if (n.flags.transitive_guaranteed) ++guaranteed;
        os << "\nSufficiency (AUC product rule): " << guaranteed << " of "
           << r.sufficiency.size() << " chains guaranteed transitive\n";
        for (const auto& n : r.sufficiency) {
            if (!n.flags.transitive_guaranteed) continue;
            os << "  chain " << n.z << " > " << n.y << " > " << n.x << ": product "
               << fmt_auc(n.flags.product) << " >= 1/2, transitive with any third variable\n";
        }
    }
    return os.str();
}

inline std::string render_csv(const AnalysisReport& r) {
    std::ostringstream os;
    os << "winner,loser,relation,wins_winner,wins_loser,indeterminate,auc,wr,strength\n";
    for (const auto& p : r.pairwise) {
        const OrientedRow row = orient(p, r.options.tie_epsilon);
        std::string wins_w, wins_l, ind;
        if (p.cmp.wins_first + p.cmp.wins_second > 0) {
            const bool second_won = row.winner == p.second;
            wins_w = std::to_string(second_won ? p.cmp.wins_second : p.cmp.wins_first);
            wins_l = std::to_string(second_won ? p.cmp.wins_first : p.cmp.wins_second);
            ind = std::to_string(p.cmp.indeterminate);
        }
        os << row.winner << "," << row.loser << "," << (row.decided ? ">" : "~") << ","
           << wins_w << "," << wins_l << "," << ind << "," << fmt_auc(row.auc) << ","
           << fmt_wr(row.wr) << "," << p.cmp.strength.name() << "\n";
    }
    return os.str();
}

inline nlohmann::ordered_json wr_json(double wr) {
    if (std::isinf(wr)) return "inf";
    return wr;
}

inline std::string render_json(const AnalysisReport& r) {
    using json = nlohmann::ordered_json;
    json j;
    j["dataset"] = r.dataset;

    json opts;
    opts["tie_epsilon"] = r.options.tie_epsilon;
    opts["max_loop"] = r.options.max_loop > 0 ? r.options.max_loop
                                              : static_cast<int>(r.graph.nodes.size());
    opts["version"] = kVersion;
    opts["input_digest"] =
        r.input_digest.empty() ? json(nullptr) : json("sha256:" + r.input_digest);
    if (!r.spec_strings.empty()) {
        opts["method"] = auc_method_name(r.options.method);
        opts["seed"] = r.options.seed;
        opts["samples"] = r.options.samples;
        opts["abs_tol"] = r.options.abs_tol;
        opts["specs"] = r.spec_strings;
    }
    j["options"] = std::move(opts);

    json pairwise = json::array();
    for (const auto& p : r.pairwise) {
        const OrientedRow row = orient(p, r.options.tie_epsilon);
        json e;
        e["first"] = p.first;
        e["second"] = p.second;
        e["auc"] = p.cmp.auc;
        e["wr"] = wr_json(p.cmp.wr);
        e["winner"] = row.decided ? json(row.winner) : json(nullptr);
        e["relation"] = row.decided ? ">" : "~";
        if (p.cmp.wins_first + p.cmp.wins_second > 0) {
            e["wins_first"] = p.cmp.wins_first;
            e["wins_second"] = p.cmp.wins_second;
            e["indeterminate"] = p.cmp.indeterminate;
        } else {
            e["wins_first"] = nullptr;
            e["wins_second"] = nullptr;
            e["indeterminate"] = nullptr;
        }
        json strength;
        strength["label"] = p.cmp.strength.name();
        strength["reversed"] = p.cmp.strength.reversed;
        strength["band"] = {p.cmp.strength.band_lo, p.cmp.strength.band_hi};
        e["strength"] = std::move(strength);
        if (p.estimate) {
            e["method"] = p.estimate->method_name();
            e["std_error"] = p.estimate->std_error;
            if (p.estimate->method == AucEstimate::Method::monte_carlo) {
                e["mc_n"] = p.estimate->n;
                e["mc_seed"] = p.estimate->seed;
            }
        }
        if (p.cross_check) {
            e["cross_check_value"] = p.cross_check->value;
            e["cross_check_std_error"] = p.cross_check->std_error;
        }
        pairwise.push_back(std::move(e));
    }
    j["pairwise"] = std::move(pairwise);

    json cycles = json::array();
    for (const Cycle& c : r.loops.cycles) {
        json e;
        e["nodes"] = c.nodes;
        e["beats"] = beats_chain(c.nodes);
        e["length"] = c.length;
        e["edge_aucs"] = c.edge_aucs;
        json wrs = json::array();
        for (double w : c.edge_wrs) wrs.push_back(wr_json(w));
        e["edge_wrs"] = std::move(wrs);
        e["min_auc"] = c.min_auc;
        e["auc_product"] = c.auc_product;
        e["bound"] = c.bound;
        e["bound_satisfied"] = c.bound_satisfied;
        cycles.push_back(std::move(e));
    }
    j["cycles"] = std::move(cycles);

    json audits = json::array();
    for (const CycleAudit& a : r.audits) {
        json e;
        e["nodes"] = a.nodes;
        e["min_auc"] = a.min_auc;
        e["min_edge"] = {a.min_edge_from, a.min_edge_to};
        e["bound"] = a.bound;
        e["satisfied"] = a.satisfied;
        json weak = json::array();
        for (const auto& [u, v] : a.weak_edges) weak.push_back(json::array({u, v}));
        e["weak_edges"] = std::move(weak);
        audits.push_back(std::move(e));
    }
    j["audits"] = std::move(audits);

    json certs = json::array();
    if (r.certificate) {
        json e;
        e["type"] = certificate_name(r.certificate->kind);
        if (r.certificate->kind != CertificateKind::none) {
            e["key"] = r.certificate->key_name;
            e["keys"] = r.certificate->keys;
        }
        certs.push_back(std::move(e));
    }
    for (const auto& n : r.sufficiency) {
        json e;
        e["type"] = "sufficiency";
        e["chain"] = {n.x, n.y, n.z};
        e["product"] = n.flags.product;
        e["transitive_guaranteed"] = n.flags.transitive_guaranteed;
        e["both_at_least_inv_sqrt2"] = n.flags.both_at_least_inv_sqrt2;
        certs.push_back(std::move(e));
    }
    j["certificates"] = std::move(certs);

    return j.dump(2) + "\n";
}

}  // namespace detail

inline std::string render_report(const AnalysisReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::text: return detail::render_text(report);
        case ReportFormat::csv: return detail::render_csv(report);
        case ReportFormat::json_tree: return detail::render_json(report);
    }
    throw InvalidArgument("unknown report format");
}

// Surface files: fixed header, one row per grid point, row-major in (a, b).
inline std::string render_surface(const SurfaceGrid& grid) {
    std::ostringstream os;
    os << grid.header() << "\n";
    char buf[160];
    for (const auto& row : grid.rows) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g\n", row[0], row[1], row[2], row[3]);
        os << buf;
    }
    return os.str();
}

}  // namespace winratio
