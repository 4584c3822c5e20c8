#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "voxpath/harness.hpp"

namespace voxpath {

namespace {

// Shortest round-trip representation; keeps repeated runs byte-identical.
std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

void write_feature_csv(const std::string& path, const ExtractResult& result) {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot create " + path);
    f << "path,label,speaker,gender";
    for (const auto& name : result.matrix.column_names) f << ',' << name;
    f << '\n';
    for (std::size_t r = 0; r < result.matrix.n_rows(); ++r) {
        if (r < result.paths.size() && !result.paths[r].empty())
            f << result.paths[r];
        else
            f << "row" << r;
        f << ',' << (result.matrix.labels[r] == 1 ? "pathological" : "healthy");
        f << ',' << (r < result.matrix.speakers.size() ? result.matrix.speakers[r] : "");
        f << ',' << (r < result.genders.size() ? result.genders[r] : "");
        for (double v : result.matrix.rows[r]) {
            f << ',';
            if (!is_missing(v)) f << fmt_double(v);
        }
        f << '\n';
    }
}

ExtractResult read_feature_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open " + path);

    ExtractResult out;
    std::string line;
    if (!std::getline(f, line)) throw FormatError("empty feature CSV " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line);
    if (header.size() < 5 || header[0] != "path" || header[1] != "label")
        throw FormatError("feature CSV header must start with path,label,speaker,gender");
    out.matrix.column_names.assign(header.begin() + 4, header.end());

    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw FormatError("feature CSV row width mismatch in " + path);
        if (cells[1] == "healthy")
            out.matrix.labels.push_back(0);
        else if (cells[1] == "pathological")
            out.matrix.labels.push_back(1);
        else
            throw FormatError("unknown label " + cells[1]);
        out.paths.push_back(cells[0]);
        out.matrix.speakers.push_back(cells[2]);
        out.genders.push_back(cells[3]);
        std::vector<double> row;
        row.reserve(cells.size() - 4);
        for (std::size_t c = 4; c < cells.size(); ++c) {
            if (cells[c].empty()) {
                row.push_back(kMissing);
            } else {
                double v = 0.0;
                const auto res =
                    std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), v);
                if (res.ec != std::errc()) throw FormatError("bad number " + cells[c]);
                row.push_back(v);
            }
        }
        out.matrix.rows.push_back(std::move(row));
    }
    return out;
}

void write_pvalue_csv(const std::string& path, const SelectionResult& sel) {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot create " + path);
    f << "feature_name,p_value\n";
    for (const auto& [name, p] : sel.p_sorted) f << name << ',' << fmt_double(p) << '\n';
}

namespace {

nlohmann::json config_json(const ExtractConfig& cfg) {
    return {
        {"rate_hz", cfg.rate},       {"frame_ms", cfg.frame_ms},
        {"hop_ms", cfg.hop_ms},      {"mel_filters", cfg.mel_filters},
        {"f_max_hz", cfg.f_max},     {"seed", cfg.seed},
    };
}

}  // namespace

void write_extract_sidecar(const std::string& csv_path, const ExtractResult& result) {
    nlohmann::json j;
    j["config"] = config_json(result.config);
    j["rows"] = result.matrix.n_rows();
    j["columns"] = result.matrix.n_cols();
    j["warnings"] = result.warnings;
    std::ofstream f(csv_path + ".json");
    if (!f) throw FormatError("cannot create sidecar for " + csv_path);
    f << j.dump(2) << '\n';
}

void write_report_json(const std::string& path, const ExperimentReport& report) {
    nlohmann::json j;
    j["config"] = {
        {"classifier", report.config.classifier},
        {"repetitions", report.config.repetitions},
        {"seed", report.config.seed},
        {"alpha", report.config.alpha},
        {"train_fraction", report.config.train_fraction},
        {"knn_k", report.config.knn_k},
        {"forest_trees", report.config.forest_trees},
    };
    auto series = [&](auto getter) {
        std::vector<double> v;
        for (const auto& r : report.repetitions) v.push_back(getter(r));
        return v;
    };
    j["repetitions"] = {
        {"acc", series([](const RepetitionResult& r) { return r.acc; })},
        {"sen", series([](const RepetitionResult& r) { return r.sen; })},
        {"spe", series([](const RepetitionResult& r) { return r.spe; })},
        {"n_selected",
         series([](const RepetitionResult& r) { return static_cast<double>(r.n_selected); })},
    };
    j["aggregates"] = {
        {"acc", {{"mean", report.acc.mean}, {"std", report.acc.std}}},
        {"sen", {{"mean", report.sen.mean}, {"std", report.sen.std}}},
        {"spe", {{"mean", report.spe.mean}, {"std", report.spe.std}}},
        {"n_selected", {{"mean", report.n_selected.mean}, {"std", report.n_selected.std}}},
    };
    std::ofstream f(path);
    if (!f) throw FormatError("cannot create " + path);
    f << j.dump(2) << '\n';
}

std::string report_table(const ExperimentReport& report) {
    char buf[256];
    std::string out;
    out += "classifier  reps  n_selected        ACC [%]        SEN [%]        SPE [%]\n";
    std::snprintf(buf, sizeof(buf), "%-11s %-5zu %7.1f+-%-7.1f %5.1f+-%-7.1f %5.1f+-%-7.1f %5.1f+-%-7.1f\n",
                  report.config.classifier.c_str(), report.repetitions.size(),
                  report.n_selected.mean, report.n_selected.std, report.acc.mean, report.acc.std,
                  report.sen.mean, report.sen.std, report.spe.mean, report.spe.std);
    out += buf;
    return out;
}

}  // namespace voxpath
