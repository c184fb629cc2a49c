#include "dqi/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "dqi/errors.hpp"
#include "dqi/io.hpp"
#include "dqi/numeric.hpp"

namespace dqi {

namespace {

using nlohmann::json;

std::string now_utc() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

json row_to_json(const ReportRow& row) {
    return json{{"label", row.label},
                {"instance_id", row.instance_id},
                {"metric", row.metric},
                {"value", row.value},
                {"uncertainty", row.uncertainty}};
}

ReportRow row_from_json(const json& j) {
    ReportRow row;
    row.label = j.at("label").get<std::string>();
    row.instance_id = j.at("instance_id").get<std::string>();
    row.metric = j.at("metric").get<std::string>();
    row.value = j.at("value").get<double>();
    row.uncertainty = j.at("uncertainty").get<double>();
    return row;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::string run_result_to_json_string(const RunResult& r) {
    json j;
    j["algorithm"] = r.algorithm;
    j["seed"] = r.seed;
    j["sweeps"] = r.sweeps;
    j["phi"] = r.phi;
    j["x"] = r.x;
    j["trajectory"] = r.trajectory;
    j["wallclock_ms"] = r.wallclock_ms;
    return j.dump(2) + "\n";
}

void append_run_csv_row(const std::string& path, const std::string& algorithm,
                        const std::string& instance_id, uint64_t seed, size_t sweeps,
                        double phi, double wallclock_ms) {
    require(algorithm.find(',') == std::string::npos &&
                instance_id.find(',') == std::string::npos,
            ErrorKind::parameter, "csv fields must not contain commas");
    std::string content;
    if (std::filesystem::exists(path)) content = read_file(path);
    if (content.empty()) content = std::string(kRunCsvHeader) + "\n";
    std::ostringstream os;
    os << content << algorithm << ',' << instance_id << ',' << seed << ',' << sweeps << ','
       << format_float(phi) << ',' << format_float(wallclock_ms) << '\n';
    write_file_atomic(path, os.str());
}

void append_run_csv(const std::string& path, const std::string& instance_id,
                    const RunResult& r) {
    append_run_csv_row(path, r.algorithm, instance_id, r.seed, r.sweeps, r.phi,
                       r.wallclock_ms);
}

std::string report_to_json_string(const ExperimentReport& rep) {
    json j;
    j["experiment_id"] = rep.experiment_id;
    j["format_version"] = rep.format_version;
    j["created_utc"] = rep.created_utc.empty() ? now_utc() : rep.created_utc;
    j["config_echo"] =
        rep.config_echo.empty() ? json::object() : json::parse(rep.config_echo);
    j["rows"] = json::array();
    for (const auto& row : rep.rows) j["rows"].push_back(row_to_json(row));
    return j.dump(2) + "\n";
}

ExperimentReport report_from_json_string(const std::string& text) {
    try {
        const json j = json::parse(text);
        ExperimentReport rep;
        rep.experiment_id = j.at("experiment_id").get<std::string>();
        rep.format_version = j.at("format_version").get<std::string>();
        rep.created_utc = j.at("created_utc").get<std::string>();
        rep.config_echo = j.at("config_echo").dump();
        for (const auto& row : j.at("rows")) rep.rows.push_back(row_from_json(row));
        return rep;
    } catch (const json::exception& e) {
        throw_parameter(std::string("report parse: ") + e.what());
    }
}

void save_report(const ExperimentReport& rep, const std::string& path) {
    write_file_atomic(path, report_to_json_string(rep));
}

ExperimentReport load_report(const std::string& path) {
    return report_from_json_string(read_file(path));
}

bool reports_value_identical(const ExperimentReport& a, const ExperimentReport& b) {
    if (a.experiment_id != b.experiment_id || a.format_version != b.format_version)
        return false;
    const json ca = a.config_echo.empty() ? json::object() : json::parse(a.config_echo);
    const json cb = b.config_echo.empty() ? json::object() : json::parse(b.config_echo);
    if (ca != cb) return false;
    if (a.rows.size() != b.rows.size()) return false;
    for (size_t i = 0; i < a.rows.size(); ++i) {
        const auto& ra = a.rows[i];
        const auto& rb = b.rows[i];
        if (ra.label != rb.label || ra.instance_id != rb.instance_id ||
            ra.metric != rb.metric || format_float(ra.value) != format_float(rb.value) ||
            format_float(ra.uncertainty) != format_float(rb.uncertainty))
            return false;
    }
    return true;
}

std::string leaderboard_table(const std::vector<std::string>& csv_texts) {
    std::map<std::pair<std::string, std::string>, double> best; // (algo, inst) -> phi
    std::set<std::string> instances;
    for (const auto& text : csv_texts) {
        std::istringstream is(text);
        std::string line;
        bool first = true;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            const auto fields = split_csv_line(line);
            if (first) {
                require(fields.size() == 6 && fields[0] == "algorithm",
                        ErrorKind::parameter, "run csv: unexpected header");
                first = false;
                continue;
            }
            require(fields.size() == 6, ErrorKind::parameter,
                    "run csv: wrong field count");
            double phi = 0.0;
            try {
                phi = std::stod(fields[4]);
            } catch (const std::exception&) {
                throw_parameter("run csv: non-numeric satisfied fraction");
            }
            const auto key = std::make_pair(fields[0], fields[1]);
            instances.insert(fields[1]);
            auto it = best.find(key);
            if (it == best.end() || phi > it->second) best[key] = phi;
        }
        require(!first || text.empty(), ErrorKind::parameter, "run csv: empty input");
    }
    require(!best.empty(), ErrorKind::parameter, "leaderboard: no rows");

    struct Entry {
        std::string label;
        double phi;
    };
    std::vector<Entry> entries;
    for (const auto& [key, phi] : best) {
        std::string label = key.first;
        if (instances.size() > 1) label += ":" + key.second;
        entries.push_back({std::move(label), phi});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.phi != b.phi) return a.phi > b.phi;
        return a.label < b.label;
    });
    std::ostringstream os;
    os << "algorithm,phi\n";
    for (const auto& e : entries) os << e.label << ',' << format_float(e.phi) << '\n';
    return os.str();
}

} // namespace dqi
