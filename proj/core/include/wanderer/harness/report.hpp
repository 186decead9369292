#ifndef WANDERER_HARNESS_REPORT_HPP
#define WANDERER_HARNESS_REPORT_HPP

#include <cstddef>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

namespace wanderer::harness {

using json = nlohmann::json;

// %.10g, with -0 printed as 0, so that reruns are byte-identical
std::string format_number(double x);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row);
    void add_row(const std::vector<double>& row);
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string sha1_hex(const std::string& data);
// the hash git assigns to a blob with this content
std::string git_blob_hash(const std::string& content);

struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
    std::vector<double> lo, hi;  // optional error bars
    std::string color = "#1f77b4";
    bool markers = true;
};

struct PlotSpec {
    std::string title, xlabel, ylabel;
    std::vector<PlotSeries> series;
    std::vector<std::pair<double, std::string>> hlines;  // value, label
    double width = 640, height = 400;
};

std::string svg_plot(const PlotSpec& spec);

// One experiment's outputs: named files plus a JSON document embedding the resolved
// config and content hashes.
class Report {
public:
    Report(std::string experiment, json config) : experiment_(std::move(experiment)), config_(std::move(config)) {}

    void add_file(const std::string& name, std::string content);
    json& results() { return results_; }
    const json& results() const { return results_; }
    json to_json() const;
    const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

    // writes every file and report.json into dir (created if missing)
    void write(const std::string& dir) const;

private:
    std::string experiment_;
    json config_;
    json results_ = json::object();
    std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace wanderer::harness

#endif
