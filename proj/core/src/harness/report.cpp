#include "wanderer/harness/report.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "wanderer/error.hpp"

namespace wanderer::harness {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw Error(ErrorCode::InvalidParams, "CSV row width mismatch");
    rows_.push_back(std::move(row));
}

void CsvTable::add_row(const std::vector<double>& row) {
    std::vector<std::string> r;
    for (double x : row) r.push_back(format_number(x));
    add_row(std::move(r));
}

std::string CsvTable::str() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return os.str();
}

std::string sha1_hex(const std::string& data) {
    unsigned char md[SHA_DIGEST_LENGTH];
    SHA1(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned char c : md) {
        out += hex[c >> 4];
        out += hex[c & 15];
    }
    return out;
}

std::string git_blob_hash(const std::string& content) {
    std::string blob = "blob " + std::to_string(content.size());
    blob.push_back('\0');
    return sha1_hex(blob + content);
}

namespace {

std::string esc(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '<') o += "&lt;";
        else if (c == '>') o += "&gt;";
        else if (c == '&') o += "&amp;";
        else o += c;
    }
    return o;
}

}  // namespace

std::string svg_plot(const PlotSpec& spec) {
    const double W = spec.width, H = spec.height, ml = 70, mr = 150, mt = 40, mb = 50;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : spec.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min({y0, s.y[i], s.lo.empty() ? s.y[i] : s.lo[i]});
            y1 = std::max({y1, s.y[i], s.hi.empty() ? s.y[i] : s.hi[i]});
        }
    for (const auto& [v, l] : spec.hlines) {
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
    }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << esc(spec.title) << "</text>\n";
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\"" << H - mt - mb
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
        os << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 16 << "\" text-anchor=\"middle\">" << format_number(std::round(xv * 1000) / 1000) << "</text>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << format_number(std::round(yv * 1000) / 1000) << "</text>\n";
    }
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << esc(spec.xlabel) << "</text>\n";
    os << "<text x=\"16\" y=\"" << (mt + H - mb) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << (mt + H - mb) / 2
       << ")\">" << esc(spec.ylabel) << "</text>\n";
    for (const auto& [v, l] : spec.hlines) {
        os << "<line x1=\"" << ml << "\" x2=\"" << W - mr << "\" y1=\"" << py(v) << "\" y2=\"" << py(v)
           << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
        os << "<text x=\"" << W - mr + 4 << "\" y=\"" << py(v) + 4 << "\" fill=\"gray\">" << esc(l) << "</text>\n";
    }
    double ly = mt + 10;
    for (const auto& s : spec.series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) os << (i ? " " : "") << px(s.x[i]) << ',' << py(s.y[i]);
        os << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!s.lo.empty())
                os << "<line x1=\"" << px(s.x[i]) << "\" x2=\"" << px(s.x[i]) << "\" y1=\"" << py(s.lo[i]) << "\" y2=\""
                   << py(s.hi[i]) << "\" stroke=\"" << s.color << "\"/>\n";
            if (s.markers)
                os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
        }
        os << "<line x1=\"" << W - mr + 6 << "\" x2=\"" << W - mr + 26 << "\" y1=\"" << ly << "\" y2=\"" << ly << "\" stroke=\""
           << s.color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << W - mr + 30 << "\" y=\"" << ly + 4 << "\">" << esc(s.label) << "</text>\n";
        ly += 16;
    }
    os << "</svg>\n";
    return os.str();
}

void Report::add_file(const std::string& name, std::string content) {
    for (auto& f : files_)
        if (f.first == name) {
            f.second = std::move(content);
            return;
        }
    files_.emplace_back(name, std::move(content));
}

json Report::to_json() const {
    json outputs = json::object();
    for (const auto& [name, content] : files_) outputs[name] = git_blob_hash(content);
    return json{{"experiment", experiment_},
                {"config", config_},
                {"config_hash", git_blob_hash(config_.dump())},
                {"outputs", outputs},
                {"results", results_}};
}

void Report::write(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& content) {
        std::ofstream out(fs::path(dir) / name, std::ios::binary);
        if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + (fs::path(dir) / name).string());
        out << content;
    };
    for (const auto& [name, content] : files_) put(name, content);
    put("report.json", to_json().dump(2) + "\n");
}

}  // namespace wanderer::harness
