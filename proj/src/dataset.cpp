#include "windup/dataset.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "windup/format.hpp"

namespace windup {

std::vector<std::size_t> FeatureTable::columns_matching(
    const std::function<bool(const std::string&)>& predicate) const {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < feature_names.size(); ++c) {
        if (predicate(feature_names[c])) cols.push_back(c);
    }
    return cols;
}

FeatureTable FeatureTable::select_columns(const std::vector<std::size_t>& columns) const {
    FeatureTable out;
    out.episode_ids = episode_ids;
    out.labels = labels;
    for (const std::size_t c : columns) {
        if (c >= feature_names.size()) {
            throw std::invalid_argument("select_columns: column index out of range");
        }
        out.feature_names.push_back(feature_names[c]);
    }
    out.X = Matrix(rows(), columns.size());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            out.X.at(r, i) = X.at(r, columns[i]);
        }
    }
    return out;
}

FeatureTable FeatureTable::select_rows(const std::vector<std::size_t>& row_indices) const {
    FeatureTable out;
    out.feature_names = feature_names;
    out.X = Matrix(row_indices.size(), X.cols);
    std::size_t dst = 0;
    for (const std::size_t r : row_indices) {
        if (r >= rows()) throw std::invalid_argument("select_rows: row index out of range");
        out.episode_ids.push_back(episode_ids[r]);
        out.labels.push_back(labels[r]);
        for (std::size_t c = 0; c < X.cols; ++c) out.X.at(dst, c) = X.at(r, c);
        ++dst;
    }
    return out;
}

namespace {

constexpr const char* kCsvMarker = "# windup-features-v1";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

}  // namespace

void write_feature_csv(const std::string& path, const FeatureTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_feature_csv: cannot open '" + path + "'");
    std::string buffer;
    buffer += kCsvMarker;
    buffer += "\nepisode_id,label";
    for (const auto& name : table.feature_names) {
        buffer += ',';
        buffer += name;
    }
    buffer += '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        buffer += table.episode_ids[r];
        buffer += ',';
        buffer += table.labels[r];
        for (std::size_t c = 0; c < table.X.cols; ++c) {
            buffer += ',';
            append_double(buffer, table.X.at(r, c));
        }
        buffer += '\n';
        if (buffer.size() > (1u << 20)) {
            out << buffer;
            buffer.clear();
        }
    }
    out << buffer;
}

FeatureTable read_feature_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_feature_csv: cannot open '" + path + "'");
    FeatureTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv_line(line);
        if (!header_seen) {
            if (cells.size() < 3 || cells[0] != "episode_id" || cells[1] != "label") {
                throw std::runtime_error("read_feature_csv: malformed header");
            }
            table.feature_names.assign(cells.begin() + 2, cells.end());
            table.X.cols = table.feature_names.size();
            header_seen = true;
            continue;
        }
        if (cells.size() != table.feature_names.size() + 2) {
            throw std::runtime_error("read_feature_csv: row width mismatch at row " +
                                     std::to_string(table.rows() + 1));
        }
        table.episode_ids.push_back(cells[0]);
        table.labels.push_back(cells[1]);
        for (std::size_t c = 2; c < cells.size(); ++c) {
            table.X.values.push_back(
                parse_double(cells[c].data(), cells[c].data() + cells[c].size()));
        }
        ++table.X.rows;
    }
    if (!header_seen) throw std::runtime_error("read_feature_csv: missing header");
    return table;
}

void write_split_json(const std::string& path, const SplitFile& split) {
    nlohmann::json doc;
    doc["format"] = "windup-split";
    doc["version"] = 1;
    doc["seed"] = split.seed;
    doc["train_fraction"] = split.train_fraction;
    doc["train_ids"] = split.train_ids;
    doc["test_ids"] = split.test_ids;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_split_json: cannot open '" + path + "'");
    out << doc.dump() << '\n';
}

SplitFile read_split_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_split_json: cannot open '" + path + "'");
    nlohmann::json doc;
    in >> doc;
    if (doc.value("format", "") != "windup-split" || doc.value("version", 0) != 1) {
        throw std::runtime_error("read_split_json: unrecognized file format/version");
    }
    SplitFile split;
    split.seed = doc.at("seed").get<std::uint64_t>();
    split.train_fraction = doc.at("train_fraction").get<double>();
    split.train_ids = doc.at("train_ids").get<std::vector<std::string>>();
    split.test_ids = doc.at("test_ids").get<std::vector<std::string>>();
    return split;
}

std::vector<std::size_t> rows_for_ids(const FeatureTable& table,
                                      const std::vector<std::string>& ids) {
    std::map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < table.rows(); ++r) index[table.episode_ids[r]] = r;
    std::vector<std::size_t> rows;
    rows.reserve(ids.size());
    for (const auto& id : ids) {
        const auto it = index.find(id);
        if (it == index.end()) {
            throw std::runtime_error("rows_for_ids: episode '" + id + "' not present");
        }
        rows.push_back(it->second);
    }
    return rows;
}

}  // namespace windup
