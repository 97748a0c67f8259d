#include "ssmote/csv.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "ssmote/report.hpp"

namespace ssmote {

CsvTable parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;

    const auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    const auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field_started) {
                    throw CsvError("csv line " + std::to_string(line) +
                                   ": stray quote inside an unquoted field");
                }
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                ++line;
                break;
            default:
                field += c;
                field_started = true;
        }
    }
    if (in_quotes) throw CsvError("csv: unterminated quoted field at end of input");
    if (field_started || !record.empty()) end_record();

    // Drop blank lines.
    std::erase_if(records, [](const auto& r) { return r.size() == 1 && r.front().empty(); });
    if (records.empty()) throw CsvError("csv: missing header row");

    CsvTable table;
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw CsvError("csv data row " + std::to_string(r) + ": " +
                           std::to_string(records[r].size()) + " fields, header has " +
                           std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

std::string format_csv_row(std::span<const std::string> fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\r\n") == std::string::npos) {
            out += f;
            continue;
        }
        out += '"';
        for (char c : f) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
    }
    out += '\n';
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view raw, std::size_t data_row, const std::string& column) {
    const std::string_view s = trim(raw);
    double value = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw CsvError("csv data row " + std::to_string(data_row) + ", column '" + column +
                       "': '" + std::string(raw) + "' is not a finite number");
    }
    return value;
}

}  // namespace

CsvDataset load_csv_dataset(const CsvTable& table, std::string_view label_column) {
    CsvDataset out;
    out.header = table.header;
    std::size_t found = table.header.size();
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (table.header[c] == label_column) {
            if (found != table.header.size()) {
                throw CsvError("csv: label column '" + std::string(label_column) +
                               "' appears more than once");
            }
            found = c;
        }
    }
    if (found == table.header.size()) {
        throw CsvError("csv: no label column named '" + std::string(label_column) + "'");
    }
    if (table.header.size() < 2) throw CsvError("csv: no feature columns besides the label");
    out.label_column = found;

    std::map<std::string, std::size_t> counts;
    for (const auto& row : table.rows) ++counts[std::string(trim(row[found]))];
    if (counts.size() != 2) {
        std::string seen;
        for (const auto& [value, n] : counts) seen += (seen.empty() ? "" : ", ") + value;
        throw CsvError("csv: label column must hold exactly 2 classes, found " +
                       std::to_string(counts.size()) + (seen.empty() ? "" : " (" + seen + ")"));
    }
    auto it = counts.begin();
    const auto& [first_value, first_count] = *it++;
    const auto& [second_value, second_count] = *it;
    if (first_count == second_count) {
        throw CsvError("csv: classes are exactly balanced (" + std::to_string(first_count) +
                       " each); there is no minority class to oversample");
    }
    out.minority_value = first_count < second_count ? first_value : second_value;
    out.majority_value = first_count < second_count ? second_value : first_value;

    const std::size_t d = table.header.size() - 1;
    std::vector<double> values;
    values.reserve(table.rows.size() * d);
    std::vector<int> labels;
    labels.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == found) continue;
            values.push_back(parse_number(row[c], r + 1, table.header[c]));
        }
        const std::string label(trim(row[found]));
        out.label_values.push_back(label);
        labels.push_back(label == out.minority_value ? kMinorityLabel : kMajorityLabel);
    }
    out.data = Dataset(PointSet(table.rows.size(), d, std::move(values)), std::move(labels));
    return out;
}

std::string serialize_with_synthetic(const CsvDataset& input, const SyntheticBatch& batch) {
    std::string out;
    std::vector<std::string> header = input.header;
    header.emplace_back("synthetic");
    out += format_csv_row(header);

    const auto emit = [&](std::span<const double> features, const std::string& label,
                          const char* flag) {
        std::vector<std::string> fields;
        fields.reserve(header.size());
        std::size_t j = 0;
        for (std::size_t c = 0; c < input.header.size(); ++c) {
            fields.push_back(c == input.label_column ? label : format_double(features[j++]));
        }
        fields.emplace_back(flag);
        out += format_csv_row(fields);
    };
    const auto& features = input.data.features();
    for (std::size_t i = 0; i < features.rows(); ++i) {
        emit(features.row(i), input.label_values[i], "0");
    }
    for (std::size_t i = 0; i < batch.points.rows(); ++i) {
        emit(batch.points.row(i), input.minority_value, "1");
    }
    return out;
}

}  // namespace ssmote
