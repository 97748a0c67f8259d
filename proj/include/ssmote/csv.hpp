#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ssmote/oversampling.hpp"

namespace ssmote {

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 style: comma separated, double-quoted fields may hold commas,
/// quotes ("") and line breaks. The first record is the header.
CsvTable parse_csv(std::string_view text);

/// One record terminated by '\n', quoting fields that need it.
std::string format_csv_row(std::span<const std::string> fields);

/// A CSV file read as a binary dataset. Every column except the label
/// column is a feature; the rarer label value is the minority class.
struct CsvDataset {
    std::vector<std::string> header;
    std::size_t label_column = 0;
    std::vector<std::string> label_values;
    std::string minority_value;
    std::string majority_value;
    Dataset data;
};

CsvDataset load_csv_dataset(const CsvTable& table, std::string_view label_column = "label");

/**
 * Input rows followed by the synthetic rows, same column order plus a
 * trailing "synthetic" column (0/1). Numbers use shortest round-trip form.
 */
std::string serialize_with_synthetic(const CsvDataset& input, const SyntheticBatch& batch);

}  // namespace ssmote
