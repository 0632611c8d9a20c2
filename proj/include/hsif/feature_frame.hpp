#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsif/date.hpp"

namespace hsif {

/// Values aligned to a date axis; std::nullopt marks an undefined cell (warmup).
using OptionalSeries = std::vector<std::optional<double>>;

struct Column {
    std::string name;
    OptionalSeries values;

    bool operator==(const Column&) const = default;
};

/// Date-indexed matrix of named feature columns.
/// Invariants: every column has one cell per date; column names are unique.
class FeatureFrame {
public:
    FeatureFrame() = default;
    explicit FeatureFrame(std::vector<Date> dates) : dates_(std::move(dates)) {}

    void add_column(std::string name, OptionalSeries values);

    const std::vector<Date>& dates() const { return dates_; }
    std::size_t rows() const { return dates_.size(); }
    std::size_t width() const { return columns_.size(); }

    const std::vector<Column>& columns() const { return columns_; }
    const Column& column(std::size_t i) const { return columns_.at(i); }
    const Column* find(std::string_view name) const;
    std::vector<std::string> names() const;

    /// Index of the first row where every column is defined; rows() if none.
    std::size_t first_fully_defined_row() const;
    bool fully_defined() const;

    /// Rows [begin, end).
    FeatureFrame slice_rows(std::size_t begin, std::size_t end) const;
    /// Columns in the given order; throws InvalidArgument for unknown names.
    FeatureFrame select(const std::vector<std::string>& names) const;
    /// Fully defined value of (row, column); throws if the cell is undefined.
    double at(std::size_t row, std::size_t col) const;

    /// CSV with a leading `date` column; undefined cells are empty fields.
    std::string to_csv() const;
    static FeatureFrame from_csv(std::string_view text);

    bool operator==(const FeatureFrame&) const = default;

private:
    std::vector<Date> dates_;
    std::vector<Column> columns_;
};

}  // namespace hsif
