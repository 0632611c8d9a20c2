#include "hsif/feature_frame.hpp"

#include <algorithm>

#include "hsif/csv.hpp"
#include "hsif/errors.hpp"

namespace hsif {

void FeatureFrame::add_column(std::string name, OptionalSeries values) {
    if (values.size() != dates_.size()) {
        throw InvalidArgument("column '" + name + "' has " + std::to_string(values.size()) +
                              " values for " + std::to_string(dates_.size()) + " dates");
    }
    if (find(name)) throw InvalidArgument("duplicate column '" + name + "'");
    columns_.push_back(Column{std::move(name), std::move(values)});
}

const Column* FeatureFrame::find(std::string_view name) const {
    auto it = std::find_if(columns_.begin(), columns_.end(),
                           [&](const Column& c) { return c.name == name; });
    return it == columns_.end() ? nullptr : &*it;
}

std::vector<std::string> FeatureFrame::names() const {
    std::vector<std::string> out;
    out.reserve(columns_.size());
    for (const auto& c : columns_) out.push_back(c.name);
    return out;
}

std::size_t FeatureFrame::first_fully_defined_row() const {
    std::size_t first = 0;
    for (const auto& c : columns_) {
        // Columns have a contiguous defined suffix, so the last undefined cell bounds the warmup.
        for (std::size_t r = c.values.size(); r-- > 0;) {
            if (!c.values[r]) {
                first = std::max(first, r + 1);
                break;
            }
        }
    }
    return std::min(first, rows());
}

bool FeatureFrame::fully_defined() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const Column& c) {
        return std::all_of(c.values.begin(), c.values.end(), [](const auto& v) { return v.has_value(); });
    });
}

FeatureFrame FeatureFrame::slice_rows(std::size_t begin, std::size_t end) const {
    if (begin > end || end > rows()) throw InvalidArgument("row slice out of range");
    FeatureFrame out(std::vector<Date>(dates_.begin() + static_cast<std::ptrdiff_t>(begin),
                                       dates_.begin() + static_cast<std::ptrdiff_t>(end)));
    for (const auto& c : columns_) {
        out.columns_.push_back(Column{c.name, OptionalSeries(c.values.begin() + static_cast<std::ptrdiff_t>(begin),
                                                             c.values.begin() + static_cast<std::ptrdiff_t>(end))});
    }
    return out;
}

FeatureFrame FeatureFrame::select(const std::vector<std::string>& names) const {
    FeatureFrame out(dates_);
    for (const auto& n : names) {
        const Column* c = find(n);
        if (!c) throw InvalidArgument("unknown column '" + n + "'");
        out.add_column(c->name, c->values);
    }
    return out;
}

double FeatureFrame::at(std::size_t row, std::size_t col) const {
    const auto& v = columns_.at(col).values.at(row);
    if (!v) {
        throw InvalidArgument("undefined cell in column '" + columns_[col].name + "' on " +
                              dates_[row].to_string());
    }
    return *v;
}

std::string FeatureFrame::to_csv() const {
    std::string out = "date";
    for (const auto& c : columns_) out += "," + csv::escape(c.name);
    out.push_back('\n');
    for (std::size_t r = 0; r < rows(); ++r) {
        out += dates_[r].to_string();
        for (const auto& c : columns_) {
            out.push_back(',');
            if (c.values[r]) out += csv::format_double(*c.values[r]);
        }
        out.push_back('\n');
    }
    return out;
}

FeatureFrame FeatureFrame::from_csv(std::string_view text) {
    const auto records = csv::read(text, {.skip_comments = true});
    if (records.empty() || records.front().fields.empty() || records.front().fields[0] != "date") {
        throw ParseError("expected header starting with 'date'", records.empty() ? 1 : records.front().line);
    }
    const auto& header = records.front().fields;
    const std::size_t width = header.size() - 1;
    std::vector<Date> dates;
    std::vector<OptionalSeries> cols(width);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != header.size()) throw ParseError("wrong field count", rec.line);
        auto d = Date::parse(rec.fields[0]);
        if (!d) throw ParseError("malformed date '" + rec.fields[0] + "'", rec.line);
        dates.push_back(*d);
        for (std::size_t k = 0; k < width; ++k) {
            const auto& f = rec.fields[k + 1];
            if (f.empty()) {
                cols[k].push_back(std::nullopt);
            } else {
                auto v = csv::parse_double(f);
                if (!v) throw ParseError("malformed number '" + f + "'", rec.line);
                cols[k].push_back(*v);
            }
        }
    }
    FeatureFrame frame(std::move(dates));
    for (std::size_t k = 0; k < width; ++k) frame.add_column(header[k + 1], std::move(cols[k]));
    return frame;
}

}  // namespace hsif
