#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "polyprop/errors.hpp"

namespace polyprop {

/// Rows of (t, values...) with fixed column names. The time column is
/// implicit and always named "t".
class TimeSeries {
public:
    struct Row {
        double t = 0.0;
        std::vector<double> values;
    };

    TimeSeries() = default;
    explicit TimeSeries(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }
    std::size_t size() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return rows_.empty(); }

    void append(double t, std::vector<double> values) {
        if (values.size() != columns_.size()) {
            throw UsageError("TimeSeries::append: row width " + std::to_string(values.size()) +
                             " does not match " + std::to_string(columns_.size()) + " columns");
        }
        if (!rows_.empty() && !(t > rows_.back().t)) {
            throw UsageError("TimeSeries::append: time must be strictly increasing");
        }
        rows_.push_back({t, std::move(values)});
    }

    std::size_t column_index(const std::string& name) const {
        const auto it = std::find(columns_.begin(), columns_.end(), name);
        if (it == columns_.end()) throw UsageError("TimeSeries: no column named '" + name + "'");
        return static_cast<std::size_t>(it - columns_.begin());
    }

    std::vector<double> times() const {
        std::vector<double> out;
        out.reserve(rows_.size());
        for (const auto& r : rows_) out.push_back(r.t);
        return out;
    }

    std::vector<double> column(const std::string& name) const {
        const std::size_t idx = column_index(name);
        std::vector<double> out;
        out.reserve(rows_.size());
        for (const auto& r : rows_) out.push_back(r.values[idx]);
        return out;
    }

private:
    std::vector<std::string> columns_;
    std::vector<Row> rows_;
};

}  // namespace polyprop
