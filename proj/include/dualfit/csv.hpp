#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "dualfit/errors.hpp"
#include "dualfit/stats.hpp"

namespace dualfit::csv {

/// A column picked by header name or by zero-based position.
struct ColumnRef {
    std::string name;
    std::size_t index = 0;
    bool by_name = false;

    static ColumnRef at(std::size_t i) { return {{}, i, false}; }
    static ColumnRef named(std::string n) { return {std::move(n), 0, true}; }

    /// All-digit text is a position, anything else a header name.
    static ColumnRef parse(std::string_view text) {
        const bool digits = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
            return c >= '0' && c <= '9';
        });
        if (digits) return at(std::stoul(std::string(text)));
        return named(std::string(text));
    }
};

inline std::string_view trim(std::string_view s) noexcept {
    constexpr std::string_view ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

/// Strict decimal parse of a whole cell; an optional leading '+' is allowed.
inline std::optional<double> parse_number(std::string_view cell) noexcept {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    if (cell.empty()) return std::nullopt;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || end != cell.data() + cell.size()) return std::nullopt;
    return value;
}

inline std::vector<std::string_view> split_row(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

/// Reads comma-separated (x, y) pairs. The first non-blank row is a header
/// when a column is selected by name, or when its selected cells are not
/// numbers. Without explicit columns, headers named "x"/"y" are used if
/// present, else the first two columns.
inline Dataset parse_csv(std::istream& in, const std::optional<ColumnRef>& x_column = std::nullopt,
                         const std::optional<ColumnRef>& y_column = std::nullopt) {
    std::vector<Point> points;
    std::optional<std::size_t> x_idx;
    std::optional<std::size_t> y_idx;
    bool first_row = true;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (trim(view).empty()) continue;
        const auto cells = split_row(view);

        if (first_row) {
            first_row = false;
            const bool named = (x_column && x_column->by_name) || (y_column && y_column->by_name);
            const std::size_t xi = x_column && !x_column->by_name ? x_column->index : 0;
            const std::size_t yi = y_column && !y_column->by_name ? y_column->index : 1;
            const bool numeric = xi < cells.size() && yi < cells.size() && parse_number(cells[xi]) &&
                                 parse_number(cells[yi]);
            if (named || !numeric) {
                auto resolve = [&](const std::optional<ColumnRef>& ref, std::string_view fallback_name,
                                   std::size_t fallback_index) -> std::size_t {
                    if (ref && !ref->by_name) return ref->index;
                    const std::string_view wanted = ref ? std::string_view(ref->name) : fallback_name;
                    const auto it = std::find(cells.begin(), cells.end(), wanted);
                    if (it != cells.end()) return static_cast<std::size_t>(it - cells.begin());
                    if (ref) {
                        throw Error(ErrorKind::InvalidInput, "no column named '" + ref->name + "' in header");
                    }
                    return fallback_index;
                };
                x_idx = resolve(x_column, "x", 0);
                y_idx = resolve(y_column, "y", 1);
                for (std::size_t idx : {*x_idx, *y_idx}) {
                    if (idx >= cells.size()) {
                        throw Error(ErrorKind::InvalidInput,
                                    "header has " + std::to_string(cells.size()) + " columns, column " +
                                        std::to_string(idx) + " requested");
                    }
                }
                continue;
            }
            x_idx = xi;
            y_idx = yi;
        }

        const std::size_t needed = std::max(*x_idx, *y_idx);
        if (needed >= cells.size()) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected at least " +
                                                   std::to_string(needed + 1) + " columns, found " +
                                                   std::to_string(cells.size()));
        }
        Point p;
        for (auto [idx, target] : {std::pair{*x_idx, &p.x}, std::pair{*y_idx, &p.y}}) {
            const auto value = parse_number(cells[idx]);
            if (!value || !std::isfinite(*value)) {
                throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": '" +
                                                       std::string(cells[idx]) + "' is not a finite number");
            }
            *target = *value;
        }
        points.push_back(p);
    }

    if (points.size() < 2) {
        throw Error(ErrorKind::InvalidInput,
                    "need at least 2 data rows, found " + std::to_string(points.size()));
    }
    return Dataset(std::move(points));
}

}  // namespace dualfit::csv
