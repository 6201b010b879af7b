#pragma once

#include <array>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dualfit/csv.hpp"
#include "dualfit/errors.hpp"
#include "dualfit/fit.hpp"
#include "dualfit/oracle.hpp"
#include "dualfit/stats.hpp"

namespace dualfit::cli {

enum class Command { Fit, Sweep, Predict, Inverse, Stats, Verify };
enum class OutputFormat { Table, Json, Csv };

enum ExitCode : int {
    kOk = 0,
    kInputError = 2,
    kFitError = 3,
    kVerifyFailure = 4,
};

struct CliConfig {
    Command command = Command::Fit;
    std::string input_path = "-";
    double gamma = 0.5;
    std::size_t gamma_steps = 101;
    std::optional<csv::ColumnRef> x_column;
    std::optional<csv::ColumnRef> y_column;
    OutputFormat format = OutputFormat::Table;
    bool reflect_negative = false;
    std::optional<double> value;
    double verify_tol = oracle::kSlopeAgreementTol;
};

/// Ten significant digits, C locale, negative zero printed as 0.
inline std::string format_number(double v) {
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace detail {

using Json = nlohmann::ordered_json;

// Round-trip through the 10-digit text so JSON carries the same digits as
// the csv and table output.
inline Json num(double v) {
    const auto text = format_number(v);
    return Json(std::stod(text));
}

// Ordered key/value report rendered as table, json or two-column csv.
class Record {
  public:
    Record& add(std::string key, double v) {
        items_.push_back({std::move(key), format_number(v), num(v)});
        return *this;
    }
    Record& add(std::string key, std::size_t v) {
        items_.push_back({std::move(key), std::to_string(v), Json(v)});
        return *this;
    }
    Record& add(std::string key, bool v) {
        items_.push_back({std::move(key), v ? "true" : "false", Json(v)});
        return *this;
    }
    Record& add(std::string key, const std::vector<double>& vs) {
        std::string text;
        Json arr = Json::array();
        for (double v : vs) {
            if (!text.empty()) text += ' ';
            text += format_number(v);
            arr.push_back(num(v));
        }
        items_.push_back({std::move(key), text, std::move(arr)});
        return *this;
    }

    void write(std::ostream& out, OutputFormat format) const {
        switch (format) {
            case OutputFormat::Json: {
                Json obj = Json::object();
                for (const auto& item : items_) obj[item.key] = item.json;
                out << obj.dump(2) << '\n';
                break;
            }
            case OutputFormat::Csv:
                out << "field,value\n";
                for (const auto& item : items_) out << item.key << ',' << item.text << '\n';
                break;
            case OutputFormat::Table:
                for (const auto& item : items_) {
                    out << std::left << std::setw(22) << item.key << item.text << '\n';
                }
                break;
        }
    }

  private:
    struct Item {
        std::string key;
        std::string text;
        Json json;
    };
    std::vector<Item> items_;
};

inline void add_stats(Record& r, const SufficientStats& s) {
    r.add("n", s.n)
        .add("x_bar", s.x_bar)
        .add("y_bar", s.y_bar)
        .add("s_xx", s.s_xx)
        .add("s_yy", s.s_yy)
        .add("s_xy", s.s_xy)
        .add("rho", s.rho);
}

inline FitConfig fit_config(const CliConfig& c, double gamma) {
    FitConfig fc;
    fc.gamma = gamma;
    fc.negative_correlation_policy =
        c.reflect_negative ? NegativeCorrelationPolicy::Reflect : NegativeCorrelationPolicy::Error;
    return fc;
}

inline Dataset load(const CliConfig& c, std::istream& stdin_stream) {
    if (c.input_path == "-") return csv::parse_csv(stdin_stream, c.x_column, c.y_column);
    std::ifstream file(c.input_path);
    if (!file) throw Error(ErrorKind::InvalidInput, "cannot open '" + c.input_path + "'");
    return csv::parse_csv(file, c.x_column, c.y_column);
}

// Slope bounds in the data's own orientation.
inline SlopeBounds oriented_bounds(const SufficientStats& s) {
    if (s.rho >= 0.0) return slope_bounds(s);
    const auto b = slope_bounds(reflect_y(s));
    return {-b.upper, -b.lower};
}

inline double require_value(const CliConfig& c) {
    if (!c.value) throw Error(ErrorKind::InvalidInput, "--value is required for this command");
    return *c.value;
}

inline int run_fit(const CliConfig& c, const SufficientStats& s, std::ostream& out) {
    const auto line = fit(s, fit_config(c, c.gamma));
    const auto bounds = oriented_bounds(s);
    Record r;
    add_stats(r, s);
    r.add("gamma", line.gamma)
        .add("beta0", line.beta0)
        .add("beta1", line.beta1)
        .add("sse", line.sse)
        .add("bound_lower", bounds.lower)
        .add("bound_upper", bounds.upper)
        .add("candidate_roots", line.candidate_roots)
        .add("root_residual", line.selected_root_residual)
        .add("reflected", line.reflected)
        .add("clamped", line.clamped);
    r.write(out, c.format);
    return kOk;
}

inline int run_sweep(const CliConfig& c, const SufficientStats& s, std::ostream& out) {
    if (c.gamma_steps < 2) {
        throw Error(ErrorKind::InvalidInput, "--steps must be at least 2");
    }
    struct Row {
        double gamma, beta1, beta0, sse, residual;
    };
    std::vector<Row> rows;
    rows.reserve(c.gamma_steps);
    for (std::size_t i = 0; i < c.gamma_steps; ++i) {
        // Exact endpoints so the closed forms kick in.
        const double gamma = i + 1 == c.gamma_steps ? 1.0
                                                    : static_cast<double>(i) / static_cast<double>(c.gamma_steps - 1);
        const auto line = fit(s, fit_config(c, gamma));
        rows.push_back({gamma, line.beta1, line.beta0, line.sse, line.selected_root_residual});
    }

    static constexpr std::array<const char*, 5> kColumns{"gamma", "beta1", "beta0", "sse", "root_residual"};
    switch (c.format) {
        case OutputFormat::Json: {
            detail::Json arr = detail::Json::array();
            for (const auto& row : rows) {
                arr.push_back({{"gamma", num(row.gamma)},
                               {"beta1", num(row.beta1)},
                               {"beta0", num(row.beta0)},
                               {"sse", num(row.sse)},
                               {"root_residual", num(row.residual)}});
            }
            out << arr.dump(2) << '\n';
            break;
        }
        case OutputFormat::Csv:
            out << "gamma,beta1,beta0,sse,root_residual\n";
            for (const auto& row : rows) {
                out << format_number(row.gamma) << ',' << format_number(row.beta1) << ','
                    << format_number(row.beta0) << ',' << format_number(row.sse) << ','
                    << format_number(row.residual) << '\n';
            }
            break;
        case OutputFormat::Table:
            for (const char* col : kColumns) out << std::left << std::setw(18) << col;
            out << '\n';
            for (const auto& row : rows) {
                for (double v : {row.gamma, row.beta1, row.beta0, row.sse, row.residual}) {
                    out << std::left << std::setw(18) << format_number(v);
                }
                out << '\n';
            }
            break;
    }
    return kOk;
}

inline int run_scalar(const CliConfig& c, const SufficientStats& s, std::ostream& out) {
    const double input = require_value(c);
    const auto line = fit(s, fit_config(c, c.gamma));
    const bool forward = c.command == Command::Predict;
    const double result = forward ? predict(line, input) : inverse_predict(line, input);
    const double x = forward ? input : result;
    const double y = forward ? result : input;
    switch (c.format) {
        case OutputFormat::Json: {
            detail::Json obj{{"x", num(x)}, {"y", num(y)}};
            out << obj.dump(2) << '\n';
            break;
        }
        case OutputFormat::Csv:
            out << "x,y\n" << format_number(x) << ',' << format_number(y) << '\n';
            break;
        case OutputFormat::Table:
            out << format_number(result) << '\n';
            break;
    }
    return kOk;
}

inline int run_stats(const CliConfig& c, const SufficientStats& s, std::ostream& out) {
    Record r;
    add_stats(r, s);
    r.write(out, c.format);
    return kOk;
}

inline int run_verify(const CliConfig& c, const SufficientStats& s, std::ostream& out, std::ostream& err) {
    auto config = fit_config(c, c.gamma);
    const auto report = oracle::verify(s, config);
    const bool ok = report.passed(c.verify_tol);
    Record r;
    r.add("gamma", c.gamma)
        .add("quartic_slope", report.quartic_slope)
        .add("oracle_slope", report.oracle_slope)
        .add("abs_gap", report.abs_gap)
        .add("profile_evals", report.profile_evals)
        .add("bracket_lower", report.bracket_lower)
        .add("bracket_upper", report.bracket_upper)
        .add("gradient_max_rel_err", report.gradient_max_rel_err)
        .add("passed", ok);
    r.write(out, c.format);
    if (!ok) {
        err << "dualfit: verification failed: quartic slope " << format_number(report.quartic_slope)
            << ", oracle slope " << format_number(report.oracle_slope) << ", gap "
            << format_number(report.abs_gap) << ", gradient error "
            << format_number(report.gradient_max_rel_err) << '\n';
        return kVerifyFailure;
    }
    return kOk;
}

}  // namespace detail

/// Runs one command. Success output goes to out; every failure writes a
/// single "dualfit: ..." line to err and returns the matching exit code.
inline int run(const CliConfig& c, std::istream& stdin_stream, std::ostream& out, std::ostream& err) {
    try {
        if (!(c.gamma >= 0.0 && c.gamma <= 1.0)) {
            throw Error(ErrorKind::InvalidInput, "--gamma must lie in [0, 1]");
        }
        if (c.command == Command::Sweep && c.gamma_steps < 2) {
            throw Error(ErrorKind::InvalidInput, "--steps must be at least 2");
        }
        if ((c.command == Command::Predict || c.command == Command::Inverse) && !c.value) {
            throw Error(ErrorKind::InvalidInput, "--value is required for this command");
        }
        const auto data = detail::load(c, stdin_stream);
        const auto stats = compute_stats(data);

        // Buffer so a failure midway leaves stdout empty.
        std::ostringstream buffer;
        int code = kOk;
        switch (c.command) {
            case Command::Fit: code = detail::run_fit(c, stats, buffer); break;
            case Command::Sweep: code = detail::run_sweep(c, stats, buffer); break;
            case Command::Predict:
            case Command::Inverse: code = detail::run_scalar(c, stats, buffer); break;
            case Command::Stats: code = detail::run_stats(c, stats, buffer); break;
            case Command::Verify: code = detail::run_verify(c, stats, buffer, err); break;
        }
        out << buffer.str();
        return code;
    } catch (const Error& e) {
        err << "dualfit: " << e.what() << '\n';
        if (is_input_error(e.kind())) return kInputError;
        if (e.kind() == ErrorKind::BracketFailure) return kVerifyFailure;
        return kFitError;
    }
}

}  // namespace dualfit::cli
