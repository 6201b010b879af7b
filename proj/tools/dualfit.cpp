#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dualfit/cli.hpp"

int main(int argc, char** argv) {
    using namespace dualfit::cli;

    CLI::App app{"Fit a line minimizing weighted squared vertical and horizontal errors", "dualfit"};

    const std::map<std::string, Command> commands{
        {"fit", Command::Fit},         {"sweep", Command::Sweep}, {"predict", Command::Predict},
        {"inverse", Command::Inverse}, {"stats", Command::Stats}, {"verify", Command::Verify},
    };
    const std::map<std::string, OutputFormat> formats{
        {"table", OutputFormat::Table}, {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}};

    CliConfig config;
    std::string command;
    std::string format = "table";
    std::string x_col;
    std::string y_col;
    double value = 0.0;

    app.add_option("command", command, "fit | sweep | predict | inverse | stats | verify")
        ->required()
        ->check(CLI::IsMember(commands));
    app.add_option("--input,-i", config.input_path, "CSV file, or - for standard input")
        ->capture_default_str();
    app.add_option("--gamma,-g", config.gamma, "weight of the vertical errors")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app.add_option("--steps", config.gamma_steps, "grid points for sweep, endpoints included")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))
        ->capture_default_str();
    app.add_option("--x-col", x_col, "x column: header name or 0-based index");
    app.add_option("--y-col", y_col, "y column: header name or 0-based index");
    app.add_option("--format,-f", format, "json | csv | table")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    app.add_flag("--reflect-negative", config.reflect_negative,
                 "fit negatively correlated data by reflecting y");
    auto* value_opt = app.add_option("--value,-v", value, "input for predict / inverse");
    app.add_option("--tol", config.verify_tol, "verify: allowed slope gap relative to 1 + |slope|")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "dualfit: InvalidInput: " << e.what() << '\n';
        return kInputError;
    }

    config.command = commands.at(command);
    config.format = formats.at(format);
    if (!x_col.empty()) config.x_column = dualfit::csv::ColumnRef::parse(x_col);
    if (!y_col.empty()) config.y_column = dualfit::csv::ColumnRef::parse(y_col);
    if (value_opt->count() > 0) config.value = value;

    return run(config, std::cin, std::cout, std::cerr);
}
