#include "toricsde/jobs.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

tsde::json read_input(const std::string& path, const std::string& inline_doc) {
    std::string text;
    if (!inline_doc.empty()) {
        text = inline_doc;
    } else if (path.empty() || path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        text = os.str();
    } else {
        std::ifstream in(path);
        if (!in) throw tsde::ParseError("cannot open input file: " + path);
        std::ostringstream os;
        os << in.rdbuf();
        text = os.str();
    }
    try {
        return tsde::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw tsde::ParseError(std::string("JSON parse error: ") + e.what());
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    out << text;
}

int finish(const tsde::JobResult& res, const std::string& out_path) {
    write_output(out_path, res.report.dump(2) + "\n");
    return static_cast<int>(res.code);
}

bool parse_grid(const std::string& spec, tsde::GridSpec& grid) {
    // "rmin:rmax:nr,emin:emax:ne"
    double rmin, rmax, emin, emax;
    int nr, ne;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d,%lf:%lf:%d", &rmin, &rmax, &nr, &emin, &emax, &ne) != 6)
        return false;
    grid = {rmin, rmax, emin, emax, nr, ne};
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"toric selfdual Einstein orbifolds: classification, conversion and "
                 "numerical verification"};
    app.require_subcommand(1);

    std::string input_path, inline_doc, output_path, grid_spec;
    tsde::VerifyOptions vopts;
    int samples = 9;
    std::int64_t census_n = 2;
    std::size_t census_k = 4;

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("input", input_path, "input JSON file ('-' for stdin)");
        cmd->add_option("--inline", inline_doc, "inline JSON document");
        cmd->add_option("-o,--output", output_path, "output file (default stdout)");
    };

    auto* classify = app.add_subcommand("classify", "lattice, topology and admissibility verdict");
    add_io(classify);
    auto* convert = app.add_subcommand("convert", "isotropy <-> multipole weights");
    add_io(convert);
    auto* verify = app.add_subcommand("verify", "numerical verification of the metric");
    add_io(verify);
    verify->add_option("--grid", grid_spec, "grid 'rmin:rmax:nr,emin:emax:ne'");
    verify->add_option("--tol-eigen", vopts.tol_eigen, "eigenfunction residual tolerance");
    verify->add_option("--tol-curv", vopts.tol_curv, "curvature residual tolerance");
    verify->add_option("--tol-poisson", vopts.tol_poisson, "Poisson reconstruction tolerance");
    verify->add_option("--seed", vopts.seed, "seed for the random spot-check points");
    verify->add_option("--random-points", vopts.random_points, "number of random spot checks");
    auto* plot = app.add_subcommand("boundary-plot", "CSV of the boundary value f0");
    add_io(plot);
    plot->add_option("--samples", samples, "samples per affine piece");
    auto* census = app.add_subcommand("census", "enumerate small weight tuples");
    census->add_option("-o,--output", output_path, "output file (default stdout)");
    census->add_option("--max-entry", census_n, "bound N on |entries| of doubled weights");
    census->add_option("--max-k", census_k, "bound K on the number of poles");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed())
            return finish(tsde::classify_document(read_input(input_path, inline_doc)), output_path);
        if (convert->parsed())
            return finish(tsde::convert_document(read_input(input_path, inline_doc)), output_path);
        if (verify->parsed()) {
            if (!grid_spec.empty() && !parse_grid(grid_spec, vopts.grid))
                throw tsde::ParseError("bad --grid spec, expected rmin:rmax:nr,emin:emax:ne");
            return finish(tsde::verify_document(read_input(input_path, inline_doc), vopts),
                          output_path);
        }
        if (plot->parsed()) {
            write_output(output_path,
                         tsde::boundary_plot_csv(read_input(input_path, inline_doc), samples));
            return 0;
        }
        if (census->parsed())
            return finish(tsde::census_document(census_n, census_k), output_path);
    } catch (const tsde::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(tsde::ExitCode::parse);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(tsde::ExitCode::invalid);
    } catch (const std::logic_error& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return static_cast<int>(tsde::ExitCode::internal);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(tsde::ExitCode::invalid);
    }
    return 0;
}
