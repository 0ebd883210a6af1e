// spinkron -- build, sweep and analyze coupled-spin Hamiltonians assembled
// with the Kronecker product.
//
// Exit codes: 0 success, 2 spec error, 3 numerical or I/O failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "spinkron/selftest.hpp"
#include "spinkron/spinkron.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSpecError = 2;
constexpr int kExitNumericError = 3;

spinkron::SweepSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw spinkron::SpecError("cannot read spec file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return spinkron::parse_spec(os.str());
}

std::string format12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int cmd_sweep(const std::string& spec_path, unsigned threads) {
    const auto spec = load_spec(spec_path);
    auto result = spinkron::run_sweep(spec, threads);
    if (result.field_values.size() >= 3)
        result.events = spinkron::detect_events(result, spec.crossing_tol);
    spinkron::write_csv(result, spec.output_path);

    std::cout << "wrote " << spec.output_path << " (" << result.field_values.size()
              << " field points, " << result.levels.front().size() << " levels)\n";
    std::cout << "wrote " << spinkron::events_path_for(spec.output_path) << " ("
              << result.events.size() << " events)\n";
    for (const auto& e : result.events)
        std::cout << "  "
                  << (e.kind == spinkron::CrossingEvent::Kind::crossing ? "crossing"
                                                                        : "avoided ")
                  << "  levels " << (e.lower_level + 1) << "/" << (e.upper_level + 1)
                  << "  B = " << format12(e.field_at_extremum)
                  << "  gap = " << format12(e.gap_at_extremum) << "\n";
    return kExitOk;
}

int cmd_build(const std::string& spec_path, double field) {
    const auto spec = load_spec(spec_path);
    const auto h = spinkron::build_at(spec, field);
    for (std::size_t r = 0; r < h.dim(); ++r) {
        for (std::size_t c = 0; c < h.dim(); ++c) {
            const auto v = h(r, c);
            std::cout << (c ? " " : "") << "(" << format12(v.real()) << ","
                      << format12(v.imag()) << ")";
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_check() {
    const bool ok = spinkron::run_self_tests(std::cout);
    std::cout << (ok ? "all self-tests passed\n" : "self-tests FAILED\n");
    return ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled-spin Hamiltonians via the Kronecker product"};
    app.require_subcommand(1);

    std::string spec_path;
    unsigned threads = 0;
    auto* sweep = app.add_subcommand("sweep", "sweep the magnetic field, write level and "
                                              "event tables as CSV");
    sweep->add_option("--spec", spec_path, "spec JSON file")->required();
    sweep->add_option("--threads", threads, "worker threads (default: automatic)");

    double at_field = 0.0;
    auto* build = app.add_subcommand("build", "print the Hamiltonian matrix at one field "
                                              "value");
    build->add_option("--spec", spec_path, "spec JSON file")->required();
    build->add_option("--at-field", at_field, "field intensity B")->required();

    auto* check = app.add_subcommand("check", "run the built-in invariant self-tests");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitSpecError;
    }

    try {
        if (sweep->parsed())
            return cmd_sweep(spec_path, threads);
        if (build->parsed())
            return cmd_build(spec_path, at_field);
        if (check->parsed())
            return cmd_check();
    } catch (const spinkron::SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitSpecError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    }
    return kExitOk;
}
