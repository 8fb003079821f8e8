// honeycomb-edge: classification, spectra, flat-band states, determinant
// scans and winding checks for rational terminations of the honeycomb
// tight-binding lattice.

#include <clocale>
#include <filesystem>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "honeycomb/honeycomb.hpp"

namespace fs = std::filesystem;
using namespace honeycomb;

namespace {

struct CommonArgs {
    std::vector<int> edge; // a11 a12
    std::string termination = "balanced";
    std::string out = ".";
    std::string format = "csv";
};

Termination parse_termination(const std::string& s) {
    if (s == "balanced") return Termination::Balanced;
    if (s == "unbalanced-a") return Termination::UnbalancedAFrontier;
    if (s == "unbalanced-b") return Termination::UnbalancedBFrontier;
    throw DomainError("unknown termination: " + s);
}

EdgeConfig config_from(const CommonArgs& args) {
    if (args.edge.size() != 2)
        throw DomainError("expected -a A11 A12");
    return canonicalize(args.edge[0], args.edge[1],
                        parse_termination(args.termination));
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_out = true) {
    cmd->add_option("-a", args.edge, "edge direction a11 a12")
        ->expected(2)
        ->required();
    cmd->add_option("--termination", args.termination,
                    "balanced | unbalanced-a | unbalanced-b");
    if (with_out) {
        cmd->add_option("--out", args.out, "output directory");
        cmd->add_option("--format", args.format, "csv | json | pgm");
    }
}

void write_out(const CommonArgs& args, const std::string& name,
               const std::string& body) {
    fs::create_directories(args.out);
    const std::string path = (fs::path(args.out) / name).string();
    write_text_file(path, body);
    std::cout << path << "\n";
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"rational honeycomb edge spectra"};
    app.require_subcommand(1);

    CommonArgs args;
    double k = pi, k0 = 0.0, e0 = 0.0, elim = 0.5, rE = 0.01;
    int nk = 1000, ne = 1000, nc = 50, nkperp = 0;

    CLI::App* cmd_classify = app.add_subcommand("classify", "edge classification report");
    add_common(cmd_classify, args, false);

    CLI::App* cmd_spectrum =
        app.add_subcommand("spectrum", "essential-spectrum band edges over k");
    add_common(cmd_spectrum, args);
    cmd_spectrum->add_option("--nk", nk, "number of k intervals");
    cmd_spectrum->add_option("--nkperp", nkperp, "transverse samples (0 = auto)");

    CLI::App* cmd_flatband =
        app.add_subcommand("flatband", "zero-energy edge state at momentum k");
    add_common(cmd_flatband, args);
    cmd_flatband->add_option("--k", k, "parallel quasimomentum")->required();

    CLI::App* cmd_scan =
        app.add_subcommand("scan", "log|Delta| heat-map grid over (k, E)");
    add_common(cmd_scan, args);
    cmd_scan->add_option("--nk", nk, "number of k intervals");
    cmd_scan->add_option("--ne", ne, "number of E intervals");
    cmd_scan->add_option("--elim", elim, "energy window half-width");

    CLI::App* cmd_winding =
        app.add_subcommand("winding", "winding number of Delta around (k0, E0)");
    add_common(cmd_winding, args);
    cmd_winding->add_option("--k0", k0, "momentum")->required();
    cmd_winding->add_option("--e0", e0, "circle center energy")->required();
    cmd_winding->add_option("--re", rE, "circle radius");
    cmd_winding->add_option("--nc", nc, "circle samples");

    CLI::App* cmd_wedge =
        app.add_subcommand("wedge", "band-crossing opening slope");
    add_common(cmd_wedge, args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const EdgeConfig cfg = config_from(args);

        if (cmd_classify->parsed()) {
            std::cout << classify_report(cfg);
        } else if (cmd_wedge->parsed()) {
            std::cout << wedge_json(cfg);
        } else if (cmd_spectrum->parsed()) {
            const NeighborOffsets off = bloch_offsets(cfg);
            std::vector<SpectrumSlice> slices;
            slices.reserve(std::size_t(nk) + 1);
            for (int l = 0; l <= nk; ++l)
                slices.push_back(essential_slice(off, two_pi * l / nk, nkperp));
            write_out(args, "spectrum.csv", spectrum_csv(cfg, slices, nkperp));
        } else if (cmd_flatband->parsed()) {
            const EdgeClass cls = classify(cfg);
            FlatBandState st;
            double residual = 0.0;
            if (cls.kind == EdgeKind::ClassicalZigzag) {
                st = classical_zigzag_state(cfg, k);
                residual = classical_residual(st);
            } else {
                const NeighborOffsets off = neighbor_offsets(cfg);
                st = build_state(cfg, off, k);
                residual = flatband_residual(cfg, off, st);
            }
            write_out(args, "flatband.json", flatband_json(cfg, st, residual));
        } else if (cmd_scan->parsed()) {
            const NeighborOffsets off = neighbor_offsets(cfg);
            const DeltaGrid grid = scan(cfg, off, nk, ne, elim);
            write_out(args, "scan.csv", scan_csv(cfg, grid));
            if (args.format == "pgm")
                write_out(args, "scan.pgm", scan_pgm(cfg, grid));
        } else if (cmd_winding->parsed()) {
            const NeighborOffsets off = neighbor_offsets(cfg);
            const WindingResult w = winding(cfg, off, k0, cplx(e0), rE, nc);
            const std::string body = winding_json(cfg, w);
            write_out(args, "winding.json", body);
            std::cout << body;
        }
    } catch (const NotCoprime& e) {
        std::cerr << json_error(e.code(), e.what()) << "\n";
        return 2;
    } catch (const IncompatibleTermination& e) {
        std::cerr << json_error(e.code(), e.what()) << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << json_error(e.code(), e.what()) << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << json_error(e.code(), e.what()) << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << json_error("InternalError", e.what()) << "\n";
        return 3;
    }
    return 0;
}
