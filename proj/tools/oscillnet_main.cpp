#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oscillnet/errors.hpp"
#include "oscillnet/experiment.hpp"
#include "oscillnet/graph.hpp"
#include "oscillnet/io.hpp"
#include "oscillnet/jordan.hpp"
#include "oscillnet/oscillator.hpp"
#include "oscillnet/phase.hpp"
#include "oscillnet/spectral.hpp"
#include "oscillnet/version.hpp"

namespace {

using namespace oscillnet;

// Exit codes: 0 success, 1 usage/input error, 2 numerical failure,
// 3 failed verification (algebra check or compare over tolerance).
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitCheckFailed = 3;

struct SpectrumArgs {
    std::string graph_file;
    double tol = 1e-8;
};

int run_spectrum(const SpectrumArgs& args) {
    const graph::WeightedDigraph g = graph::load_graph(args.graph_file);
    const Eigen::MatrixXd L = graph::build_laplacian(g);
    const spectral::Spectrum spectrum = spectral::eigendecompose(L, args.tol);
    const auto components = graph::connected_components(g);
    const spectral::GerschgorinReport discs = spectral::gerschgorin_nonnegative_real_part(L);

    std::cout << "n = " << g.n << "\n";
    std::cout << "edges = " << g.edges.size() << "\n";
    std::cout << "components = " << components.size() << "\n";
    std::cout << "tol = " << io::format_double(args.tol) << "\n";
    std::cout << "is_real = " << (spectrum.is_real ? 1 : 0) << "\n";
    std::cout << "is_diagonalizable = " << (spectrum.is_diagonalizable ? 1 : 0) << "\n";
    std::cout << "zero_multiplicity = " << spectrum.zero_multiplicity() << "\n";
    std::cout << "gerschgorin_nonnegative = " << (discs.all_nonnegative_real_part ? 1 : 0)
              << "\n";
    for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
        std::cout << "eigenvalue." << i << " = "
                  << io::format_double(spectrum.eigenvalues[i].real()) << " "
                  << io::format_double(spectrum.eigenvalues[i].imag()) << "\n";
    }
    for (size_t i = 0; i < spectrum.clusters.size(); ++i) {
        const auto& c = spectrum.clusters[i];
        std::cout << "cluster." << i << " = " << io::format_double(c.value.real()) << " "
                  << io::format_double(c.value.imag()) << " " << c.multiplicity << "\n";
    }
    return kExitOk;
}

struct SimulateArgs {
    std::string graph_file;
    std::string init_file;
    std::string output = "wave.csv";
    double dt = 1e-3;
    double t_end = 10.0;
    int stride = 10;
};

// Initial-condition file: one `x v` pair per node, '#' comments and
// blank lines ignored.
void read_init_file(const std::string& path, int n, Eigen::VectorXd& x0,
                    Eigen::VectorXd& v0) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open init file: " + path);
    }
    x0.resize(n);
    v0.resize(n);
    std::string line;
    int line_no = 0;
    int node = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        std::istringstream ss(line);
        double x = 0.0, v = 0.0;
        if (!(ss >> x)) continue;  // blank line
        if (!(ss >> v)) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": expected 'x v' pair");
        }
        std::string rest;
        if (ss >> rest) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": trailing tokens after 'x v' pair");
        }
        if (node >= n) {
            throw std::invalid_argument(path + ": more init pairs than the " +
                                        std::to_string(n) + " nodes");
        }
        x0[node] = x;
        v0[node] = v;
        ++node;
    }
    if (node != n) {
        throw std::invalid_argument(path + ": got " + std::to_string(node) +
                                    " init pairs, need one per node (" + std::to_string(n) +
                                    ")");
    }
}

int run_simulate(const SimulateArgs& args) {
    const graph::WeightedDigraph g = graph::load_graph(args.graph_file);
    const Eigen::MatrixXd L = graph::build_laplacian(g);
    Eigen::VectorXd x0, v0;
    read_init_file(args.init_file, g.n, x0, v0);

    const oscillator::WaveTrajectory traj =
        oscillator::integrate_wave_direct(L, x0, v0, args.dt, args.t_end, args.stride);

    io::CsvTable table;
    table.metadata = {{"kind", "wave"},
                      {"n", std::to_string(g.n)},
                      {"dt", io::format_double(args.dt)},
                      {"t_end", io::format_double(args.t_end)},
                      {"stride", std::to_string(args.stride)}};
    table.columns = {"t"};
    for (int i = 0; i < g.n; ++i) table.columns.push_back("x_" + std::to_string(i));
    for (int i = 0; i < g.n; ++i) table.columns.push_back("v_" + std::to_string(i));
    table.columns.push_back("energy");
    for (const oscillator::NodeState& s : traj.samples) {
        std::vector<double> row{s.t};
        for (int i = 0; i < g.n; ++i) row.push_back(s.x[i]);
        for (int i = 0; i < g.n; ++i) row.push_back(s.v[i]);
        row.push_back(oscillator::oscillation_energy(L, s.x, s.v));
        table.rows.push_back(std::move(row));
    }
    io::write_csv(args.output, table);
    std::cout << "wrote " << args.output << " (" << table.rows.size() << " samples)\n";
    return kExitOk;
}

struct AlgebraArgs {
    double omega = 0.0;
    double d = 1.0;
    int m = 3;
    double horizon = 1.0;
};

int run_algebra_check(const AlgebraArgs& args) {
    const jordan::JordanBlockModel model{args.omega, args.d, args.m};
    jordan::validate(model);

    // Integer-valued parameters make every product in the identity
    // checks exact in double arithmetic; demand literal zeros then.
    const bool exact =
        args.omega == std::rint(args.omega) && args.d == std::rint(args.d);
    const double tol_identity = exact ? 0.0 : 1e-12;

    struct Row {
        std::string name;
        double deviation;
        double tol;
        bool pass;
    };
    std::vector<Row> rows;
    auto add = [&rows](const std::string& name, double deviation, double tol) {
        rows.push_back({name, deviation, tol, deviation <= tol});
    };

    const jordan::HatTriple hat = jordan::pauli_extend(jordan::build_triple(model));
    const jordan::AlgebraReport algebra = jordan::verify_square_identity(hat);
    add("anticommutator_0d", algebra.anticommutator_dev_0d, tol_identity);
    add("anticommutator_0a", algebra.anticommutator_dev_0a, tol_identity);
    add("anticommutator_da", algebra.anticommutator_dev_da, tol_identity);
    add("square_identity", algebra.square_identity_dev, tol_identity);

    const Eigen::VectorXcd psi0 = Eigen::VectorXcd::Ones(args.m);
    const jordan::RotationInvarianceReport rotation =
        jordan::verify_rotation_invariance(model, psi0, args.horizon);
    add("rotation_commutator", rotation.commutator_dev, 0.0);
    add("rotation_conjugation", rotation.conjugation_dev, 1e-14);
    add("rotation_identity_at_zero", rotation.identity_at_zero ? 0.0 : 1.0, 0.0);
    add("rotation_inverse", rotation.inverse_dev, 1e-14);
    add("rotation_transform", rotation.transformed_solution_dev, 1e-8);

    const jordan::SquarePermutationReport permutation =
        jordan::verify_square_permutation_identity({2.0, 3.0});
    add("square_map", permutation.square_dev, 0.0);
    add("permuted_map", permutation.permuted_dev, 0.0);

    bool all_pass = true;
    std::cout << "check omega=" << io::format_double(args.omega)
              << " d=" << io::format_double(args.d) << " m=" << args.m << "\n";
    for (const Row& row : rows) {
        std::cout << row.name << " " << io::format_double(row.deviation) << " "
                  << io::format_double(row.tol) << " " << (row.pass ? "PASS" : "FAIL")
                  << "\n";
        all_pass = all_pass && row.pass;
    }
    std::cout << (all_pass ? "all checks passed" : "some checks FAILED") << "\n";
    return all_pass ? kExitOk : kExitCheckFailed;
}

struct ExperimentArgs {
    std::string config_file;
    std::vector<std::string> overrides;
    std::string output_dir;
};

int run_experiment_cmd(const ExperimentArgs& args) {
    std::vector<std::string> overrides = args.overrides;
    if (!args.output_dir.empty()) {
        overrides.push_back("output_dir=" + args.output_dir);
    }
    const experiment::ExperimentConfig config =
        experiment::load_config(args.config_file, overrides);
    const experiment::RunManifest manifest = experiment::run_experiment(config);

    std::cout << "run_dir = " << manifest.dir.string() << "\n";
    for (const auto& [name, digest] : manifest.files) {
        std::cout << "file " << name << " " << digest << "\n";
    }
    for (const auto& [key, value] :
         io::read_key_values(manifest.dir / "summary.txt")) {
        if (key.rfind("series.", 0) == 0 && key.size() > 6 &&
            key.substr(key.size() - 6) == ".class") {
            std::cout << key << " = " << value << "\n";
        }
    }
    return kExitOk;
}

struct ExportArgs {
    std::string run_dir;
    std::string figure;
};

int run_export(const ExportArgs& args) {
    const auto files = experiment::export_plot_data(args.run_dir, args.figure);
    for (const auto& path : files) {
        std::cout << "wrote " << path.string() << "\n";
    }
    return kExitOk;
}

struct CompareArgs {
    std::string run_a;
    std::string run_b;
    double tol = -1.0;  // < 0: report only
};

int run_compare(const CompareArgs& args) {
    const experiment::CompareReport report =
        experiment::compare_runs(args.run_a, args.run_b);
    for (const auto& col : report.columns) {
        std::cout << "column " << col.column << " max_abs_dev "
                  << io::format_double(col.max_abs_dev) << "\n";
    }
    std::cout << "max_abs_dev = " << io::format_double(report.max_abs_dev) << "\n";
    for (const auto& diff : report.class_diffs) {
        std::cout << "class_diff " << diff.series << " " << diff.class_a << " vs "
                  << diff.class_b << "\n";
    }
    if (report.class_diffs.empty()) {
        std::cout << "classifications identical\n";
    }
    if (args.tol >= 0.0 && report.max_abs_dev > args.tol) {
        std::cout << "deviation exceeds tolerance " << io::format_double(args.tol) << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) +
                 ": oscillation dynamics on directed weighted networks"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    SpectrumArgs spectrum_args;
    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "Eigenstructure, components and disc bounds of a graph Laplacian");
    spectrum->add_option("graph", spectrum_args.graph_file, "graph edge-list file")
        ->required();
    spectrum->add_option("--tol", spectrum_args.tol, "eigenvalue clustering tolerance");

    SimulateArgs simulate_args;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Integrate the second-order node dynamics on a graph");
    simulate->add_option("graph", simulate_args.graph_file, "graph edge-list file")
        ->required();
    simulate->add_option("init", simulate_args.init_file, "one 'x v' pair per node")
        ->required();
    simulate->add_option("--dt", simulate_args.dt, "integration step");
    simulate->add_option("--t-end", simulate_args.t_end, "time horizon");
    simulate->add_option("--stride", simulate_args.stride, "sampling stride in steps");
    simulate->add_option("-o,--output", simulate_args.output, "output CSV path");

    AlgebraArgs algebra_args;
    CLI::App* algebra = app.add_subcommand(
        "algebra-check", "Verify the operator identities for a block model");
    algebra->add_option("--omega", algebra_args.omega, "eigenfrequency");
    algebra->add_option("--d", algebra_args.d, "degeneracy coupling strength");
    algebra->add_option("--m", algebra_args.m, "block size");
    algebra->add_option("--horizon", algebra_args.horizon,
                        "integration horizon for the rotation check");

    ExperimentArgs experiment_args;
    CLI::App* experiment_cmd = app.add_subcommand(
        "experiment", "Run a configured phase-dynamics experiment");
    experiment_cmd->add_option("config", experiment_args.config_file, "config file")
        ->required();
    experiment_cmd->add_option("--set", experiment_args.overrides,
                               "override a config key (key=value, repeatable)");
    experiment_cmd->add_option("--output-dir", experiment_args.output_dir,
                               "override the output directory");

    ExportArgs export_args;
    CLI::App* export_cmd =
        app.add_subcommand("export", "Write plot-ready files from a completed run");
    export_cmd->add_option("--figure", export_args.figure, "figure key: f4, f5 or f6")
        ->required();
    export_cmd->add_option("run-dir", export_args.run_dir, "completed run directory")
        ->required();

    CompareArgs compare_args;
    CLI::App* compare =
        app.add_subcommand("compare", "Compare the trajectories of two completed runs");
    compare->add_option("run-a", compare_args.run_a, "first run directory")->required();
    compare->add_option("run-b", compare_args.run_b, "second run directory")->required();
    compare->add_option("--tol", compare_args.tol,
                        "fail (exit 3) if any deviation exceeds this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(spectrum)) return run_spectrum(spectrum_args);
        if (app.got_subcommand(simulate)) return run_simulate(simulate_args);
        if (app.got_subcommand(algebra)) return run_algebra_check(algebra_args);
        if (app.got_subcommand(experiment_cmd)) return run_experiment_cmd(experiment_args);
        if (app.got_subcommand(export_cmd)) return run_export(export_args);
        if (app.got_subcommand(compare)) return run_compare(compare_args);
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
