#include "oscillnet/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <ctime>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "oscillnet/version.hpp"

namespace oscillnet::experiment {

namespace fs = std::filesystem;

namespace {

std::string now_utc() {
    const std::time_t tt =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double parse_double_value(const std::string& key, const std::string& text) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: '" + text + "'");
    }
    if (pos != text.size()) {
        throw std::invalid_argument("config key '" + key + "': trailing characters: '" +
                                    text + "'");
    }
    return v;
}

int parse_int_value(const std::string& key, const std::string& text) {
    const double v = parse_double_value(key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw std::invalid_argument("config key '" + key + "': not an integer: '" + text + "'");
    }
    return static_cast<int>(v);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& text) {
    std::istringstream ss(text);
    std::vector<double> values;
    std::string token;
    while (ss >> token) {
        values.push_back(parse_double_value(key, token));
    }
    return values;
}

std::string bool_text(bool b) { return b ? "1" : "0"; }

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "omega", "d", "m", "variant", "init", "dt", "t_end", "stride",
        "slope_min", "r2_min", "curvature_rel", "conv_threshold", "guard",
        "output_dir"};
    return keys;
}

void validate_config(const ExperimentConfig& config) {
    jordan::validate(config.model);
    if (!(config.dt > 0.0)) throw std::invalid_argument("config: dt must be > 0");
    if (!(config.t_end > config.dt)) {
        throw std::invalid_argument("config: t_end must exceed dt");
    }
    if (config.stride < 1) throw std::invalid_argument("config: stride must be >= 1");
    if (!(config.guard > 0.0)) throw std::invalid_argument("config: guard must be > 0");
    if (!(config.conv_threshold > 0.0)) {
        throw std::invalid_argument("config: conv_threshold must be > 0");
    }
    if (config.init.size() != 0 && config.init.size() != 4 * config.model.m) {
        throw std::invalid_argument("config: init needs " +
                                    std::to_string(4 * config.model.m) + " values, got " +
                                    std::to_string(config.init.size()));
    }
}

phase::PhaseState effective_init(const ExperimentConfig& config) {
    if (config.init.size() == 4 * config.model.m) return config.init;
    return phase::PhaseState::Zero(4 * config.model.m);
}

double config_value(const io::KeyValueList& entries, const std::string& key,
                    double fallback) {
    double v = fallback;
    for (const auto& [k, text] : entries) {
        if (k == key) v = parse_double_value(key, text);
    }
    return v;
}

// Column names of the trajectory CSV schema for m modes.
std::vector<std::string> trajectory_columns(int m) {
    std::vector<std::string> cols{"t"};
    for (int k = 1; k <= m; ++k) {
        const std::string d = std::to_string(k);
        cols.push_back("Re_d" + d + "u");
        cols.push_back("Im_d" + d + "u");
        cols.push_back("Re_d" + d + "d");
        cols.push_back("Im_d" + d + "d");
    }
    for (int k = 1; k <= m; ++k) {
        const std::string d = std::to_string(k);
        cols.push_back("amp_" + d + "u");
        cols.push_back("amp_" + d + "d");
    }
    return cols;
}

io::CsvTable trajectory_table(const phase::PhaseTrajectory& traj, const std::string& kind,
                              const ExperimentConfig& config) {
    io::CsvTable table;
    table.metadata = {
        {"kind", kind},
        {"omega", io::format_double(traj.model.omega)},
        {"d", io::format_double(traj.model.d)},
        {"m", std::to_string(traj.model.m)},
        {"variant", jordan::variant_name(traj.variant)},
        {"dt", io::format_double(traj.dt)},
        {"t_end", io::format_double(config.t_end)},
        {"stride", std::to_string(traj.stride)},
        {"guard", io::format_double(config.guard)},
        {"guard_tripped", bool_text(traj.guard_tripped)},
    };
    if (traj.guard_tripped) {
        table.metadata.emplace_back("guard_time", io::format_double(traj.guard_time));
        table.metadata.emplace_back("guard_reason", traj.guard_reason);
    }
    table.columns = trajectory_columns(traj.m());
    const bool raw_amp = !traj.raw_amplitudes.empty();
    for (size_t i = 0; i < traj.times.size(); ++i) {
        std::vector<double> row;
        row.reserve(table.columns.size());
        row.push_back(traj.times[i]);
        const phase::PhaseState& y = traj.states[i];
        for (Eigen::Index j = 0; j < y.size(); ++j) row.push_back(y[j]);
        const Eigen::VectorXd amp =
            raw_amp ? traj.raw_amplitudes[i] : phase::amplitudes(y);
        for (Eigen::Index j = 0; j < amp.size(); ++j) row.push_back(amp[j]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace

io::KeyValueList ExperimentConfig::entries() const {
    io::KeyValueList out;
    out.emplace_back("omega", io::format_double(model.omega));
    out.emplace_back("d", io::format_double(model.d));
    out.emplace_back("m", std::to_string(model.m));
    out.emplace_back("variant", jordan::variant_name(variant));
    std::string init_text;
    const phase::PhaseState y =
        init.size() == 4 * model.m ? init : phase::PhaseState::Zero(4 * model.m);
    for (Eigen::Index j = 0; j < y.size(); ++j) {
        if (j) init_text += " ";
        init_text += io::format_double(y[j]);
    }
    out.emplace_back("init", init_text);
    out.emplace_back("dt", io::format_double(dt));
    out.emplace_back("t_end", io::format_double(t_end));
    out.emplace_back("stride", std::to_string(stride));
    out.emplace_back("slope_min", io::format_double(thresholds.slope_min));
    out.emplace_back("r2_min", io::format_double(thresholds.r2_min));
    out.emplace_back("curvature_rel", io::format_double(thresholds.curvature_rel));
    out.emplace_back("conv_threshold", io::format_double(conv_threshold));
    out.emplace_back("guard", io::format_double(guard));
    out.emplace_back("output_dir", output_dir.string());
    return out;
}

ExperimentConfig make_config(const io::KeyValueList& entries) {
    std::map<std::string, std::string> last;
    for (const auto& [key, value] : entries) {
        if (!known_keys().count(key)) {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
        last[key] = value;
    }

    ExperimentConfig config;
    if (last.count("m")) config.model.m = parse_int_value("m", last["m"]);
    if (last.count("omega")) config.model.omega = parse_double_value("omega", last["omega"]);
    if (last.count("d")) config.model.d = parse_double_value("d", last["d"]);
    if (last.count("variant")) config.variant = jordan::parse_variant(last["variant"]);
    if (last.count("init")) {
        const std::vector<double> values = parse_double_list("init", last["init"]);
        config.init.resize(static_cast<Eigen::Index>(values.size()));
        for (size_t i = 0; i < values.size(); ++i) {
            config.init[static_cast<Eigen::Index>(i)] = values[i];
        }
    }
    if (last.count("dt")) config.dt = parse_double_value("dt", last["dt"]);
    if (last.count("t_end")) config.t_end = parse_double_value("t_end", last["t_end"]);
    if (last.count("stride")) config.stride = parse_int_value("stride", last["stride"]);
    if (last.count("slope_min")) {
        config.thresholds.slope_min = parse_double_value("slope_min", last["slope_min"]);
    }
    if (last.count("r2_min")) {
        config.thresholds.r2_min = parse_double_value("r2_min", last["r2_min"]);
    }
    if (last.count("curvature_rel")) {
        config.thresholds.curvature_rel =
            parse_double_value("curvature_rel", last["curvature_rel"]);
    }
    if (last.count("conv_threshold")) {
        config.conv_threshold = parse_double_value("conv_threshold", last["conv_threshold"]);
    }
    if (last.count("guard")) config.guard = parse_double_value("guard", last["guard"]);
    if (last.count("output_dir")) config.output_dir = last["output_dir"];

    validate_config(config);
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& file,
                             const std::vector<std::string>& overrides) {
    io::KeyValueList entries = io::read_key_values(file);
    for (const std::string& assignment : overrides) {
        entries.push_back(io::split_assignment(assignment));
    }
    return make_config(entries);
}

RunManifest run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    const phase::PhaseState init = effective_init(config);

    RunManifest manifest;
    manifest.dir = config.output_dir;
    manifest.version = kToolVersion;
    manifest.started_utc = now_utc();
    manifest.config_entries = config.entries();

    fs::create_directories(config.output_dir);
    std::vector<fs::path> written;
    auto emit = [&](const std::string& name, auto&& writer) {
        const fs::path path = config.output_dir / name;
        written.push_back(path);
        writer(path);
        manifest.files.emplace_back(name, io::file_digest_hex(path));
    };

    try {
        const phase::GuardSettings guard{config.guard};
        const phase::PhaseTrajectory traj = phase::integrate_phases(
            config.model, config.variant, init, config.dt, config.t_end, config.stride,
            guard);
        const phase::PhaseTrajectory oracle = phase::integrate_psi_oracle(
            config.model, config.variant, phase::initial_psi(init), config.dt,
            config.t_end, config.stride);

        emit("phases.csv", [&](const fs::path& p) {
            io::write_csv(p, trajectory_table(traj, "phases", config));
        });
        emit("oracle.csv", [&](const fs::path& p) {
            io::write_csv(p, trajectory_table(oracle, "oracle", config));
        });

        if (config.model.m >= 3) {
            emit("differences.csv", [&](const fs::path& p) {
                io::CsvTable table;
                table.metadata = {{"kind", "differences"},
                                  {"m", std::to_string(config.model.m)},
                                  {"variant", jordan::variant_name(config.variant)}};
                table.columns = {"t"};
                const auto pairs = phase::coupling_pairs(config.model.m);
                std::vector<std::vector<double>> series;
                for (const auto& pair : pairs) {
                    table.columns.push_back(phase::pair_label(pair));
                    series.push_back(phase::difference_series(traj, pair));
                }
                for (size_t i = 0; i < traj.times.size(); ++i) {
                    std::vector<double> row{traj.times[i]};
                    for (const auto& s : series) row.push_back(s[i]);
                    table.rows.push_back(std::move(row));
                }
                io::write_csv(p, table);
            });
        }

        emit("logdiv.csv", [&](const fs::path& p) {
            io::CsvTable table;
            table.metadata = {{"kind", "logdiv"},
                              {"m", std::to_string(config.model.m)},
                              {"variant", jordan::variant_name(config.variant)}};
            table.columns = {"ln_t", "abs_Im_d1u", "abs_Im_d1d"};
            const auto up = phase::imag_series(traj, {1, false});
            const auto dn = phase::imag_series(traj, {1, true});
            for (size_t i = 0; i < traj.times.size(); ++i) {
                if (traj.times[i] <= 0.0) continue;
                table.rows.push_back(
                    {std::log(traj.times[i]), std::abs(up[i]), std::abs(dn[i])});
            }
            io::write_csv(p, table);
        });

        emit("summary.txt", [&](const fs::path& p) {
            io::KeyValueList summary;
            summary.emplace_back("version", kToolVersion);
            for (const auto& [k, v] : manifest.config_entries) {
                summary.emplace_back("config." + k, v);
            }
            summary.emplace_back("guard.tripped", bool_text(traj.guard_tripped));
            if (traj.guard_tripped) {
                summary.emplace_back("guard.time", io::format_double(traj.guard_time));
                summary.emplace_back("guard.reason", traj.guard_reason);
            }

            try {
                const phase::FitWindow window = phase::default_tail_window(traj);
                const phase::DivergenceReport report =
                    phase::classify_divergence(traj, window, config.thresholds);
                summary.emplace_back("window.t_lo", io::format_double(window.t_lo));
                summary.emplace_back("window.t_hi", io::format_double(window.t_hi));
                for (const auto& s : report.series) {
                    const std::string base = "series." + phase::series_label(s.series);
                    summary.emplace_back(base + ".class", phase::divergence_class_name(s.cls));
                    summary.emplace_back(base + ".slope", io::format_double(s.slope));
                    summary.emplace_back(base + ".r2", io::format_double(s.r2));
                    summary.emplace_back(base + ".curvature", io::format_double(s.curvature));
                    summary.emplace_back(base + ".onset_time",
                                         io::format_double(s.onset_time));
                }
            } catch (const std::exception& e) {
                summary.emplace_back("classification.unavailable", e.what());
            }

            if (config.model.m >= 3) {
                for (const auto& pair : phase::coupling_pairs(config.model.m)) {
                    try {
                        const phase::PhaseDifferenceStats stats = phase::phase_difference_stats(
                            traj, pair, std::nullopt, config.conv_threshold);
                        const std::string base = "pair." + phase::pair_label(pair);
                        summary.emplace_back(base + ".min", io::format_double(stats.min));
                        summary.emplace_back(base + ".max", io::format_double(stats.max));
                        summary.emplace_back(base + ".converged", bool_text(stats.converged));
                        summary.emplace_back(base + ".limit", io::format_double(stats.limit));
                    } catch (const std::exception& e) {
                        summary.emplace_back("pair." + phase::pair_label(pair) + ".unavailable",
                                             e.what());
                    }
                }
            }

            double oracle_dev = 0.0;
            const size_t common = std::min(traj.states.size(), oracle.states.size());
            for (size_t i = 0; i < common; ++i) {
                oracle_dev = std::max(
                    oracle_dev, (traj.states[i] - oracle.states[i]).cwiseAbs().maxCoeff());
            }
            summary.emplace_back("oracle.max_phase_dev", io::format_double(oracle_dev));

            io::write_key_values(p, summary, "experiment summary");
        });

        manifest.finished_utc = now_utc();
        io::KeyValueList mf;
        mf.emplace_back("version", manifest.version);
        mf.emplace_back("started_utc", manifest.started_utc);
        mf.emplace_back("finished_utc", manifest.finished_utc);
        for (const auto& [k, v] : manifest.config_entries) {
            mf.emplace_back("config." + k, v);
        }
        for (const auto& [name, digest] : manifest.files) {
            mf.emplace_back("file." + name, digest);
        }
        written.push_back(config.output_dir / "manifest.txt");
        io::write_key_values(config.output_dir / "manifest.txt", mf, "run manifest");
    } catch (...) {
        for (const fs::path& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        throw;
    }
    return manifest;
}

RunManifest read_manifest(const std::filesystem::path& run_dir) {
    const fs::path file = run_dir / "manifest.txt";
    if (!fs::exists(file)) {
        throw std::invalid_argument("no manifest.txt in " + run_dir.string() +
                                    " (run incomplete or missing)");
    }
    RunManifest manifest;
    manifest.dir = run_dir;
    for (const auto& [key, value] : io::read_key_values(file)) {
        if (key == "version") {
            manifest.version = value;
        } else if (key == "started_utc") {
            manifest.started_utc = value;
        } else if (key == "finished_utc") {
            manifest.finished_utc = value;
        } else if (key.rfind("config.", 0) == 0) {
            manifest.config_entries.emplace_back(key.substr(7), value);
        } else if (key.rfind("file.", 0) == 0) {
            manifest.files.emplace_back(key.substr(5), value);
        } else {
            throw std::invalid_argument(file.string() + ": unknown manifest key '" + key + "'");
        }
    }
    for (const auto& [name, digest] : manifest.files) {
        const fs::path p = run_dir / name;
        if (!fs::exists(p)) {
            throw std::invalid_argument("manifest lists missing file: " + p.string());
        }
        const std::string actual = io::file_digest_hex(p);
        if (actual != digest) {
            throw std::invalid_argument("digest mismatch for " + p.string() + ": manifest " +
                                        digest + ", actual " + actual);
        }
    }
    return manifest;
}

phase::PhaseTrajectory load_trajectory_csv(const std::filesystem::path& file) {
    const io::CsvTable table = io::read_csv(file);
    phase::PhaseTrajectory traj;
    const std::string m_text = table.meta("m");
    if (m_text.empty()) {
        throw std::invalid_argument(file.string() + ": metadata key 'm' missing");
    }
    traj.model.m = parse_int_value("m", m_text);
    if (!table.meta("omega").empty()) {
        traj.model.omega = parse_double_value("omega", table.meta("omega"));
    }
    if (!table.meta("d").empty()) {
        traj.model.d = parse_double_value("d", table.meta("d"));
    }
    if (!table.meta("variant").empty()) {
        traj.variant = jordan::parse_variant(table.meta("variant"));
    }
    if (!table.meta("dt").empty()) {
        traj.dt = parse_double_value("dt", table.meta("dt"));
    }
    if (!table.meta("stride").empty()) {
        traj.stride = parse_int_value("stride", table.meta("stride"));
    }
    traj.guard_tripped = table.meta("guard_tripped") == "1";
    if (traj.guard_tripped) {
        if (!table.meta("guard_time").empty()) {
            traj.guard_time = parse_double_value("guard_time", table.meta("guard_time"));
        }
        traj.guard_reason = table.meta("guard_reason");
    }

    const int m = traj.model.m;
    const std::size_t t_col = table.column_index("t");
    std::vector<std::size_t> phase_cols;
    for (int k = 1; k <= m; ++k) {
        const std::string d = std::to_string(k);
        phase_cols.push_back(table.column_index("Re_d" + d + "u"));
        phase_cols.push_back(table.column_index("Im_d" + d + "u"));
        phase_cols.push_back(table.column_index("Re_d" + d + "d"));
        phase_cols.push_back(table.column_index("Im_d" + d + "d"));
    }
    std::vector<std::size_t> amp_cols;
    for (int k = 1; k <= m; ++k) {
        const std::string d = std::to_string(k);
        amp_cols.push_back(table.column_index("amp_" + d + "u"));
        amp_cols.push_back(table.column_index("amp_" + d + "d"));
    }
    const bool oracle = table.meta("kind") == "oracle";
    for (const auto& row : table.rows) {
        traj.times.push_back(row[t_col]);
        phase::PhaseState y(4 * m);
        for (size_t j = 0; j < phase_cols.size(); ++j) {
            y[static_cast<Eigen::Index>(j)] = row[phase_cols[j]];
        }
        traj.states.push_back(std::move(y));
        if (oracle) {
            Eigen::VectorXd amp(2 * m);
            for (size_t j = 0; j < amp_cols.size(); ++j) {
                amp[static_cast<Eigen::Index>(j)] = row[amp_cols[j]];
            }
            traj.raw_amplitudes.push_back(std::move(amp));
        }
    }
    return traj;
}

CompareReport compare_runs(const std::filesystem::path& run_a,
                           const std::filesystem::path& run_b) {
    const RunManifest ma = read_manifest(run_a);
    const RunManifest mb = read_manifest(run_b);
    const io::CsvTable ta = io::read_csv(run_a / "phases.csv");
    const io::CsvTable tb = io::read_csv(run_b / "phases.csv");
    if (ta.meta("m") != tb.meta("m")) {
        throw std::invalid_argument("incompatible runs: m = " + ta.meta("m") + " vs " +
                                    tb.meta("m"));
    }
    if (ta.rows.size() != tb.rows.size()) {
        throw std::invalid_argument("incompatible runs: " + std::to_string(ta.rows.size()) +
                                    " vs " + std::to_string(tb.rows.size()) + " samples");
    }
    const std::size_t t_a = ta.column_index("t");
    const std::size_t t_b = tb.column_index("t");
    for (size_t i = 0; i < ta.rows.size(); ++i) {
        if (ta.rows[i][t_a] != tb.rows[i][t_b]) {
            throw std::invalid_argument("incompatible runs: sample grids differ at row " +
                                        std::to_string(i));
        }
    }

    CompareReport report;
    for (std::size_t col = 0; col < ta.columns.size(); ++col) {
        const std::string& name = ta.columns[col];
        if (name == "t") continue;
        const std::size_t col_b = tb.column_index(name);
        double dev = 0.0;
        for (size_t i = 0; i < ta.rows.size(); ++i) {
            dev = std::max(dev, std::abs(ta.rows[i][col] - tb.rows[i][col_b]));
        }
        report.columns.push_back({name, dev});
        report.max_abs_dev = std::max(report.max_abs_dev, dev);
    }

    const phase::PhaseTrajectory traj_a = load_trajectory_csv(run_a / "phases.csv");
    const phase::PhaseTrajectory traj_b = load_trajectory_csv(run_b / "phases.csv");
    auto thresholds_of = [](const RunManifest& m) {
        phase::DivergenceThresholds th;
        th.slope_min = config_value(m.config_entries, "slope_min", th.slope_min);
        th.r2_min = config_value(m.config_entries, "r2_min", th.r2_min);
        th.curvature_rel = config_value(m.config_entries, "curvature_rel", th.curvature_rel);
        return th;
    };
    // Runs too short to classify still compare column by column; the
    // classification diff is simply empty then.
    try {
        const phase::DivergenceReport ra =
            phase::classify_divergence(traj_a, thresholds_of(ma));
        const phase::DivergenceReport rb =
            phase::classify_divergence(traj_b, thresholds_of(mb));
        const size_t n = std::min(ra.series.size(), rb.series.size());
        for (size_t i = 0; i < n; ++i) {
            if (ra.series[i].cls != rb.series[i].cls) {
                report.class_diffs.push_back({phase::series_label(ra.series[i].series),
                                              phase::divergence_class_name(ra.series[i].cls),
                                              phase::divergence_class_name(rb.series[i].cls)});
            }
        }
    } catch (const std::invalid_argument&) {
    }
    return report;
}

std::vector<std::filesystem::path> export_plot_data(const std::filesystem::path& run_dir,
                                                    const std::string& figure) {
    read_manifest(run_dir);  // completeness check
    const phase::PhaseTrajectory traj = load_trajectory_csv(run_dir / "phases.csv");
    if (traj.times.empty()) {
        throw std::invalid_argument("empty trajectory in " + run_dir.string());
    }
    if (figure != "f4" && figure != "f5" && figure != "f6") {
        throw std::invalid_argument("unknown figure key '" + figure +
                                    "' (expected f4, f5 or f6)");
    }

    const fs::path out_dir = run_dir / "export";
    fs::create_directories(out_dir);
    std::vector<fs::path> files;

    auto write_two_column = [&](const std::string& name, const std::string& x_name,
                                const std::string& y_name,
                                const std::vector<std::pair<double, double>>& points,
                                const io::KeyValueList& extra_meta) {
        io::CsvTable table;
        table.metadata = {{"figure", figure}};
        for (const auto& [k, v] : extra_meta) table.metadata.emplace_back(k, v);
        table.columns = {x_name, y_name};
        for (const auto& [x, y] : points) table.rows.push_back({x, y});
        const fs::path path = out_dir / name;
        io::write_csv(path, table);
        files.push_back(path);
    };

    if (figure == "f4") {
        const auto pairs = phase::coupling_pairs(traj.m());
        const char* panels = "abcdef";
        for (size_t i = 0; i < pairs.size(); ++i) {
            const auto diff = phase::difference_series(traj, pairs[i]);
            std::vector<std::pair<double, double>> points;
            for (size_t j = 0; j < traj.times.size(); ++j) {
                points.emplace_back(traj.times[j], diff[j]);
            }
            write_two_column(std::string("f4_") + panels[i] + ".csv", "t", "re_diff",
                             points, {{"pair", phase::pair_label(pairs[i])}});
        }
    } else if (figure == "f5") {
        if (traj.m() < 3) {
            throw std::invalid_argument("figure f5 needs m >= 3");
        }
        for (int mode = 1; mode <= 3; ++mode) {
            for (bool down : {false, true}) {
                const phase::SeriesRef ref{mode, down};
                const auto series = phase::imag_series(traj, ref);
                std::vector<std::pair<double, double>> points;
                for (size_t j = 0; j < traj.times.size(); ++j) {
                    points.emplace_back(traj.times[j], series[j]);
                }
                write_two_column("f5_" + phase::series_label(ref) + ".csv", "t", "im",
                                 points, {{"series", phase::series_label(ref)}});
            }
        }
    } else {
        for (bool down : {false, true}) {
            const phase::SeriesRef ref{1, down};
            const auto series = phase::imag_series(traj, ref);
            std::vector<std::pair<double, double>> points;
            for (size_t j = 0; j < traj.times.size(); ++j) {
                if (traj.times[j] <= 0.0) continue;
                points.emplace_back(std::log(traj.times[j]), std::abs(series[j]));
            }
            write_two_column("f6_" + phase::series_label(ref) + ".csv", "ln_t", "abs_im",
                             points, {{"series", phase::series_label(ref)}});
        }
    }
    return files;
}

}  // namespace oscillnet::experiment
