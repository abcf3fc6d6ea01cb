#include "cpbs/scenario.hpp"

#include "cpbs/quantifiers.hpp"
#include "cpbs/version.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cpbs::scenario {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using hilbert::Matrix;

namespace {

constexpr double kPi = 3.141592653589793;

std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0.0
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (used != text.size()) {
        throw std::invalid_argument("trailing characters in number: '" + text + "'");
    }
    return v;
}

int parse_int(const std::string& text) {
    int v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    return v;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(trim(item)));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty list");
    }
    return out;
}

// Shared routing for file keys and --set overrides.
void set_value(ScenarioConfig& config, const std::string& section, const std::string& key,
               const std::string& value) {
    const std::string full = section + "." + key;
    if (section == "model") {
        if (key == "delta1") config.params.delta1 = parse_double(value);
        else if (key == "delta2") config.params.delta2 = parse_double(value);
        else if (key == "J") config.params.J = parse_double(value);
        else if (key == "Jp") config.params.Jp = parse_double(value);
        else if (key == "Delta") config.params.Delta = parse_double(value);
        else if (key == "gamma") config.params.gamma = parse_double(value);
        else throw std::invalid_argument("unknown key '" + full + "'");
    } else if (section == "drains") {
        if (key == "Gamma1") config.drains.Gamma1 = parse_double(value);
        else if (key == "Gamma2") config.drains.Gamma2 = parse_double(value);
        else throw std::invalid_argument("unknown key '" + full + "'");
    } else if (section == "dephasing") {
        if (key == "rates") config.dephasing_rates = parse_double_list(value);
        else if (key == "unit") {
            if (value == "GHz") config.dephasing_unit = dynamics::RateUnit::GHz;
            else if (value == "Jp") config.dephasing_unit = dynamics::RateUnit::JpUnits;
            else throw std::invalid_argument("unit must be 'GHz' or 'Jp', got '" + value + "'");
        } else throw std::invalid_argument("unknown key '" + full + "'");
    } else if (section == "grid") {
        if (key == "start") config.grid.start = parse_double(value);
        else if (key == "stop") config.grid.stop = parse_double(value);
        else if (key == "count") config.grid.count = parse_int(value);
        else throw std::invalid_argument("unknown key '" + full + "'");
    } else if (section == "units") {
        if (key == "Jp_ueV") config.jp_ueV = parse_double(value);
        else throw std::invalid_argument("unknown key '" + full + "'");
    } else if (section == "output") {
        if (key == "dir") config.output_dir = value;
        else throw std::invalid_argument("unknown key '" + full + "'");
    } else {
        throw std::invalid_argument("unknown section '" + section + "'");
    }
}

std::string param_comment(const ScenarioConfig& config) {
    std::ostringstream os;
    os << "# " << kName << ' ' << kVersion << " scenario=" << to_string(config.kind);
    os << " delta1=" << fmt(config.params.delta1) << " delta2=" << fmt(config.params.delta2)
       << " J=" << fmt(config.params.J) << " Jp=" << fmt(config.params.Jp)
       << " Delta=" << fmt(config.params.Delta) << " gamma=" << fmt(config.params.gamma)
       << " Gamma1=" << fmt(config.drains.Gamma1) << " Gamma2=" << fmt(config.drains.Gamma2)
       << " theta_start=" << fmt(config.grid.start) << " theta_stop=" << fmt(config.grid.stop)
       << " theta_count=" << config.grid.count << " Jp_ueV=" << fmt(config.jp_ueV);
    return os.str();
}

// RFC-4180 quoting for non-numeric fields.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("output path failure: cannot open " + path.string());
    }
    out << content;
    if (!out) {
        throw std::runtime_error("output path failure: cannot write " + path.string());
    }
}

fs::path prepare_output_dir(const ScenarioConfig& config) {
    const fs::path dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("output path failure: cannot create " + dir.string() + ": " +
                                 ec.message());
    }
    return dir;
}

double theta_scale(const ScenarioConfig& config) {
    const double omega = std::abs(model::effective_coupling(config.params));
    if (!(omega > 0.0)) {
        throw std::invalid_argument("effective coupling vanishes; the theta axis is undefined");
    }
    return omega;
}

Matrix initial_full_state() {
    Matrix rho = Matrix::Zero(hilbert::kDim, hilbert::kDim);
    rho(9, 9) = 1.0;  // |Phi_9> = |1001>
    return rho;
}

Matrix analytic_2qb_state(double theta) {
    const Eigen::Vector2cd amps = model::analytic_state(theta);
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(1) = amps(0);
    psi(2) = amps(1);
    return psi * psi.adjoint();
}

dynamics::Trajectory full_model_trajectory(const ScenarioConfig& config) {
    return dynamics::evolve(initial_full_state(), model::build_hamiltonian(config.params),
                            dynamics::drain_channels(config.drains), config.grid.points(),
                            theta_scale(config));
}

std::vector<fs::path> run_spectrum(const ScenarioConfig& config) {
    const fs::path dir = prepare_output_dir(config);
    const spectral::SpectralReport report = spectral::spectral_report(config.params);

    json doc;
    doc["artifact"] = kName;
    doc["version"] = kVersion;
    doc["scenario"] = to_string(config.kind);
    doc["params"] = {{"delta1", config.params.delta1}, {"delta2", config.params.delta2},
                     {"J", config.params.J},           {"Jp", config.params.Jp},
                     {"Delta", config.params.Delta},   {"gamma", config.params.gamma}};
    doc["classification_thresholds"] = {{"svne", report.options.svne_threshold},
                                        {"sector_weight", report.options.sector_threshold}};
    doc["energies"] = std::vector<double>(report.energies.data(),
                                          report.energies.data() + report.energies.size());
    json projections = json::array();
    json vec_re = json::array();
    json vec_im = json::array();
    for (int n = 0; n < hilbert::kDim; ++n) {
        json prow = json::array();
        json rrow = json::array();
        json irow = json::array();
        for (int i = 0; i < hilbert::kDim; ++i) {
            prow.push_back(report.projections(n, i));
            rrow.push_back(report.eigenvectors(i, n).real());
            irow.push_back(report.eigenvectors(i, n).imag());
        }
        projections.push_back(prow);
        vec_re.push_back(rrow);
        vec_im.push_back(irow);
    }
    doc["projections"] = projections;
    doc["eigenvectors_re"] = vec_re;
    doc["eigenvectors_im"] = vec_im;

    json states = json::array();
    for (int n = 0; n < hilbert::kDim; ++n) {
        const spectral::EigenstateInfo& info = report.states[n];
        json s;
        s["index"] = n;
        s["energy"] = info.energy;
        s["svne"] = info.svne;
        s["tei"] = info.tei;
        s["covariances"] = info.covariances;
        s["table_covariances"] = info.table_covariances;
        s["dominant_sector"] = info.dominant_sector;
        s["sector_weight"] = info.sector_weight;
        s["classification"] = spectral::to_string(info.label);
        states.push_back(s);
    }
    doc["eigenstates"] = states;

    json sets;
    for (spectral::StateClass c :
         {spectral::StateClass::Pure, spectral::StateClass::OneParticleEntangled,
          spectral::StateClass::TwoParticleEntangled, spectral::StateClass::ThreeParticleEntangled,
          spectral::StateClass::Ambiguous}) {
        sets[spectral::to_string(c)] = report.members(c);
    }
    doc["sets"] = sets;

    const fs::path json_path = dir / "spectral_report.json";
    write_file(json_path, doc.dump(2) + "\n");

    std::ostringstream csv;
    csv << param_comment(config) << '\n';
    csv << "eigenstate,cov_n1up_n2dn,cov_n1dn_n2up,cov_n1dn_n2dn,cov_n1up_n2up,"
           "raw_cov_n1up_n2dn,raw_cov_n1dn_n2up,raw_cov_n1dn_n2dn,raw_cov_n1up_n2up,"
           "energy,classification\n";
    for (int n = 0; n < hilbert::kDim; ++n) {
        const spectral::EigenstateInfo& info = report.states[n];
        csv << n;
        for (int k = 0; k < 4; ++k) csv << ',' << info.table_covariances[k];
        for (int k = 0; k < 4; ++k) csv << ',' << fmt(info.covariances[k]);
        csv << ',' << fmt(info.energy) << ',' << csv_field(spectral::to_string(info.label))
            << '\n';
    }
    const fs::path csv_path = dir / "covariance_table.csv";
    write_file(csv_path, csv.str());

    return {json_path, csv_path};
}

std::vector<fs::path> run_evolve(const ScenarioConfig& config) {
    const fs::path dir = prepare_output_dir(config);
    const dynamics::Trajectory traj = full_model_trajectory(config);

    std::ostringstream csv;
    csv << param_comment(config) << '\n';
    csv << "theta,theta_over_pi";
    for (int i = 0; i < hilbert::kDim; ++i) csv << ",P_" << i;
    csv << ",P6_eff,P9_eff\n";
    for (std::size_t k = 0; k < traj.thetas.size(); ++k) {
        const double theta = traj.thetas[k];
        csv << fmt(theta) << ',' << fmt(theta / kPi);
        for (int i = 0; i < hilbert::kDim; ++i) {
            csv << ',' << fmt(dynamics::occupation(traj.states[k], i));
        }
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        csv << ',' << fmt(s * s) << ',' << fmt(c * c) << '\n';
    }
    const fs::path path = dir / "populations.csv";
    write_file(path, csv.str());
    return {path};
}

std::vector<fs::path> run_indicators(const ScenarioConfig& config) {
    const fs::path dir = prepare_output_dir(config);
    const dynamics::Trajectory traj = full_model_trajectory(config);

    std::ostringstream csv;
    csv << param_comment(config) << '\n';
    csv << "theta,theta_over_pi,qmi_half,neg_times_2,svne,tei,concurrence_eff\n";
    for (std::size_t k = 0; k < traj.thetas.size(); ++k) {
        const double theta = traj.thetas[k];
        const quantifiers::IndicatorSet set = quantifiers::indicator_set(traj.states[k]);
        csv << fmt(theta) << ',' << fmt(theta / kPi) << ',' << fmt(set.sqmi()) << ','
            << fmt(set.sneg()) << ',' << fmt(set.svne) << ',' << fmt(set.tei) << ','
            << fmt(quantifiers::concurrence(analytic_2qb_state(theta))) << '\n';
    }
    const fs::path path = dir / "indicators.csv";
    write_file(path, csv.str());
    return {path};
}

std::vector<fs::path> run_covariance(const ScenarioConfig& config) {
    const fs::path dir = prepare_output_dir(config);
    const dynamics::Trajectory traj = full_model_trajectory(config);

    std::ostringstream csv;
    csv << param_comment(config) << '\n';
    csv << "theta,theta_over_pi,cov_n1up_n2dn,cov_analytic,qmi_half,concurrence_eff\n";
    for (std::size_t k = 0; k < traj.thetas.size(); ++k) {
        const double theta = traj.thetas[k];
        const Matrix& rho = traj.states[k];
        csv << fmt(theta) << ',' << fmt(theta / kPi) << ','
            << fmt(quantifiers::covariance(rho, hilbert::Spin::Up, hilbert::Spin::Down)) << ','
            << fmt(quantifiers::covariance_analytic(theta)) << ','
            << fmt(0.5 * quantifiers::qmi(rho)) << ','
            << fmt(quantifiers::concurrence(analytic_2qb_state(theta))) << '\n';
    }
    const fs::path path = dir / "covariance.csv";
    write_file(path, csv.str());
    return {path};
}

std::string rate_label(double rate) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", rate);
    return buf;
}

std::vector<fs::path> run_dephasing_sweep(const ScenarioConfig& config) {
    const fs::path dir = prepare_output_dir(config);
    const double omega = theta_scale(config);
    const Matrix h2 = model::build_2qb_hamiltonian(config.params);
    Matrix rho0 = Matrix::Zero(4, 4);
    rho0(1, 1) = 1.0;  // |01> = |0110>

    const std::string unit_label =
        config.dephasing_unit == dynamics::RateUnit::GHz ? "GHz" : "Jp";
    std::vector<fs::path> written;
    for (double rate : config.dephasing_rates) {
        dynamics::DephasingConfig deph;
        deph.gamma_deph = rate;
        deph.unit = config.dephasing_unit;
        deph.jp_ueV = config.jp_ueV;
        const dynamics::Trajectory traj =
            dynamics::evolve_2qb_dephasing(rho0, h2, deph, config.grid.points(), omega);

        std::ostringstream csv;
        csv << param_comment(config) << " Gamma_deph=" << fmt(rate) << " unit=" << unit_label
            << '\n';
        csv << "theta,theta_over_pi,concurrence,cov_n1up_n2dn,P_01,P_10\n";
        for (std::size_t k = 0; k < traj.thetas.size(); ++k) {
            const double theta = traj.thetas[k];
            const Matrix& rho = traj.states[k];
            csv << fmt(theta) << ',' << fmt(theta / kPi) << ','
                << fmt(quantifiers::concurrence(rho)) << ','
                << fmt(quantifiers::covariance_2qb(rho, hilbert::Spin::Up, hilbert::Spin::Down))
                << ',' << fmt(rho(1, 1).real()) << ',' << fmt(rho(2, 2).real()) << '\n';
        }
        const fs::path path = dir / ("dephasing_" + rate_label(rate) + unit_label + ".csv");
        write_file(path, csv.str());
        written.push_back(path);
    }
    return written;
}

} // namespace

Kind kind_from_name(const std::string& name) {
    if (name == "spectrum") return Kind::Spectrum;
    if (name == "evolve") return Kind::Evolve;
    if (name == "indicators") return Kind::Indicators;
    if (name == "covariance") return Kind::Covariance;
    if (name == "dephasing-sweep") return Kind::DephasingSweep;
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::string to_string(Kind kind) {
    switch (kind) {
        case Kind::Spectrum: return "spectrum";
        case Kind::Evolve: return "evolve";
        case Kind::Indicators: return "indicators";
        case Kind::Covariance: return "covariance";
        case Kind::DephasingSweep: return "dephasing-sweep";
    }
    return "unknown";
}

std::vector<double> ThetaGrid::points() const {
    if (count < 2) {
        throw std::invalid_argument("theta grid count must be at least 2");
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        out[k] = start + (stop - start) * static_cast<double>(k) / (count - 1);
    }
    out.back() = stop;
    return out;
}

ScenarioConfig default_benchmark() { return {}; }

ConfigError::ConfigError(const std::string& file, int line_at, int col_at,
                         const std::string& message)
    : std::runtime_error("config parse: " + file + ":" + std::to_string(line_at) + ":" +
                         std::to_string(col_at) + ": " + message),
      line(line_at),
      col(col_at) {}

void apply_text(ScenarioConfig& config, const std::string& text, const std::string& file_name) {
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto comment = raw.find_first_of("#;");
        std::string line = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
        if (line.empty()) continue;

        const int col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(file_name, line_no, col, "unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "drains" && section != "dephasing" &&
                section != "grid" && section != "units" && section != "output") {
                throw ConfigError(file_name, line_no, col, "unknown section '" + section + "'");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(file_name, line_no, col, "expected 'key = value'");
        }
        if (section.empty()) {
            throw ConfigError(file_name, line_no, col, "key outside of any section");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(file_name, line_no, col, "empty key");
        }
        try {
            set_value(config, section, key, value);
        } catch (const std::invalid_argument& err) {
            throw ConfigError(file_name, line_no, col, err.what());
        }
    }
}

void apply_file(ScenarioConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open config file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    apply_text(config, buffer.str(), path.string());
}

void apply_override(ScenarioConfig& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw std::invalid_argument("invalid --set '" + assignment + "': expected key=value");
    }
    const std::string key_path = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const auto dot = key_path.find('.');
    if (dot == std::string::npos) {
        throw std::invalid_argument("invalid --set '" + assignment +
                                    "': expected section.key=value");
    }
    try {
        set_value(config, key_path.substr(0, dot), key_path.substr(dot + 1), value);
    } catch (const std::invalid_argument& err) {
        throw std::invalid_argument("invalid --set '" + assignment + "': " + err.what());
    }
}

void validate(const ScenarioConfig& config) {
    model::validate(config.params);
    if (config.grid.count < 2) {
        throw std::invalid_argument("theta grid count must be at least 2");
    }
    if (!(config.grid.start >= 0.0) || !(config.grid.stop > config.grid.start)) {
        throw std::invalid_argument("theta grid requires stop > start >= 0");
    }
    if (config.drains.Gamma1 < 0.0 || config.drains.Gamma2 < 0.0) {
        throw std::invalid_argument("drain rates must be nonnegative");
    }
    for (double rate : config.dephasing_rates) {
        if (rate < 0.0) {
            throw std::invalid_argument("dephasing rates must be nonnegative");
        }
    }
    if (!(config.jp_ueV > 0.0)) {
        throw std::invalid_argument("Jp_ueV must be positive");
    }
}

std::vector<std::filesystem::path> run_scenario(const ScenarioConfig& config) {
    validate(config);
    switch (config.kind) {
        case Kind::Spectrum: return run_spectrum(config);
        case Kind::Evolve: return run_evolve(config);
        case Kind::Indicators: return run_indicators(config);
        case Kind::Covariance: return run_covariance(config);
        case Kind::DephasingSweep: return run_dephasing_sweep(config);
    }
    throw std::logic_error("unhandled scenario kind");
}

} // namespace cpbs::scenario
