#include "wedge/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wedge/io.hpp"

namespace wedge {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& path, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        throw config_error(path + ": cannot parse '" + t + "' as a number");
    return v;
}

long parse_int(const std::string& path, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0')
        throw config_error(path + ": cannot parse '" + t + "' as an integer");
    return v;
}

std::vector<double> parse_list(const std::string& path, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) out.push_back(parse_double(path, item));
    if (out.empty()) throw config_error(path + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& path, const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) out.push_back(static_cast<int>(parse_int(path, item)));
    if (out.empty()) throw config_error(path + ": empty list");
    return out;
}

void set_key(ExperimentConfig& cfg, const std::string& section, const std::string& key,
             const std::string& value) {
    const std::string path = "[" + section + "]." + key;
    if (section == "experiment") {
        if (key == "kind")
            cfg.experiment = experiment_kind_from(trim(value));
        else if (key == "seed")
            cfg.seed = static_cast<std::uint64_t>(parse_int(path, value));
        else if (key == "output_dir")
            cfg.output_dir = trim(value);
        else if (key == "jobs")
            cfg.jobs = static_cast<int>(parse_int(path, value));
        else if (key == "delta")
            cfg.delta = parse_double(path, value);
        else if (key == "samples")
            cfg.samples = static_cast<int>(parse_int(path, value));
        else if (key == "h")
            cfg.h = parse_double(path, value);
        else if (key == "nu_ref_offset")
            cfg.nu_ref_offset = static_cast<int>(parse_int(path, value));
        else
            throw config_error(path + " is not recognized");
    } else if (section == "model") {
        if (key == "a_inf")
            cfg.model.a_inf = parse_double(path, value);
        else if (key == "epsilon")
            cfg.model.epsilon = parse_double(path, value);
        else if (key == "tau2")
            cfg.model.tau2 = parse_double(path, value);
        else if (key == "b0")
            cfg.model.b0 = parse_double(path, value);
        else
            throw config_error(path + " is not recognized");
    } else if (section == "domain") {
        if (key == "rho_lo")
            cfg.bounds.rho_lo = parse_double(path, value);
        else if (key == "rho_hi")
            cfg.bounds.rho_hi = parse_double(path, value);
        else if (key == "v_max")
            cfg.bounds.v_max = parse_double(path, value);
        else
            throw config_error(path + " is not recognized");
    } else if (section == "scheme") {
        if (key == "nu")
            cfg.scheme.nu = static_cast<int>(parse_int(path, value));
        else if (key == "fan_kappa")
            cfg.scheme.fan_kappa = parse_double(path, value);
        else if (key == "varrho")
            cfg.scheme.varrho = parse_double(path, value);
        else if (key == "lambda_hat")
            cfg.scheme.lambda_hat = parse_double(path, value);
        else if (key == "speed_perturb")
            cfg.scheme.speed_perturb = parse_double(path, value);
        else if (key == "max_fronts")
            cfg.scheme.max_fronts = static_cast<std::size_t>(parse_int(path, value));
        else if (key == "max_events")
            cfg.scheme.max_events = static_cast<std::size_t>(parse_int(path, value));
        else
            throw config_error(path + " is not recognized");
    } else if (section == "initial_data") {
        if (key == "name")
            cfg.data_name = trim(value);
        else
            cfg.data_params[key] = parse_double(path, value);
    } else if (section == "sweep") {
        if (key == "eps")
            cfg.eps_sweep = parse_list(path, value);
        else if (key == "tau2")
            cfg.tau2_sweep = parse_list(path, value);
        else if (key == "mu")
            cfg.mu_sweep = parse_list(path, value);
        else if (key == "x")
            cfg.x_sweep = parse_list(path, value);
        else if (key == "nu")
            cfg.nu_sweep = parse_int_list(path, value);
        else
            throw config_error(path + " is not recognized");
    } else {
        throw config_error("unknown section [" + section + "]");
    }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::optimal_rate: return "optimal_rate";
        case ExperimentKind::global_rate: return "global_rate";
        case ExperimentKind::riemann_single: return "riemann_single";
        case ExperimentKind::front_tracking_run: return "front_tracking_run";
        case ExperimentKind::asymptotic_checks: return "asymptotic_checks";
        case ExperimentKind::semigroup_check: return "semigroup_check";
    }
    return "unknown";
}

ExperimentKind experiment_kind_from(const std::string& name) {
    for (ExperimentKind k :
         {ExperimentKind::optimal_rate, ExperimentKind::global_rate,
          ExperimentKind::riemann_single, ExperimentKind::front_tracking_run,
          ExperimentKind::asymptotic_checks, ExperimentKind::semigroup_check})
        if (to_string(k) == name) return k;
    throw config_error("[experiment].kind: unknown experiment '" + name + "'");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("line " + std::to_string(lineno) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw config_error("line " + std::to_string(lineno) + ": key before any [section]");
        set_key(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    validate(cfg.model);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw config_error("override '" + assignment + "' is not of the form section.key=value");
    const std::string path = trim(assignment.substr(0, eq));
    const std::size_t dot = path.find('.');
    if (dot == std::string::npos)
        throw config_error("override '" + assignment + "' is not of the form section.key=value");
    set_key(cfg, path.substr(0, dot), path.substr(dot + 1), assignment.substr(eq + 1));
    validate(cfg.model);
}

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;
    if (name == "optimal_rate") {
        cfg.experiment = ExperimentKind::optimal_rate;
        cfg.model.a_inf = 1.0;
        cfg.delta = 1e-3;
        cfg.eps_sweep = {4e-3, 2e-3, 1e-3};
        cfg.tau2_sweep = {4e-3, 2e-3, 1e-3};
        cfg.x_sweep = {1.0};
    } else if (name == "global_rate") {
        cfg.experiment = ExperimentKind::global_rate;
        cfg.model.b0 = -0.05;
        cfg.scheme.nu = 8;
        cfg.data_name = "random_bv";
        cfg.data_params = {{"tv", 0.5}, {"pieces", 20.0}};
        cfg.seed = 7;
        cfg.mu_sweep = {8e-3, 4e-3, 2e-3, 1e-3};
        cfg.x_sweep = {0.5, 1.0};
    } else if (name == "riemann_single") {
        cfg.experiment = ExperimentKind::riemann_single;
        cfg.model = ModelParams{1.0, 2e-3, 1e-3, 0.0};
        cfg.data_name = "riemann";
        cfg.data_params = {{"rho_l", 1.0}, {"v_l", 0.2}, {"rho_r", 1.0}, {"v_r", -0.2}};
        cfg.x_sweep = {1.0};
    } else if (name == "front_tracking_run") {
        cfg.experiment = ExperimentKind::front_tracking_run;
        cfg.model = ModelParams{1.0, 1e-3, 1e-3, -0.1};
        cfg.scheme.nu = 8;
        cfg.data_name = "random_bv";
        cfg.data_params = {{"tv", 0.5}, {"pieces", 12.0}};
        cfg.seed = 7;
        cfg.x_sweep = {0.5, 1.0, 2.0};
    } else if (name == "asymptotic_checks") {
        cfg.experiment = ExperimentKind::asymptotic_checks;
        cfg.model.a_inf = 1.0;
        cfg.mu_sweep = {1e-2, 1e-3, 1e-4, 1e-5};
    } else if (name == "semigroup_check") {
        cfg.experiment = ExperimentKind::semigroup_check;
        cfg.model = ModelParams{1.0, 1e-3, 1e-3, -0.05};
        cfg.scheme.nu = 7;
        cfg.data_name = "random_bv";
        cfg.data_params = {{"tv", 0.4}, {"pieces", 8.0}};
        cfg.seed = 3;
        cfg.x_sweep = {1.0};
        cfg.samples = 8;
    } else {
        throw config_error("unknown preset '" + name + "'");
    }
    return cfg;
}

std::vector<std::string> preset_names() {
    return {"optimal_rate",      "global_rate",       "riemann_single",
            "front_tracking_run", "asymptotic_checks", "semigroup_check"};
}

namespace {

std::string render_list(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += fmt(xs[i]);
    }
    return out;
}

}  // namespace

std::string render_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[experiment]\n";
    out << "kind = " << to_string(cfg.experiment) << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "output_dir = " << cfg.output_dir << "\n";
    out << "jobs = " << cfg.jobs << "\n";
    out << "delta = " << fmt(cfg.delta) << "\n";
    out << "samples = " << cfg.samples << "\n";
    out << "h = " << fmt(cfg.h) << "\n";
    out << "nu_ref_offset = " << cfg.nu_ref_offset << "\n";
    out << "\n[model]\n";
    out << "a_inf = " << fmt(cfg.model.a_inf) << "\n";
    out << "epsilon = " << fmt(cfg.model.epsilon) << "\n";
    out << "tau2 = " << fmt(cfg.model.tau2) << "\n";
    out << "b0 = " << fmt(cfg.model.b0) << "\n";
    out << "\n[domain]\n";
    out << "rho_lo = " << fmt(cfg.bounds.rho_lo) << "\n";
    out << "rho_hi = " << fmt(cfg.bounds.rho_hi) << "\n";
    out << "v_max = " << fmt(cfg.bounds.v_max) << "\n";
    out << "\n[scheme]\n";
    out << "nu = " << cfg.scheme.nu << "\n";
    out << "fan_kappa = " << fmt(cfg.scheme.fan_kappa) << "\n";
    out << "varrho = " << fmt(cfg.scheme.varrho) << "\n";
    out << "lambda_hat = " << fmt(cfg.scheme.lambda_hat) << "\n";
    out << "speed_perturb = " << fmt(cfg.scheme.speed_perturb) << "\n";
    out << "max_fronts = " << cfg.scheme.max_fronts << "\n";
    out << "max_events = " << cfg.scheme.max_events << "\n";
    out << "\n[initial_data]\n";
    out << "name = " << cfg.data_name << "\n";
    for (const auto& [key, value] : cfg.data_params)
        out << key << " = " << fmt(value) << "\n";
    out << "\n[sweep]\n";
    if (!cfg.eps_sweep.empty()) out << "eps = " << render_list(cfg.eps_sweep) << "\n";
    if (!cfg.tau2_sweep.empty()) out << "tau2 = " << render_list(cfg.tau2_sweep) << "\n";
    if (!cfg.mu_sweep.empty()) out << "mu = " << render_list(cfg.mu_sweep) << "\n";
    if (!cfg.x_sweep.empty()) out << "x = " << render_list(cfg.x_sweep) << "\n";
    if (!cfg.nu_sweep.empty()) {
        out << "nu = ";
        for (std::size_t i = 0; i < cfg.nu_sweep.size(); ++i)
            out << (i ? "," : "") << cfg.nu_sweep[i];
        out << "\n";
    }
    return out.str();
}

}  // namespace wedge
