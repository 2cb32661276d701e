#include "tpr/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tpr/errors.hpp"

namespace tpr {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> exact_sample_points(const ExactSolution& sol, int count) {
    if (count < 2) fail(ErrorKind::config, "sample count must be at least 2");
    double lo = sol.contact_speed, hi = sol.contact_speed;
    for (const auto& e : sol.elements) {
        lo = std::min(lo, e.xi_lo);
        hi = std::max(hi, e.xi_hi);
    }
    double margin = 0.25 * (hi - lo);
    if (margin <= 0.0) margin = std::max(1.0, std::abs(hi));
    lo -= margin;
    hi += margin;
    std::vector<double> xi(count);
    for (int i = 0; i < count; ++i) xi[i] = lo + (hi - lo) * i / (count - 1);
    return xi;
}

namespace {

void write_row(std::ostream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) os << ',';
        os << format_number(v);
        first = false;
    }
    os << '\n';
}

}  // namespace

void write_exact_csv(std::ostream& os, const ExactSolution& sol, const std::vector<double>& xi) {
    os << "xi,alpha1,rho1,rho2,u1,u2,rho,u,w,p,p_bar\n";
    for (double s : xi) {
        const Primitive W = sample_solution(sol, s);
        const Mixture m = mixture(W, sol.eos);
        write_row(os, {s, W.alpha1, W.rho1, W.rho2, W.u1, W.u2, m.rho, m.u, m.w, m.p, m.p_bar});
    }
}

void write_snapshot_csv(std::ostream& os, const SimulationResult& r, const EosPair& eos) {
    os << "x,alpha1,rho1,rho2,u1,u2,rho,u,w,p\n";
    for (int i = 0; i < static_cast<int>(r.cells.size()); ++i) {
        const Primitive& W = r.cells[i];
        const Mixture m = mixture(W, eos);
        write_row(os, {r.grid.center(i), W.alpha1, W.rho1, W.rho2, W.u1, W.u2, m.rho, m.u, m.w, m.p});
    }
}

void write_eigen_csv(std::ostream& os, const ExactSolution& sol, const std::vector<double>& xi) {
    os << "xi,lambda_1m,lambda_2m,lambda_C,lambda_1p,lambda_2p\n";
    for (double s : xi) {
        const Primitive W = sample_solution(sol, s);
        write_row(os, {s, eigenvalue(W, Family::one_minus, sol.eos),
                       eigenvalue(W, Family::two_minus, sol.eos),
                       eigenvalue(W, Family::contact, sol.eos),
                       eigenvalue(W, Family::one_plus, sol.eos),
                       eigenvalue(W, Family::two_plus, sol.eos)});
    }
}

namespace {

nlohmann::json vec_json(const Vec5& v) { return nlohmann::json::array({v[0], v[1], v[2], v[3], v[4]}); }

nlohmann::json state_json(const Primitive& W) {
    return {{"alpha1", W.alpha1}, {"rho1", W.rho1}, {"rho2", W.rho2}, {"u1", W.u1}, {"u2", W.u2}};
}

}  // namespace

nlohmann::json ledger_json(const SimulationResult& r) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : r.ledger) {
        out.push_back({{"time", e.time},
                       {"totals", vec_json(e.totals)},
                       {"boundary_flux_integrals", vec_json(e.boundary_flux_integrals)},
                       {"source_integrals", vec_json(e.source_integrals)}});
    }
    return out;
}

nlohmann::json wave_summary_json(const ExactSolution& sol) {
    nlohmann::json waves = nlohmann::json::array();
    for (const auto& e : sol.elements) {
        nlohmann::json w = {{"kind", to_string(e.kind)},
                            {"family", to_string(e.family)},
                            {"xi_lo", e.xi_lo},
                            {"xi_hi", e.xi_hi},
                            {"label", e.label()},
                            {"left", state_json(e.left)},
                            {"right", state_json(e.right)}};
        if (e.interior) w["host"] = to_string(e.host);
        waves.push_back(w);
    }
    return {{"contact_speed", sol.contact_speed},
            {"alpha1_left", sol.alpha1_left},
            {"alpha1_right", sol.alpha1_right},
            {"waves", waves}};
}

std::string wave_summary_text(const ExactSolution& sol) {
    std::ostringstream os;
    for (const auto& e : sol.elements) {
        os << e.label() << "  ";
        if (e.is_discontinuity())
            os << "xi = " << format_number(e.xi_lo);
        else
            os << "xi in [" << format_number(e.xi_lo) << ", " << format_number(e.xi_hi) << "]";
        os << '\n';
    }
    return os.str();
}

nlohmann::json validation_json(const ValidationReport& report) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& c : report.items)
        items.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"detail", c.detail}});
    return {{"ok", report.ok()}, {"checks", items}, {"overlaps", report.overlaps}};
}

nlohmann::json kapila_json(const KapilaDiagnostics& d) {
    return {{"pressure_max", d.pressure_max},
            {"pressure_l1", d.pressure_l1},
            {"slip_max", d.slip_max},
            {"slip_l1", d.slip_l1},
            {"velocity_equilibrium", d.velocity_equilibrium},
            {"pressure_equilibrium", d.pressure_equilibrium},
            {"kapila", d.kapila()}};
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "off") return relaxation_off;
    try {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        fail(ErrorKind::config, "key '" + key + "': '" + text + "' is not a number");
    }
}

class Keys {
public:
    explicit Keys(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    bool has(const std::string& k) const { return kv_.count(k) > 0; }
    std::string text(const std::string& k) const {
        auto it = kv_.find(k);
        if (it == kv_.end()) fail(ErrorKind::config, "problem file is missing '" + k + "'");
        used_.push_back(k);
        return it->second;
    }
    std::string text(const std::string& k, const std::string& fallback) const {
        return has(k) ? text(k) : fallback;
    }
    double number(const std::string& k) const { return to_double(k, text(k)); }
    double number(const std::string& k, double fallback) const {
        return has(k) ? number(k) : fallback;
    }
    void reject_unknown() const {
        for (const auto& [k, v] : kv_)
            if (std::find(used_.begin(), used_.end(), k) == used_.end())
                fail(ErrorKind::config, "unknown problem key '" + k + "'");
    }

private:
    std::map<std::string, std::string> kv_;
    mutable std::vector<std::string> used_;
};

Eos read_eos(const Keys& keys, const std::string& prefix) {
    Eos e;
    e.A = keys.number(prefix + ".A", e.A);
    e.gamma = keys.number(prefix + ".gamma", e.gamma);
    e.rho_ref = keys.number(prefix + ".rho_ref", e.rho_ref);
    e.B = keys.number(prefix + ".B", e.B);
    e.mode = parse_regime(keys.text(prefix + ".mode", "isentropic"));
    e.validate();
    return e;
}

Primitive read_state(const Keys& keys, const std::string& prefix) {
    Primitive W{keys.number(prefix + ".alpha1"), keys.number(prefix + ".rho1"),
                keys.number(prefix + ".rho2"), keys.number(prefix + ".u1"),
                keys.number(prefix + ".u2")};
    require_valid(W, prefix.c_str());
    return W;
}

// "kind family speed [interior_family interior_speed]" separated by ';'
std::vector<WaveSpec> read_waves(const std::string& key, const std::string& text) {
    std::vector<WaveSpec> out;
    std::stringstream list(text);
    std::string item;
    while (std::getline(list, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        std::istringstream words(item);
        std::vector<std::string> w;
        for (std::string t; words >> t;) w.push_back(t);
        if (w.size() < 3) fail(ErrorKind::config, key + ": wave '" + item + "' needs kind, family and speed");
        const WaveKind kind = parse_wave_kind(w[0]);
        const Family fam = parse_family(w[1]);
        const double speed = to_double(key, w[2]);
        if (kind == WaveKind::shock_in_rarefaction) {
            if (w.size() != 5)
                fail(ErrorKind::config, key + ": shock_in_rarefaction needs host, edge, family and speed");
            out.push_back(WaveSpec::shock_in_rarefaction(fam, speed, parse_family(w[3]),
                                                         to_double(key, w[4])));
        } else {
            if (w.size() != 3) fail(ErrorKind::config, key + ": too many fields in '" + item + "'");
            out.push_back(kind == WaveKind::shock ? WaveSpec::shock(fam, speed)
                                                  : WaveSpec::rarefaction(fam, speed));
        }
    }
    return out;
}

std::string waves_text(const std::vector<WaveSpec>& waves) {
    std::string s;
    for (const auto& w : waves) {
        if (!s.empty()) s += "; ";
        s += std::string(to_string(w.kind)) + " " + to_string(w.family) + " " + format_number(w.speed);
        if (w.kind == WaveKind::shock_in_rarefaction)
            s += std::string(" ") + to_string(w.interior_family) + " " + format_number(w.interior_speed);
    }
    return s;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::config, "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail(ErrorKind::config, "line " + std::to_string(lineno) + ": empty key");
        if (kv.count(key)) fail(ErrorKind::config, "duplicate key '" + key + "'");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

Preset parse_problem(std::istream& is) {
    const Keys keys(parse_key_values(is));
    Preset p;
    p.name = keys.text("name", "custom");
    p.description = keys.text("description", "");
    p.eos.phase1 = read_eos(keys, "phase1");
    p.eos.phase2 = read_eos(keys, "phase2");
    p.eos_note = keys.text("eos_note", "EOS from problem file");
    p.x_min = keys.number("grid.x_min", p.x_min);
    p.x_max = keys.number("grid.x_max", p.x_max);
    p.x0 = keys.number("grid.x0", 0.5 * (p.x_min + p.x_max));
    p.t_end = keys.number("grid.t_end", p.t_end);
    p.cfl = keys.number("grid.cfl", p.cfl);
    p.paper_cells = static_cast<int>(keys.number("grid.cells", 2000));
    p.paper_scheme = parse_scheme(keys.text("grid.scheme", "muscl-rusanov"));
    if (!(p.x_min < p.x0 && p.x0 < p.x_max)) fail(ErrorKind::config, "grid.x0 must lie inside the domain");
    if (!(p.t_end > 0.0)) fail(ErrorKind::config, "grid.t_end must be positive");

    const bool has_waves = keys.has("waves.left") || keys.has("waves.right");
    if (has_waves) {
        p.left_waves = read_waves("waves.left", keys.text("waves.left", ""));
        p.right_waves = read_waves("waves.right", keys.text("waves.right", ""));
        const std::string fit = keys.text("waves.fit", "false");
        if (fit != "true" && fit != "false") fail(ErrorKind::config, "waves.fit must be true or false");
        p.fitted = fit == "true";
    }
    if (has_waves && !p.fitted) {
        p.contact_left = read_state(keys, "waves.contact");
        p.alpha1_right = keys.number("waves.alpha1_right");
        const ExactSolution sol = exact_solution(p);
        std::tie(p.left, p.right) = initial_data(sol);
        if (keys.has("left.alpha1")) p.left = read_state(keys, "left");
        if (keys.has("right.alpha1")) p.right = read_state(keys, "right");
    } else {
        p.left = read_state(keys, "left");
        p.right = read_state(keys, "right");
        p.alpha1_right = p.right.alpha1;
        p.contact_left = keys.has("waves.contact.alpha1") ? read_state(keys, "waves.contact") : p.left;
    }
    keys.reject_unknown();
    return p;
}

Preset load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::config, "cannot open problem file '" + path + "'");
    return parse_problem(in);
}

Preset resolve_problem(const std::string& name_or_path) {
    if (is_preset(name_or_path)) return preset(name_or_path);
    return load_problem(name_or_path);
}

std::string problem_to_text(const Preset& p) {
    std::ostringstream os;
    auto eos = [&](const char* name, const Eos& e) {
        os << name << ".A = " << format_number(e.A) << '\n'
           << name << ".gamma = " << format_number(e.gamma) << '\n'
           << name << ".rho_ref = " << format_number(e.rho_ref) << '\n'
           << name << ".B = " << format_number(e.B) << '\n'
           << name << ".mode = " << to_string(e.mode) << '\n';
    };
    auto state = [&](const std::string& name, const Primitive& W) {
        os << name << ".alpha1 = " << format_number(W.alpha1) << '\n'
           << name << ".rho1 = " << format_number(W.rho1) << '\n'
           << name << ".rho2 = " << format_number(W.rho2) << '\n'
           << name << ".u1 = " << format_number(W.u1) << '\n'
           << name << ".u2 = " << format_number(W.u2) << '\n';
    };
    os << "name = " << p.name << '\n';
    if (!p.description.empty()) os << "description = " << p.description << '\n';
    eos("phase1", p.eos.phase1);
    eos("phase2", p.eos.phase2);
    state("left", p.left);
    state("right", p.right);
    os << "grid.x_min = " << format_number(p.x_min) << '\n'
       << "grid.x_max = " << format_number(p.x_max) << '\n'
       << "grid.x0 = " << format_number(p.x0) << '\n'
       << "grid.t_end = " << format_number(p.t_end) << '\n'
       << "grid.cfl = " << format_number(p.cfl) << '\n'
       << "grid.cells = " << p.paper_cells << '\n'
       << "grid.scheme = " << to_string(p.paper_scheme) << '\n';
    if (!p.left_waves.empty() || !p.right_waves.empty()) {
        os << "waves.left = " << waves_text(p.left_waves) << '\n'
           << "waves.right = " << waves_text(p.right_waves) << '\n'
           << "waves.fit = " << (p.fitted ? "true" : "false") << '\n';
        state("waves.contact", p.contact_left);
        if (!p.fitted) os << "waves.alpha1_right = " << format_number(p.alpha1_right) << '\n';
    }
    return os.str();
}

std::string plot_script(const std::string& title, const std::vector<std::string>& csv_files,
                        double x0, double t) {
    std::ostringstream os;
    os << "import csv\n"
          "import sys\n"
          "import matplotlib\n"
          "matplotlib.use('Agg')\n"
          "import matplotlib.pyplot as plt\n\n"
          "files = [";
    for (size_t i = 0; i < csv_files.size(); ++i) os << (i ? ", " : "") << "'" << csv_files[i] << "'";
    os << "]\n"
          "x0 = " << format_number(x0) << "\n"
          "t = " << format_number(t) << "\n"
          "columns = ['alpha1', 'rho1', 'rho2', 'u1', 'u2', 'rho', 'u', 'p']\n\n"
          "def load(path):\n"
          "    with open(path) as f:\n"
          "        rows = list(csv.DictReader(f))\n"
          "    return {k: [float(r[k]) for r in rows] for k in rows[0]}\n\n"
          "fig, axes = plt.subplots(2, 4, figsize=(16, 7))\n"
          "for path in files:\n"
          "    data = load(path)\n"
          "    x = data['x'] if 'x' in data else [x0 + t * s for s in data['xi']]\n"
          "    for ax, col in zip(axes.flat, columns):\n"
          "        ax.plot(x, data[col], label=path)\n"
          "        ax.set_title(col)\n"
          "axes.flat[0].legend(fontsize='small')\n"
          "fig.suptitle('"
       << title
       << "')\n"
          "fig.tight_layout()\n"
          "out = sys.argv[1] if len(sys.argv) > 1 else 'plot.png'\n"
          "fig.savefig(out, dpi=120)\n";
    return os.str();
}

}  // namespace tpr
