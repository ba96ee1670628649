#include "repsc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "repsc/errors.hpp"

namespace repsc {

namespace {

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

SectionMap tokenize(const std::string& text, std::vector<std::string>& errors) {
    SectionMap out;
    std::string section = "";
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back("line " + std::to_string(lineno) + ": unterminated section");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            out[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        out[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

class Reader {
public:
    Reader(const SectionMap& m, std::vector<std::string>& errors) : m_(m), errors_(&errors) {}

    std::optional<std::string> raw(const std::string& sec, const std::string& key) const {
        auto s = m_.find(sec);
        if (s == m_.end()) return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        return k->second;
    }

    double number(const std::string& sec, const std::string& key, double dflt) const {
        auto v = raw(sec, key);
        if (!v) return dflt;
        try {
            std::size_t pos = 0;
            double d = std::stod(*v, &pos);
            if (pos != v->size()) throw std::invalid_argument("trailing characters");
            return d;
        } catch (const std::exception&) {
            errors_->push_back("[" + sec + "] " + key + ": not a number: '" + *v + "'");
            return dflt;
        }
    }

    int integer(const std::string& sec, const std::string& key, int dflt) const {
        double d = number(sec, key, dflt);
        if (d != std::floor(d)) {
            errors_->push_back("[" + sec + "] " + key + ": expected an integer");
            return dflt;
        }
        return static_cast<int>(d);
    }

    bool boolean(const std::string& sec, const std::string& key, bool dflt) const {
        auto v = raw(sec, key);
        if (!v) return dflt;
        if (*v == "true" || *v == "1" || *v == "yes") return true;
        if (*v == "false" || *v == "0" || *v == "no") return false;
        errors_->push_back("[" + sec + "] " + key + ": expected a boolean");
        return dflt;
    }

    std::vector<double> list(const std::string& sec, const std::string& key,
                             std::vector<double> dflt) const {
        auto v = raw(sec, key);
        if (!v) return dflt;
        std::vector<double> out;
        std::istringstream is(*v);
        std::string item;
        while (std::getline(is, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            try {
                out.push_back(std::stod(item));
            } catch (const std::exception&) {
                errors_->push_back("[" + sec + "] " + key + ": bad list entry '" + item + "'");
            }
        }
        return out;
    }

    std::string word(const std::string& sec, const std::string& key,
                     const std::string& dflt) const {
        auto v = raw(sec, key);
        return v ? *v : dflt;
    }

    bool has_section(const std::string& sec) const { return m_.count(sec) > 0; }

private:
    const SectionMap& m_;
    std::vector<std::string>* errors_;
};

PacketSpec read_packet(const Reader& r, const std::string& sec, int dim,
                       std::vector<std::string>& errors, const PacketSpec& dflt) {
    PacketSpec p = dflt;
    std::string kind = r.word(sec, "kind", dflt.kind == PacketKind::gaussian_bump
                                               ? "gaussian" : "compact");
    if (kind == "gaussian") p.kind = PacketKind::gaussian_bump;
    else if (kind == "compact") p.kind = PacketKind::compact_bump;
    else errors.push_back("[" + sec + "] kind: unknown packet kind '" + kind + "'");
    p.center = r.list(sec, "center", dflt.center);
    p.width = r.number(sec, "width", dflt.width);
    p.bump_sharpness = r.number(sec, "bump_sharpness", dflt.bump_sharpness);
    p.support_factor = r.number(sec, "support_factor", dflt.support_factor);
    if (p.center.empty()) p.center.assign(dim, 0.0);
    if (static_cast<int>(p.center.size()) != dim)
        errors.push_back("[" + sec + "] center: expected " + std::to_string(dim) +
                         " components");
    p.velocity.assign(dim, 0.0);
    if (!(p.width > 0.0)) errors.push_back("[" + sec + "] width must be positive");
    return p;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    std::vector<std::string> errors;
    SectionMap sections = tokenize(text, errors);
    Reader r(sections, errors);
    RunConfig cfg;

    // grid
    cfg.grid.dim = r.integer("grid", "dim", 1);
    cfg.grid.points = r.integer("grid", "points", 1024);
    cfg.grid.half_width = r.number("grid", "half_width", 20.0);
    cfg.grid.scale = 1.0;
    if (cfg.grid.dim != 1 && cfg.grid.dim != 2)
        errors.push_back("[grid] dim must be 1 or 2");
    else {
        if (cfg.grid.points < 8 || !is_power_of_two(cfg.grid.points))
            errors.push_back("[grid] points must be a power of two >= 8");
        if (!(cfg.grid.half_width > 0.0)) errors.push_back("[grid] half_width must be positive");
    }

    // potential
    std::string reg = r.word("potential", "regular", "none");
    if (reg == "power") cfg.potential.regular.kind = RegularKind::power_decay;
    else if (reg == "gaussian") cfg.potential.regular.kind = RegularKind::gaussian;
    else if (reg == "none") cfg.potential.regular.kind = RegularKind::none;
    else errors.push_back("[potential] regular: unknown kind '" + reg + "'");
    cfg.potential.regular.strength = r.number("potential", "regular_strength", 0.5);
    cfg.potential.regular.decay = r.number("potential", "regular_decay", 1.0);
    cfg.potential.regular.sigma = r.number("potential", "regular_sigma", 1.5);
    if (cfg.potential.regular.kind == RegularKind::power_decay &&
        !(cfg.potential.regular.decay > 0.0))
        errors.push_back("[potential] regular_decay must be positive");
    if (cfg.potential.regular.kind == RegularKind::gaussian &&
        !(cfg.potential.regular.sigma > 0.0))
        errors.push_back("[potential] regular_sigma must be positive");

    std::string sing = r.word("potential", "singular", "none");
    if (sing == "coulomb") cfg.potential.singular.kind = SingularKind::coulomb_like;
    else if (sing == "bump") cfg.potential.singular.kind = SingularKind::cutoff_bump;
    else if (sing == "none") cfg.potential.singular.kind = SingularKind::none;
    else errors.push_back("[potential] singular: unknown kind '" + sing + "'");
    cfg.potential.singular.strength = r.number("potential", "singular_strength", 0.5);
    cfg.potential.singular.exponent = r.number("potential", "singular_exponent", 0.25);
    cfg.potential.singular.support_radius = r.number("potential", "singular_radius", 1.0);
    if (cfg.potential.singular.kind != SingularKind::none &&
        !(cfg.potential.singular.support_radius > 0.0))
        errors.push_back("[potential] singular_radius must be positive");
    if (cfg.potential.singular.kind == SingularKind::coulomb_like &&
        !(cfg.potential.singular.exponent > 0.0))
        errors.push_back("[potential] singular_exponent must be positive (L^q membership)");
    cfg.potential.mollify_radius = r.number("potential", "mollify_radius", 0.0);

    // packets
    PacketSpec dflt;
    dflt.center.assign(std::max(1, cfg.grid.dim), 0.0);
    cfg.packet_phi = read_packet(r, "packet", cfg.grid.dim, errors, dflt);
    cfg.packet_psi = r.has_section("packet_psi")
                         ? read_packet(r, "packet_psi", cfg.grid.dim, errors, cfg.packet_phi)
                         : cfg.packet_phi;

    // dynamics
    cfg.dynamics.dt = r.number("dynamics", "dt", 0.01);
    cfg.dynamics.horizon = r.number("dynamics", "horizon", 0.5);
    cfg.dynamics.max_scale = r.number("dynamics", "max_scale", 250.0);
    cfg.dynamics.aliasing_budget = r.number("dynamics", "aliasing_budget", 1e-10);
    if (!(cfg.dynamics.dt > 0.0)) errors.push_back("[dynamics] dt must be positive");
    if (!(std::abs(cfg.dynamics.horizon) >= cfg.dynamics.dt))
        errors.push_back("[dynamics] |horizon| must be at least dt");
    if (std::cosh(2.0 * cfg.dynamics.horizon) > cfg.dynamics.max_scale)
        errors.push_back("[dynamics] horizon violates max_scale: cosh(2T) > max_scale");

    // scatter
    cfg.scatter.t_max = r.number("scatter", "t_max", 3.0);
    cfg.scatter.cook_tol = r.number("scatter", "cook_tol", 1e-6);
    cfg.scatter.dt = r.number("scatter", "dt", 0.01);
    cfg.scatter.cauchy_back = r.number("scatter", "cauchy_back", 0.5);
    if (!(cfg.scatter.t_max > 0.0)) errors.push_back("[scatter] t_max must be positive");
    if (!(cfg.scatter.cook_tol > 0.0)) errors.push_back("[scatter] cook_tol must be positive");
    if (!(cfg.scatter.dt > 0.0)) errors.push_back("[scatter] dt must be positive");

    // sweep
    cfg.sweep.v_mags = r.list("sweep", "v_mags", {5.0, 10.0, 20.0, 40.0});
    cfg.sweep.vhat = r.list("sweep", "vhat", std::vector<double>(cfg.grid.dim, 0.0));
    if (cfg.sweep.vhat == std::vector<double>(cfg.grid.dim, 0.0)) {
        cfg.sweep.vhat.assign(cfg.grid.dim, 0.0);
        cfg.sweep.vhat[0] = 1.0;
    }
    cfg.sweep.axis = r.integer("sweep", "axis", 0);
    cfg.sweep.tolerance = r.number("sweep", "tolerance", 0.05);
    cfg.sweep.phi0 = cfg.packet_phi;
    cfg.sweep.psi0 = cfg.packet_psi;
    cfg.sweep.scatter = cfg.scatter;
    if (static_cast<int>(cfg.sweep.vhat.size()) != cfg.grid.dim)
        errors.push_back("[sweep] vhat: expected " + std::to_string(cfg.grid.dim) +
                         " components");
    else {
        double n2 = 0.0;
        for (double c : cfg.sweep.vhat) n2 += c * c;
        if (std::abs(n2 - 1.0) > 1e-9)
            errors.push_back("[sweep] vhat must be a unit vector");
    }
    if (cfg.sweep.axis < 0 || cfg.sweep.axis >= cfg.grid.dim)
        errors.push_back("[sweep] axis out of range");
    if (cfg.grid.dim >= 1 && cfg.grid.points >= 8 && is_power_of_two(cfg.grid.points) &&
        cfg.grid.half_width > 0.0) {
        const double vmax_ok = 0.8 * cfg.grid.momentum_cutoff();
        for (std::size_t i = 0; i < cfg.sweep.v_mags.size(); ++i)
            if (cfg.sweep.v_mags[i] > vmax_ok)
                errors.push_back("[sweep] v_mags entry " + std::to_string(i) + " (" +
                                 std::to_string(cfg.sweep.v_mags[i]) +
                                 ") exceeds 0.8 x momentum cutoff " + std::to_string(vmax_ok));
    }

    // mehler-check
    cfg.mehler.times = r.list("mehler", "times", cfg.mehler.times);
    cfg.mehler.random_states = r.integer("mehler", "random_states", cfg.mehler.random_states);
    cfg.mehler.agreement_tol = r.number("mehler", "agreement_tol", cfg.mehler.agreement_tol);
    cfg.mehler.unitarity_tol = r.number("mehler", "unitarity_tol", cfg.mehler.unitarity_tol);
    cfg.mehler.heisenberg_tol = r.number("mehler", "heisenberg_tol", cfg.mehler.heisenberg_tol);
    cfg.mehler.scaling_tol = r.number("mehler", "scaling_tol", cfg.mehler.scaling_tol);
    cfg.mehler.h2dot_tol = r.number("mehler", "h2dot_tol", cfg.mehler.h2dot_tol);
    cfg.mehler.seed = static_cast<std::uint64_t>(r.number("mehler", "seed", 1234));
    for (double t : cfg.mehler.times)
        if (t == 0.0) errors.push_back("[mehler] times must be nonzero");

    // reconstruct
    std::string mode = r.word("reconstruct", "mode", "synthetic");
    if (mode == "synthetic") cfg.reconstruct.mode = ReconMode::synthetic;
    else if (mode == "scattering") cfg.reconstruct.mode = ReconMode::scattering;
    else errors.push_back("[reconstruct] mode: expected synthetic|scattering");
    cfg.reconstruct.angles = r.integer("reconstruct", "angles", 8);
    cfg.reconstruct.offsets_count = r.integer("reconstruct", "offsets_count", 13);
    cfg.reconstruct.offsets_max = r.number("reconstruct", "offsets_max", 3.0);
    cfg.reconstruct.velocity = r.number("reconstruct", "velocity", 11.0);
    cfg.reconstruct.width = r.number("reconstruct", "width", 1.4);
    cfg.reconstruct.deconvolve = r.boolean("reconstruct", "deconvolve", true);
    cfg.reconstruct.field_points = r.integer("reconstruct", "field_points", 64);
    cfg.reconstruct.field_half_width = r.number("reconstruct", "field_half_width", 4.0);
    cfg.reconstruct.ground_truth =
        r.word("reconstruct", "ground_truth", "potential") != "none";
    cfg.reconstruct.tolerance = r.number("reconstruct", "tolerance", 0.15);
    cfg.reconstruct.synthetic_tolerance =
        r.number("reconstruct", "synthetic_tolerance", 0.05);
    if (cfg.reconstruct.angles < 1) errors.push_back("[reconstruct] angles must be >= 1");
    if (cfg.reconstruct.offsets_count < 2)
        errors.push_back("[reconstruct] offsets_count must be >= 2");

    cfg.output_dir = r.word("output", "directory", "out");
    cfg.seed = static_cast<std::uint64_t>(r.number("output", "seed", 1234));

    // non-fatal: strong coupling degrades the splitting (documented warning)
    double cmax = std::max(std::abs(cfg.potential.regular.strength),
                           std::abs(cfg.potential.singular.strength));
    if (cmax * cfg.scatter.dt > 0.5)
        cfg.warnings.push_back(
            "strong coupling: |c| * dt > 0.5; split-step accuracy degrades, "
            "reduce dt or the strength");

    if (!errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace repsc
