#include "rotorlin/vehicle_params.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "rotorlin/errors.hpp"

namespace rotorlin {

namespace {

using std::numbers::pi;

struct Field {
    const char* name;
    const char* unit;
    std::function<double&(VehicleParams&)> real;
    std::function<int&(VehicleParams&)> count;
    bool optional = false;
};

const std::vector<Field>& fields() {
    static const std::vector<Field> f = {
        {"m", "kg", [](VehicleParams& p) -> double& { return p.m; }, {}},
        {"Ixx", "kg m^2", [](VehicleParams& p) -> double& { return p.Ixx; }, {}},
        {"Iyy", "kg m^2", [](VehicleParams& p) -> double& { return p.Iyy; }, {}},
        {"Izz", "kg m^2", [](VehicleParams& p) -> double& { return p.Izz; }, {}},
        {"mr_radius", "m", [](VehicleParams& p) -> double& { return p.mr_radius; }, {}},
        {"mr_chord", "m", [](VehicleParams& p) -> double& { return p.mr_chord; }, {}},
        {"mr_blades", "count", {}, [](VehicleParams& p) -> int& { return p.mr_blades; }},
        {"mr_omega_nom", "rad/s", [](VehicleParams& p) -> double& { return p.mr_omega_nom; }, {}},
        {"mr_lift_slope", "1/rad", [](VehicleParams& p) -> double& { return p.mr_lift_slope; }, {}},
        {"mr_cd0", "-", [](VehicleParams& p) -> double& { return p.mr_cd0; }, {}},
        {"mr_kbeta", "N m/rad", [](VehicleParams& p) -> double& { return p.mr_kbeta; }, {}},
        {"mr_tau_c", "s", [](VehicleParams& p) -> double& { return p.mr_tau_c; }, {}},
        {"mr_a_dlong", "rad/rad", [](VehicleParams& p) -> double& { return p.mr_a_dlong; }, {}},
        {"mr_b_dlat", "rad/rad", [](VehicleParams& p) -> double& { return p.mr_b_dlat; }, {}},
        {"mr_da1s_dmu", "rad", [](VehicleParams& p) -> double& { return p.mr_da1s_dmu; }, {}},
        {"mr_da1s_dmuz", "rad", [](VehicleParams& p) -> double& { return p.mr_da1s_dmuz; }, {}},
        {"mr_db1s_dmuv", "rad", [](VehicleParams& p) -> double& { return p.mr_db1s_dmuv; }, {}},
        {"tr_radius", "m", [](VehicleParams& p) -> double& { return p.tr_radius; }, {}},
        {"tr_chord", "m", [](VehicleParams& p) -> double& { return p.tr_chord; }, {}},
        {"tr_blades", "count", {}, [](VehicleParams& p) -> int& { return p.tr_blades; }},
        {"tr_gear_ratio", "-", [](VehicleParams& p) -> double& { return p.tr_gear_ratio; }, {}},
        {"tr_lift_slope", "1/rad", [](VehicleParams& p) -> double& { return p.tr_lift_slope; }, {}},
        {"tr_cd0", "-", [](VehicleParams& p) -> double& { return p.tr_cd0; }, {}},
        {"h_mr", "m", [](VehicleParams& p) -> double& { return p.h_mr; }, {}},
        {"l_tr", "m", [](VehicleParams& p) -> double& { return p.l_tr; }, {}},
        {"h_tr", "m", [](VehicleParams& p) -> double& { return p.h_tr; }, {}},
        {"s_vf", "m^2", [](VehicleParams& p) -> double& { return p.s_vf; }, {}},
        {"s_hf", "m^2", [](VehicleParams& p) -> double& { return p.s_hf; }, {}},
        {"s_fus_x", "m^2", [](VehicleParams& p) -> double& { return p.s_fus_x; }, {}},
        {"s_fus_y", "m^2", [](VehicleParams& p) -> double& { return p.s_fus_y; }, {}},
        {"s_fus_z", "m^2", [](VehicleParams& p) -> double& { return p.s_fus_z; }, {}},
        {"rho", "kg/m^3", [](VehicleParams& p) -> double& { return p.rho; }, {}},
        {"g", "m/s^2", [](VehicleParams& p) -> double& { return p.g; }, {}},
        {"eta_w", "-", [](VehicleParams& p) -> double& { return p.eta_w; }, {}},
        {"control_limit", "rad", [](VehicleParams& p) -> double& { return p.control_limit; }, {},
         true},
    };
    return f;
}

std::string trim_ws(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InvalidParameter(key, std::nan(""), "a numeric value");
    }
    if (trim_ws(text.substr(used)).size() != 0) throw InvalidParameter(key, v, "a numeric value");
    return v;
}

void require_positive(const std::string& name, double v) {
    if (!(v > 0) || !std::isfinite(v)) throw InvalidParameter(name, v, "> 0");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double VehicleParams::mr_solidity() const { return mr_blades * mr_chord / (pi * mr_radius); }
double VehicleParams::tr_solidity() const { return tr_blades * tr_chord / (pi * tr_radius); }
double VehicleParams::mr_disc_area() const { return pi * mr_radius * mr_radius; }
double VehicleParams::tr_disc_area() const { return pi * tr_radius * tr_radius; }
double VehicleParams::fin_blockage() const { return 1.0 - 0.75 * s_vf / tr_disc_area(); }
double VehicleParams::wake_ratio_lo() const { return (l_tr - mr_radius - tr_radius) / h_tr; }
double VehicleParams::wake_ratio_hi() const { return (l_tr - mr_radius + tr_radius) / h_tr; }

void validate(const VehicleParams& p) {
    const std::pair<const char*, double> positive[] = {
        {"m", p.m},
        {"Ixx", p.Ixx},
        {"Iyy", p.Iyy},
        {"Izz", p.Izz},
        {"mr_radius", p.mr_radius},
        {"mr_chord", p.mr_chord},
        {"mr_omega_nom", p.mr_omega_nom},
        {"mr_lift_slope", p.mr_lift_slope},
        {"mr_tau_c", p.mr_tau_c},
        {"tr_radius", p.tr_radius},
        {"tr_chord", p.tr_chord},
        {"tr_gear_ratio", p.tr_gear_ratio},
        {"tr_lift_slope", p.tr_lift_slope},
        {"s_vf", p.s_vf},
        {"s_hf", p.s_hf},
        {"s_fus_x", p.s_fus_x},
        {"s_fus_y", p.s_fus_y},
        {"s_fus_z", p.s_fus_z},
        {"rho", p.rho},
        {"g", p.g},
        {"control_limit", p.control_limit},
    };
    for (const auto& [name, v] : positive) require_positive(name, v);
    if (p.mr_blades < 1) throw InvalidParameter("mr_blades", p.mr_blades, ">= 1");
    if (p.tr_blades < 1) throw InvalidParameter("tr_blades", p.tr_blades, ">= 1");
    if (!(p.mr_cd0 >= 0)) throw InvalidParameter("mr_cd0", p.mr_cd0, ">= 0");
    if (!(p.tr_cd0 >= 0)) throw InvalidParameter("tr_cd0", p.tr_cd0, ">= 0");
    if (!(p.mr_kbeta >= 0)) throw InvalidParameter("mr_kbeta", p.mr_kbeta, ">= 0");
    if (!(p.eta_w > 0 && p.eta_w <= 1)) throw InvalidParameter("eta_w", p.eta_w, "0 < eta_w <= 1");
    if (!(p.l_tr > p.mr_radius)) throw InvalidParameter("l_tr", p.l_tr, "> mr_radius");
    if (!(p.h_tr > 0)) throw InvalidParameter("h_tr", p.h_tr, "> 0");
    const double smr = p.mr_solidity();
    if (!(smr > 0 && smr < 0.2)) throw InvalidParameter("mr_solidity", smr, "0 < sigma < 0.2");
    const double str = p.tr_solidity();
    if (!(str > 0 && str < 0.2)) throw InvalidParameter("tr_solidity", str, "0 < sigma < 0.2");
    if (!(p.fin_blockage() > 0)) throw InvalidParameter("s_vf", p.s_vf, "f_t > 0");
}

VehicleParams parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim_ws(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidParameter("line " + std::to_string(lineno), std::nan(""), "key = value");
        kv[trim_ws(line.substr(0, eq))] = trim_ws(line.substr(eq + 1));
    }

    VehicleParams p;
    for (const auto& f : fields()) {
        auto it = kv.find(f.name);
        if (it == kv.end()) {
            if (f.optional) continue;
            throw MissingParameter(f.name);
        }
        const double v = parse_number(f.name, it->second);
        if (f.real) {
            f.real(p) = v;
        } else {
            if (v != std::floor(v)) throw InvalidParameter(f.name, v, "an integer");
            f.count(p) = static_cast<int>(v);
        }
    }
    if (auto it = kv.find("back_solved"); it != kv.end()) {
        std::istringstream names(it->second);
        std::string n;
        while (std::getline(names, n, ',')) {
            n = trim_ws(n);
            if (!n.empty()) p.back_solved.push_back(n);
        }
    }
    validate(p);
    return p;
}

VehicleParams load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Input, "cannot open config '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const VehicleParams& params) {
    VehicleParams p = params;
    std::ostringstream out;
    out << "# rotorlin vehicle configuration (SI units)\n";
    for (const auto& f : fields()) {
        out << f.name << " = ";
        if (f.real)
            out << format_double(f.real(p));
        else
            out << f.count(p);
        out << "  # " << f.unit << "\n";
    }
    if (!p.back_solved.empty()) {
        out << "back_solved = ";
        for (std::size_t i = 0; i < p.back_solved.size(); ++i)
            out << (i ? ", " : "") << p.back_solved[i];
        out << "\n";
    }
    return out.str();
}

VehicleParams xcell60_defaults() {
    VehicleParams p;
    p.m = 8.2;
    p.Ixx = 0.18;
    p.Iyy = 0.34;
    p.Izz = 0.28;
    p.mr_radius = 0.775;
    p.mr_chord = 0.058;
    p.mr_blades = 2;
    p.mr_omega_nom = 167.0;
    p.mr_tau_c = 0.1;
    p.mr_a_dlong = 4.2;
    p.mr_b_dlat = 4.2;
    // published hover velocity sensitivity: d(a1s)/du = 0.000322 s/m
    p.mr_da1s_dmu = 0.000322 * p.mr_tip_speed();
    p.mr_da1s_dmuz = 0.0;
    p.mr_db1s_dmuv = -0.000322 * p.mr_tip_speed();
    p.tr_radius = 0.13;
    p.tr_chord = 0.029;
    p.tr_blades = 2;
    p.h_mr = 0.235;
    p.l_tr = 0.91;
    p.h_tr = 0.08;
    p.s_vf = 0.012;
    p.s_hf = 0.01;
    p.s_fus_x = 0.1;
    p.s_fus_y = 0.22;
    p.s_fus_z = 0.15;
    p.g = 9.80665;
    // placeholders, overwritten by calibration
    p.rho = 1.225;
    p.eta_w = 0.9;
    p.mr_lift_slope = 5.5;
    p.mr_cd0 = 0.024;
    p.mr_kbeta = 54.0;
    p.tr_gear_ratio = 4.66;
    p.tr_lift_slope = 5.0;
    p.tr_cd0 = 0.024;
    return complete_parameters(p, HoverTargets{});
}

VehicleParams complete_parameters(const VehicleParams& base, const HoverTargets& t,
                                  KbetaSource kbeta) {
    VehicleParams p = base;
    p.back_solved.clear();
    auto fail_unless_positive = [](const char* name, double v, const char* why) {
        if (!(v > 0) || !std::isfinite(v)) throw CalibrationFailed(name, why);
    };

    // Thrust definition at hover gives density.
    const double tip = p.mr_tip_speed();
    const double area = p.mr_disc_area();
    p.rho = t.thrust / (tip * tip * area * t.ct);
    fail_unless_positive("rho", p.rho, "thrust and thrust coefficient disagree in sign");

    // Hover momentum inflow: lambda0 = sqrt(C_T / (2 eta_w)).
    const double lam = t.induced_velocity / tip;
    p.eta_w = t.ct / (2.0 * lam * lam);
    fail_unless_positive("eta_w", p.eta_w, "non-positive induced velocity");
    if (p.eta_w > 1.0 + 1e-9) throw CalibrationFailed("eta_w", "efficiency above one");
    p.eta_w = std::min(p.eta_w, 1.0);

    // Thrust coefficient at mu = mu_z = 0: C_T = (a sigma / 2)(theta0/3 - lambda0/2).
    const double sigma = p.mr_solidity();
    p.mr_lift_slope = 2.0 * t.ct / (sigma * (t.collective / 3.0 - lam / 2.0));
    fail_unless_positive("mr_lift_slope", p.mr_lift_slope, "collective below inflow angle");

    // Torque coefficient at hover: C_Q = sigma C_D0 / 8 + lambda0 C_T.
    p.mr_cd0 = 8.0 * (t.cq - lam * t.ct) / sigma;
    if (!(p.mr_cd0 >= 0)) throw CalibrationFailed("mr_cd0", "induced torque exceeds total torque");

    // Tail thrust with fin blockage gives the tail tip speed, hence the gear ratio.
    const double ft = p.fin_blockage();
    const double tr_area = p.tr_disc_area();
    const double tr_tip = std::sqrt(t.tr_thrust / (ft * p.rho * tr_area * t.tr_ct));
    p.tr_gear_ratio = tr_tip / (p.mr_omega_nom * p.tr_radius);
    fail_unless_positive("tr_gear_ratio", p.tr_gear_ratio, "bad tail targets");

    const double tr_lam = std::sqrt(t.tr_ct / (2.0 * p.eta_w));
    const double tr_sigma = p.tr_solidity();
    if (t.tr_collective) {
        p.tr_lift_slope = 2.0 * t.tr_ct / (tr_sigma * (*t.tr_collective / 3.0 - tr_lam / 2.0));
        fail_unless_positive("tr_lift_slope", p.tr_lift_slope, "tail collective below inflow");
    }
    p.tr_cd0 = 8.0 * (t.tr_cq - tr_lam * t.tr_ct) / tr_sigma;
    if (!(p.tr_cd0 >= 0)) throw CalibrationFailed("tr_cd0", "induced torque exceeds total");

    if (kbeta == KbetaSource::LateralTrim) {
        // Roll balance at hover: K_b b1s + T h sin b1s = T_TR h_TR.
        if (t.b1s == 0) throw CalibrationFailed("mr_kbeta", "b1s target is zero");
        p.mr_kbeta = (t.tr_thrust * p.h_tr - t.thrust * p.h_mr * std::sin(t.b1s)) / t.b1s;
    } else {
        if (!t.m_a1s) throw CalibrationFailed("mr_kbeta", "no M_a1s target supplied");
        p.mr_kbeta = p.Iyy * *t.m_a1s - t.thrust * p.h_mr;
    }
    if (!(p.mr_kbeta >= 0)) throw CalibrationFailed("mr_kbeta", "negative hub stiffness");

    p.back_solved = {"rho", "eta_w", "mr_lift_slope", "mr_cd0", "tr_gear_ratio", "tr_cd0",
                     "mr_kbeta"};
    if (t.tr_collective) p.back_solved.insert(p.back_solved.begin() + 5, "tr_lift_slope");
    validate(p);
    return p;
}

}  // namespace rotorlin
