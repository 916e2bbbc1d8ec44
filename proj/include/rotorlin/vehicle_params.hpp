#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rotorlin {

/// Physical constants of one vehicle. SI units throughout.
struct VehicleParams {
    double m = 0, Ixx = 0, Iyy = 0, Izz = 0;

    double mr_radius = 0, mr_chord = 0;
    int mr_blades = 0;
    double mr_omega_nom = 0;
    double mr_lift_slope = 0, mr_cd0 = 0;
    double mr_kbeta = 0;
    double mr_tau_c = 0;
    double mr_a_dlong = 0, mr_b_dlat = 0;
    // flapping sensitivities to advance ratio (rad per unit mu)
    double mr_da1s_dmu = 0, mr_da1s_dmuz = 0, mr_db1s_dmuv = 0;

    double tr_radius = 0, tr_chord = 0;
    int tr_blades = 0;
    double tr_gear_ratio = 0, tr_lift_slope = 0, tr_cd0 = 0;

    double h_mr = 0, l_tr = 0, h_tr = 0;
    double s_vf = 0, s_hf = 0;
    double s_fus_x = 0, s_fus_y = 0, s_fus_z = 0;

    double rho = 0, g = 0, eta_w = 0;

    double control_limit = 0.25;  // rad, symmetric actuator bound

    // names of values produced by complete_parameters
    std::vector<std::string> back_solved;

    double mr_solidity() const;
    double tr_solidity() const;
    double mr_tip_speed() const { return mr_omega_nom * mr_radius; }
    double tr_omega() const { return tr_gear_ratio * mr_omega_nom; }
    double tr_tip_speed() const { return tr_omega() * tr_radius; }
    double mr_disc_area() const;
    double tr_disc_area() const;
    double fin_blockage() const;  // f_t
    double wake_ratio_lo() const;  // g_i
    double wake_ratio_hi() const;  // g_f

    bool operator==(const VehicleParams&) const = default;
};

/// Throws MissingParameter or InvalidParameter.
VehicleParams parse_config(const std::string& text);
VehicleParams load_config(const std::string& path);
std::string serialize_config(const VehicleParams& p);
void validate(const VehicleParams& p);

/// X-Cell 60 geometry with the completed aerodynamic set.
VehicleParams xcell60_defaults();

/// Published hover trim numbers used to back-solve the unpublished constants.
struct HoverTargets {
    double thrust = 81.616;
    double ct = 0.002256;
    double cq = 0.0002228;
    double induced_velocity = 4.582;
    double collective = 0.104737;  // 6.001 deg
    double tr_thrust = 6.8656;
    double tr_ct = 0.01329;
    double tr_cq = 0.001568;
    std::optional<double> tr_collective = 0.2412;
    double b1s = 0.0074866;
    std::optional<double> m_a1s = 102.4125;
};

enum class KbetaSource {
    LateralTrim,     // roll balance at the hover b1s target
    PitchFlapEntry,  // (q, a1s) entry of the published hover matrix
};

VehicleParams complete_parameters(const VehicleParams& base, const HoverTargets& targets,
                                  KbetaSource kbeta = KbetaSource::LateralTrim);

}  // namespace rotorlin
