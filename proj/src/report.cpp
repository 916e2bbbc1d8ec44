#include "rotorlin/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "rotorlin/errors.hpp"
#include "rotorlin/reference.hpp"

namespace rotorlin {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

json labels_json(const std::vector<std::string>& v) { return json(v); }

double rel_error(double computed, double published) {
    if (published == 0.0) return std::abs(computed);
    return std::abs(computed - published) / std::abs(published);
}

json matrix_comparison(const Eigen::MatrixXd& computed, const Eigen::MatrixXd& published) {
    json j;
    j["computed"] = matrix_json(computed);
    j["published"] = matrix_json(published);
    json err = json::array();
    for (Eigen::Index i = 0; i < published.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < published.cols(); ++k) {
            const double c = i < computed.rows() && k < computed.cols() ? computed(i, k) : NAN;
            row.push_back(published(i, k) == 0.0 ? json(nullptr) : json(rel_error(c, published(i, k))));
        }
        err.push_back(row);
    }
    j["relative_error"] = err;
    return j;
}

json eigen_comparison(const ModalReport& rep, const std::vector<std::complex<double>>& published) {
    std::vector<bool> used(rep.modes.size(), false);
    json arr = json::array();
    for (const auto& pub : published) {
        std::size_t best = rep.modes.size();
        double bd = HUGE_VAL;
        for (std::size_t i = 0; i < rep.modes.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(rep.modes[i].eigenvalue - pub);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        json e;
        e["published"] = complex_json(pub);
        if (best < rep.modes.size()) {
            used[best] = true;
            const Mode& m = rep.modes[best];
            e["computed"] = complex_json(m.eigenvalue);
            e["damping_ratio"] = m.damping_ratio;
            e["frequency"] = m.frequency;
            e["published_damping_ratio"] = std::abs(pub) > 0 ? -pub.real() / std::abs(pub) : 0.0;
            e["published_frequency"] = std::abs(pub);
            e["relative_error"] = std::abs(m.eigenvalue - pub) / std::abs(pub);
        }
        arr.push_back(e);
    }
    return arr;
}

}  // namespace

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string RunManifest::hash() const {
    json j;
    j["subcommand"] = subcommand;
    j["config_path"] = config_path;
    j["condition"] = condition;
    j["outputs"] = outputs;
    j["tool_version"] = tool_version;
    j["back_solved"] = back_solved;
    j["options"] = options;
    return fnv1a_hex(j.dump());
}

json RunManifest::to_json() const {
    json j;
    j["subcommand"] = subcommand;
    j["config_path"] = config_path;
    j["condition"] = condition;
    j["outputs"] = outputs;
    j["tool_version"] = tool_version;
    j["back_solved"] = back_solved;
    j["options"] = options;
    j["hash"] = hash();
    j["timestamp"] = timestamp;
    return j;
}

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) r.push_back(m(i, k));
        rows.push_back(r);
    }
    return rows;
}

json trim_json(const TrimPoint& t) {
    json j;
    j["condition"] = t.condition.hover() ? "hover" : "forward";
    j["label"] = t.condition.label();
    j["velocity"] = {{"u", t.condition.u}, {"v", t.condition.v}, {"w", t.condition.w}};
    j["main_rotor"] = {
        {"T_MR", t.main_sol.thrust},           {"Q_MR", t.main_sol.torque},
        {"CT_MR", t.main_sol.ct},              {"CQ_MR", t.main_sol.cq},
        {"w_iMR", t.main_sol.induced_velocity}, {"theta0_MR", t.controls.d_coll},
        {"theta0_MR_deg", t.controls.d_coll * kDeg},
        {"lambda0", t.main_sol.lambda0},       {"mu", t.main_sol.mu},
        {"mu_z", t.main_sol.mu_z},             {"inflow_iterations", t.main_sol.iterations},
        {"inflow_residual", t.main_sol.residual},
    };
    j["tail_rotor"] = {
        {"T_TR", t.tail_sol.thrust},            {"Q_TR", t.tail_sol.torque},
        {"CT_TR", t.tail_sol.ct},               {"CQ_TR", t.tail_sol.cq},
        {"v_iTR", t.tail_sol.induced_velocity}, {"theta0_TR", t.controls.d_ped},
        {"theta0_TR_deg", t.controls.d_ped * kDeg},
        {"blockage", t.tail_sol.blockage},      {"inflow_iterations", t.tail_sol.iterations},
        {"inflow_residual", t.tail_sol.residual},
    };
    j["flapping"] = {{"a1s", t.state.a1s}, {"b1s", t.state.b1s},
                     {"a1s_deg", t.state.a1s * kDeg}, {"b1s_deg", t.state.b1s * kDeg}};
    j["controls"] = {{"d_coll", t.controls.d_coll}, {"d_ped", t.controls.d_ped},
                     {"d_lat", t.controls.d_lat},   {"d_long", t.controls.d_long}};
    j["attitude"] = {{"phi", t.state.phi}, {"theta", t.state.theta},
                     {"phi_deg", t.state.phi * kDeg}, {"theta_deg", t.state.theta * kDeg}};
    j["residual_norm"] = t.residual_norm;
    j["residual_history"] = t.residual_history;
    return j;
}

json linear_model_json(const LinearModel& m) {
    json j;
    j["variant"] = m.variant == ModelVariant::Augmented ? "augmented" : "quasi-steady";
    j["condition"] = m.trim.condition.label();
    j["state_labels"] = labels_json(m.state_labels);
    j["state_units"] = labels_json(m.state_units);
    j["input_labels"] = labels_json(m.input_labels);
    j["A"] = matrix_json(m.A);
    j["B"] = matrix_json(m.B);
    json steps = json::array();
    for (const auto& s : m.step_report)
        steps.push_back({{"variable", s.variable}, {"h", s.h}, {"max_rel_change", s.max_rel_change},
                         {"stable", s.stable}});
    j["step_report"] = steps;
    j["A_richardson"] = matrix_json(m.A_richardson);
    j["B_richardson"] = matrix_json(m.B_richardson);
    return j;
}

json decoupled_json(const DecoupledModel& d) {
    auto sub = [](const SubModel& s) {
        return json{{"state_labels", s.state_labels}, {"input_labels", s.input_labels},
                    {"A", matrix_json(s.A)}, {"B", matrix_json(s.B)}};
    };
    return json{{"layout", layout_name(d.layout)},
                {"long_ver", sub(d.long_ver)},
                {"lat_dir", sub(d.lat_dir)},
                {"coupling_norm", d.coupling_norm}};
}

json modal_json(const ModalReport& r) {
    json j;
    j["state_labels"] = r.state_labels;
    j["verdict"] = verdict_name(r.verdict);
    json modes = json::array();
    for (const auto& m : r.modes) {
        json mj;
        mj["eigenvalue"] = complex_json(m.eigenvalue);
        mj["damping_ratio"] = m.damping_ratio;
        mj["frequency"] = m.frequency;
        json ev = json::array(), nv = json::array();
        for (Eigen::Index i = 0; i < m.eigenvector.size(); ++i) {
            ev.push_back(complex_json(m.eigenvector[i]));
            nv.push_back(complex_json(m.normalized_eigenvector[i]));
        }
        mj["eigenvector"] = ev;
        mj["normalized_eigenvector"] = nv;
        json rank = json::array();
        for (const auto& d : m.ranking)
            rank.push_back({{"state", d.label}, {"magnitude", d.magnitude}, {"relative", d.relative}});
        mj["ranking"] = rank;
        mj["dominant"] = m.dominant;
        mj["character"] = m.character;
        modes.push_back(mj);
    }
    j["modes"] = modes;
    return j;
}

json divergence_json(const DivergenceReport& r) {
    json j;
    j["horizon"] = r.horizon;
    json states = json::array();
    for (const auto& s : r.states)
        states.push_back({{"state", s.label},
                          {"rms", s.rms},
                          {"peak", s.peak},
                          {"reference_peak", s.reference_peak},
                          {"t_diverge", s.t_diverge ? json(*s.t_diverge) : json(nullptr)}});
    j["states"] = states;
    return j;
}

std::string matrix_text(const Eigen::MatrixXd& m, const std::vector<std::string>& rows,
                        const std::vector<std::string>& cols, int precision) {
    std::ostringstream out;
    const int w = precision + 9;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-8s", "");
    out << buf;
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
        std::snprintf(buf, sizeof buf, "%*s", w, k < static_cast<Eigen::Index>(cols.size()) ? cols[k].c_str() : "");
        out << buf;
    }
    out << "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::snprintf(buf, sizeof buf, "%-8s", i < static_cast<Eigen::Index>(rows.size()) ? rows[i].c_str() : "");
        out << buf;
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            const double v = std::abs(m(i, k)) < 1e-300 ? 0.0 : m(i, k);
            std::snprintf(buf, sizeof buf, "%*.*f", w, precision, v);
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

std::string modal_table_text(const ModalReport& r) {
    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-28s %14s %14s  %-14s %s\n", "eigenvalue", "damping", "freq (rad/s)",
                  "character", "dominant");
    out << buf;
    for (const auto& m : r.modes) {
        char ev[64];
        if (m.eigenvalue.imag() == 0.0)
            std::snprintf(ev, sizeof ev, "%.4e", m.eigenvalue.real());
        else
            std::snprintf(ev, sizeof ev, "%.4e %c %.4ei", m.eigenvalue.real(),
                          m.eigenvalue.imag() < 0 ? '-' : '+', std::abs(m.eigenvalue.imag()));
        std::string dom;
        for (const auto& d : m.dominant) dom += (dom.empty() ? "" : ",") + d;
        std::snprintf(buf, sizeof buf, "%-28s %14.4e %14.4e  %-14s %s\n", ev, m.damping_ratio,
                      m.frequency, m.character.empty() ? "-" : m.character.c_str(), dom.c_str());
        out << buf;
    }
    out << "verdict: " << verdict_name(r.verdict) << "\n";
    return out.str();
}

std::string eigenvector_csv(const ModalReport& r, const std::string& manifest_hash) {
    std::ostringstream out;
    if (!manifest_hash.empty()) out << "# manifest " << manifest_hash << "\n";
    out << "mode,re,im,character";
    for (const auto& l : r.state_labels) out << "," << l;
    out << "\n";
    char buf[40];
    for (std::size_t i = 0; i < r.modes.size(); ++i) {
        const Mode& m = r.modes[i];
        out << i;
        std::snprintf(buf, sizeof buf, ",%.10g,%.10g", m.eigenvalue.real(), m.eigenvalue.imag());
        out << buf << "," << m.character;
        for (Eigen::Index k = 0; k < m.normalized_eigenvector.size(); ++k) {
            std::snprintf(buf, sizeof buf, ",%.10g", std::abs(m.normalized_eigenvector[k]));
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

double trim_scalar(const TrimPoint& t, const std::string& key) {
    if (key == "T_MR") return t.main_sol.thrust;
    if (key == "CT_MR") return t.main_sol.ct;
    if (key == "Q_MR") return t.main_sol.torque;
    if (key == "CQ_MR") return t.main_sol.cq;
    if (key == "w_iMR") return t.main_sol.induced_velocity;
    if (key == "theta0_MR") return t.controls.d_coll;
    if (key == "T_TR") return t.tail_sol.thrust;
    if (key == "CT_TR") return t.tail_sol.ct;
    if (key == "Q_TR") return t.tail_sol.torque;
    if (key == "CQ_TR") return t.tail_sol.cq;
    if (key == "v_iTR") return t.tail_sol.induced_velocity;
    if (key == "theta0_TR") return t.controls.d_ped;
    if (key == "a1s") return t.state.a1s;
    if (key == "b1s") return t.state.b1s;
    if (key == "d_long") return t.controls.d_long;
    if (key == "d_lat") return t.controls.d_lat;
    if (key == "theta") return t.state.theta;
    if (key == "phi") return t.state.phi;
    throw LabelError(key);
}

json reproduce_report(const VehicleParams& base) {
    const VehicleParams p = complete_parameters(base, HoverTargets{});
    const TrimPoint hover = trim_hover(p);
    const TrimPoint fwd =
        trim_forward(p, {reference::kForwardU, reference::kForwardV, reference::kForwardW});

    auto trim_table = [](const TrimPoint& t, const std::vector<reference::Scalar>& ref) {
        json arr = json::array();
        for (const auto& s : ref) {
            const double c = trim_scalar(t, s.key);
            arr.push_back({{"key", s.key}, {"unit", s.unit}, {"computed", c}, {"published", s.value},
                           {"relative_error", rel_error(c, s.value)}});
        }
        return arr;
    };

    const LinearModel lh = assemble_linear_model(hover, p, ModelVariant::Augmented);
    const LinearModel lf = assemble_linear_model(fwd, p, ModelVariant::Augmented);
    const DecoupledModel dh = decouple(lh, DecoupleLayout::Bordered);
    const DecoupledModel df_qs = decouple(lf, DecoupleLayout::QuasiStatic);
    const DecoupledModel df_b = decouple(lf, DecoupleLayout::Bordered);

    const ModalReport mh_long = eigen_analysis(dh.long_ver.A, dh.long_ver.state_labels, &p);
    const ModalReport mh_lat = eigen_analysis(dh.lat_dir.A, dh.lat_dir.state_labels, &p);
    const ModalReport mf_long = eigen_analysis(df_qs.long_ver.A, df_qs.long_ver.state_labels, &p);
    const ModalReport mf_lat = eigen_analysis(df_qs.lat_dir.A, df_qs.lat_dir.state_labels, &p);

    json j;
    json params = json::object();
    for (const auto& name : p.back_solved) params[name] = nullptr;
    params["rho"] = p.rho;
    params["eta_w"] = p.eta_w;
    params["mr_lift_slope"] = p.mr_lift_slope;
    params["mr_cd0"] = p.mr_cd0;
    params["tr_gear_ratio"] = p.tr_gear_ratio;
    params["tr_lift_slope"] = p.tr_lift_slope;
    params["tr_cd0"] = p.tr_cd0;
    params["mr_kbeta"] = p.mr_kbeta;
    j["completed_parameters"] = params;
    j["trim"] = {{"hover", trim_table(hover, reference::hover_trim())},
                 {"forward", trim_table(fwd, reference::forward_trim())}};
    j["matrices"] = {
        {"hover_long_A", matrix_comparison(dh.long_ver.A, reference::hover_long_A())},
        {"hover_long_B", matrix_comparison(dh.long_ver.B, reference::hover_long_B())},
        {"hover_lat_A", matrix_comparison(dh.lat_dir.A, reference::hover_lat_A())},
        {"hover_lat_B", matrix_comparison(dh.lat_dir.B, reference::hover_lat_B())},
        {"forward_long_A", matrix_comparison(df_qs.long_ver.A, reference::forward_long_A())},
        {"forward_long_B", matrix_comparison(df_b.long_ver.B, reference::forward_long_B())},
        {"forward_lat_A", matrix_comparison(df_qs.lat_dir.A, reference::forward_lat_A())},
        {"forward_lat_B", matrix_comparison(df_qs.lat_dir.B, reference::forward_lat_B())},
    };
    j["eigenvalues"] = {
        {"hover_long", eigen_comparison(mh_long, reference::hover_long_eigs())},
        {"hover_lat", eigen_comparison(mh_lat, reference::hover_lat_eigs())},
        {"forward_long", eigen_comparison(mf_long, reference::forward_long_eigs())},
        {"forward_lat", eigen_comparison(mf_lat, reference::forward_lat_eigs())},
    };
    j["modes"] = {{"hover_long", modal_json(mh_long)},
                  {"hover_lat", modal_json(mh_lat)},
                  {"forward_long", modal_json(mf_long)},
                  {"forward_lat", modal_json(mf_lat)}};
    return j;
}

}  // namespace rotorlin
