#include "rotorlin/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rotorlin/airframe.hpp"
#include "rotorlin/errors.hpp"
#include "rotorlin/reference.hpp"
#include "rotorlin/report.hpp"

namespace rotorlin {

namespace {

const char* kBuiltin = "<built-in xcell60>";

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Input, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::Input, "cannot write '" + path + "'");
    f << content;
}

std::string out_name(const std::string& path) { return path.empty() ? "-" : path; }

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

struct Common {
    std::string config;
    std::string condition = "hover";
    double u = reference::kForwardU, v = reference::kForwardV, w = reference::kForwardW;
    std::string output;
};

// Owns the per-subcommand options; CLI11 binds to these members.
struct Opts {
    Common c;
    bool complete = false;
    std::string kbeta_source = "lateral-trim";
    std::string var = "d_coll";
    double from = 0, to = 0.2;
    int steps = 21;
    bool augmented = false;
    std::string layout = "auto";
    std::string format;
    std::string json_path, csv_path;
    std::string block = "long";
    std::string model = "nonlinear";
    std::string script;
    std::string variant = "augmented";
    double t_end = 5.0, dt = 1e-3;
    std::string file_a, file_b;
};

struct Context {
    const CliEnv& env;
    std::ostream& out;
    std::ostream& err;
    std::string config_path;
    VehicleParams params;
};

RunManifest make_manifest(const Context& ctx, const std::string& sub, const std::string& condition,
                          std::vector<std::string> outputs, json options) {
    RunManifest m;
    m.subcommand = sub;
    m.config_path = ctx.config_path;
    m.condition = condition;
    m.outputs = std::move(outputs);
    m.back_solved = ctx.params.back_solved;
    m.options = options.is_null() ? json::object() : std::move(options);
    m.timestamp = ctx.env.timestamp ? *ctx.env.timestamp : utc_now();
    return m;
}

json with_manifest(const RunManifest& m, const char* key, json payload) {
    json j;
    j["manifest"] = m.to_json();
    j[key] = std::move(payload);
    return j;
}

FlightCondition condition_of(const Common& c) {
    if (c.condition == "hover") return {};
    if (c.condition == "forward") return {c.u, c.v, c.w};
    throw Error(ErrorKind::Input, "unknown condition '" + c.condition + "' (hover|forward)");
}

TrimPoint trim_for(const Context& ctx, const FlightCondition& fc) {
    return fc.hover() ? trim_hover(ctx.params) : trim_forward(ctx.params, fc);
}

json condition_options(const Common& c) {
    json j{{"condition", c.condition}};
    if (c.condition == "forward") {
        j["u"] = c.u;
        j["v"] = c.v;
        j["w"] = c.w;
    }
    return j;
}

DecoupleLayout layout_for(const std::string& name, const FlightCondition& fc) {
    if (name == "auto") return fc.hover() ? DecoupleLayout::Bordered : DecoupleLayout::QuasiStatic;
    return parse_layout(name);
}

ModelVariant parse_variant(const std::string& s) {
    if (s == "augmented") return ModelVariant::Augmented;
    if (s == "quasi-steady") return ModelVariant::QuasiSteady;
    throw Error(ErrorKind::Input, "unknown variant '" + s + "' (augmented|quasi-steady)");
}

int run_params(Context& ctx, const Opts& o) {
    VehicleParams p = ctx.params;
    if (o.complete) {
        KbetaSource src;
        if (o.kbeta_source == "lateral-trim")
            src = KbetaSource::LateralTrim;
        else if (o.kbeta_source == "pitch-flap")
            src = KbetaSource::PitchFlapEntry;
        else
            throw Error(ErrorKind::Input, "unknown --kbeta-source '" + o.kbeta_source + "'");
        p = complete_parameters(p, HoverTargets{}, src);
        ctx.params = p;
    }
    const RunManifest m = make_manifest(ctx, "params", "", {out_name(o.c.output)},
                                        {{"complete", o.complete}, {"kbeta_source", o.kbeta_source}});
    emit("# manifest " + m.hash() + "\n" + serialize_config(p), o.c.output, ctx.out);
    return kExitOk;
}

int run_trim(Context& ctx, const Opts& o) {
    const TrimPoint t = trim_for(ctx, condition_of(o.c));
    const RunManifest m =
        make_manifest(ctx, "trim", o.c.condition, {out_name(o.c.output)}, condition_options(o.c));
    emit(json_text(with_manifest(m, "trim", trim_json(t))), o.c.output, ctx.out);
    return kExitOk;
}

struct SweepRow {
    double x, T, Q, CT, CQ, wi, a1s, b1s;
};

int run_sweep(Context& ctx, const Opts& o) {
    if (o.steps < 1) throw Error(ErrorKind::Input, "--steps must be >= 1");
    const TrimPoint t = trim_for(ctx, condition_of(o.c));
    int si = -1, ii = -1;
    try {
        ii = input_index(o.var);
    } catch (const LabelError&) {
        si = state_index(o.var);
    }
    const Eigen::VectorXd xs = to_vector(t.state, ModelVariant::QuasiSteady);
    const Eigen::Vector4d us = to_vector(t.controls);

    auto point = [&](int k) {
        const double x =
            o.steps == 1 ? o.from : o.from + (o.to - o.from) * k / static_cast<double>(o.steps - 1);
        Eigen::VectorXd xv = xs;
        Eigen::Vector4d uv = us;
        if (ii >= 0)
            uv[ii] = x;
        else
            xv[si] = x;
        const ForceBreakdown fb =
            evaluate_forces(from_vector(xv), controls_from_vector(uv), ctx.params);
        return SweepRow{x, fb.main_sol.thrust, fb.main_sol.torque, fb.main_sol.ct,
                        fb.main_sol.cq, fb.main_sol.induced_velocity, fb.flap.a1s, fb.flap.b1s};
    };
    std::vector<std::future<SweepRow>> jobs;
    for (int k = 0; k < o.steps; ++k) jobs.push_back(std::async(std::launch::async, point, k));

    json opts = condition_options(o.c);
    opts["var"] = o.var;
    opts["from"] = o.from;
    opts["to"] = o.to;
    opts["steps"] = o.steps;
    const RunManifest m = make_manifest(ctx, "sweep", o.c.condition, {out_name(o.c.output)}, opts);
    std::ostringstream csv;
    csv << "# manifest " << m.hash() << "\n# swept " << o.var << "\n";
    csv << "swept_var,T,Q,CT,CQ,w_i,a1s,b1s\n";
    char buf[256];
    for (auto& j : jobs) {
        const SweepRow r = j.get();
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", r.x, r.T,
                      r.Q, r.CT, r.CQ, r.wi, r.a1s, r.b1s);
        csv << buf;
    }
    emit(csv.str(), o.c.output, ctx.out);
    return kExitOk;
}

std::string sub_text(const char* title, const SubModel& s) {
    return std::string(title) + " A\n" + matrix_text(s.A, s.state_labels, s.state_labels) + "\n" +
           title + " B\n" + matrix_text(s.B, s.state_labels, s.input_labels) + "\n";
}

int run_linearize(Context& ctx, const Opts& o) {
    const FlightCondition fc = condition_of(o.c);
    const TrimPoint t = trim_for(ctx, fc);
    const ModelVariant variant = o.augmented ? ModelVariant::Augmented : ModelVariant::QuasiSteady;
    const LinearModel lm = assemble_linear_model(t, ctx.params, variant);
    std::optional<DecoupledModel> dm;
    // the bordered and augmented layouts need the flapping states
    const DecoupleLayout layout = layout_for(o.layout, fc);
    if (o.augmented || layout == DecoupleLayout::QuasiStatic) dm = decouple(lm, layout);

    const std::string fmt = o.format.empty() ? "text" : o.format;
    if (fmt != "text" && fmt != "json") throw Error(ErrorKind::Input, "--format must be text|json");
    std::vector<std::string> outputs{out_name(o.c.output)};
    if (!o.json_path.empty()) outputs.push_back(o.json_path);
    json opts = condition_options(o.c);
    opts["augmented"] = o.augmented;
    opts["layout"] = dm ? layout_name(dm->layout) : "none";
    opts["format"] = fmt;
    const RunManifest m = make_manifest(ctx, "linearize", o.c.condition, outputs, opts);

    json payload = linear_model_json(lm);
    payload["decoupled"] = dm ? decoupled_json(*dm) : json(nullptr);
    const std::string js = json_text(with_manifest(m, "linear_model", payload));

    std::string text = "# manifest " + m.hash() + "\n# " + t.condition.label() + ", " +
                       (o.augmented ? "augmented" : "quasi-steady") + " model\n\nA\n" +
                       matrix_text(lm.A, lm.state_labels, lm.state_labels) + "\nB\n" +
                       matrix_text(lm.B, lm.state_labels, lm.input_labels) + "\n";
    if (dm) {
        text += "# decoupled, " + layout_name(dm->layout) + " layout\n\n";
        text += sub_text("long-ver", dm->long_ver) + sub_text("lat-dir", dm->lat_dir);
    }
    emit(fmt == "json" ? js : text, o.c.output, ctx.out);
    if (!o.json_path.empty()) emit(js, o.json_path, ctx.out);
    return kExitOk;
}

int run_modes(Context& ctx, const Opts& o) {
    const FlightCondition fc = condition_of(o.c);
    const TrimPoint t = trim_for(ctx, fc);
    Eigen::MatrixXd A;
    std::vector<std::string> labels;
    std::string layout = "none";
    if (o.block == "full") {
        const ModelVariant variant = o.augmented ? ModelVariant::Augmented : ModelVariant::QuasiSteady;
        const LinearModel lm = assemble_linear_model(t, ctx.params, variant);
        A = lm.A;
        labels = lm.state_labels;
    } else if (o.block == "long" || o.block == "lat") {
        const LinearModel lm = assemble_linear_model(t, ctx.params, ModelVariant::Augmented);
        const DecoupledModel dm = decouple(lm, layout_for(o.layout, fc));
        const SubModel& s = o.block == "long" ? dm.long_ver : dm.lat_dir;
        A = s.A;
        labels = s.state_labels;
        layout = layout_name(dm.layout);
    } else {
        throw Error(ErrorKind::Input, "--block must be long|lat|full");
    }
    const ModalReport rep = eigen_analysis(A, labels, &ctx.params);

    const std::string fmt = o.format.empty() ? "text" : o.format;
    if (fmt != "text" && fmt != "json") throw Error(ErrorKind::Input, "--format must be text|json");
    std::vector<std::string> outputs{out_name(o.c.output)};
    if (!o.json_path.empty()) outputs.push_back(o.json_path);
    if (!o.csv_path.empty()) outputs.push_back(o.csv_path);
    json opts = condition_options(o.c);
    opts["block"] = o.block;
    opts["layout"] = layout;
    opts["augmented"] = o.augmented;
    opts["format"] = fmt;
    const RunManifest m = make_manifest(ctx, "modes", o.c.condition, outputs, opts);

    json payload = modal_json(rep);
    payload["block"] = o.block;
    payload["layout"] = layout;
    const std::string js = json_text(with_manifest(m, "modal_report", payload));
    const std::string text = "# manifest " + m.hash() + "\n# " + t.condition.label() + ", " +
                             o.block + " block, " + layout + " layout\n" + modal_table_text(rep);
    emit(fmt == "json" ? js : text, o.c.output, ctx.out);
    if (!o.json_path.empty()) emit(js, o.json_path, ctx.out);
    if (!o.csv_path.empty()) emit(eigenvector_csv(rep, m.hash()), o.csv_path, ctx.out);
    return kExitOk;
}

int run_simulate(Context& ctx, const Opts& o) {
    const TrimPoint t = trim_for(ctx, condition_of(o.c));
    const InputScript script = o.script.empty() ? InputScript{} : InputScript::parse(read_file(o.script));
    SimOptions so;
    so.t_end = o.t_end;
    so.dt = o.dt;
    so.variant = parse_variant(o.variant);
    if (!(so.dt > 0) || !(so.t_end > 0)) throw Error(ErrorKind::Input, "--t-end and --dt must be > 0");

    Trajectory tr;
    if (o.model == "nonlinear") {
        tr = integrate(ctx.params, t.state, t.controls, script, so);
    } else if (o.model == "linear") {
        const LinearModel lm = assemble_linear_model(t, ctx.params, so.variant);
        tr = integrate(lm, t.state, script, so);
    } else {
        throw Error(ErrorKind::Input, "--model must be nonlinear|linear");
    }
    json opts = condition_options(o.c);
    opts["model"] = o.model;
    opts["variant"] = o.variant;
    opts["script"] = o.script;
    opts["t_end"] = o.t_end;
    opts["dt"] = o.dt;
    const RunManifest m = make_manifest(ctx, "simulate", o.c.condition, {out_name(o.c.output)}, opts);
    emit(trajectory_csv(tr, m.hash()), o.c.output, ctx.out);
    if (!tr.halt_reason.empty()) {
        ctx.err << "simulation halted: " << tr.halt_reason << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int run_compare(Context& ctx, const Opts& o) {
    const Trajectory a = parse_trajectory_csv(read_file(o.file_a));
    const Trajectory b = parse_trajectory_csv(read_file(o.file_b));
    const DivergenceReport r = compare(a, b);
    const RunManifest m = make_manifest(ctx, "compare", "", {out_name(o.c.output)},
                                        {{"a", o.file_a}, {"b", o.file_b}});
    emit(json_text(with_manifest(m, "divergence", divergence_json(r))), o.c.output, ctx.out);
    return kExitOk;
}

int run_reproduce(Context& ctx, const Opts& o) {
    const json rep = reproduce_report(ctx.params);
    const RunManifest m = make_manifest(ctx, "reproduce", "hover+forward", {out_name(o.c.output)}, {});
    emit(json_text(with_manifest(m, "reproduce", rep)), o.c.output, ctx.out);
    return kExitOk;
}

void add_common(CLI::App* sub, Common& c, bool condition) {
    sub->add_option("-o,--output", c.output, "Output file (default stdout)");
    if (condition) {
        sub->add_option("--condition", c.condition, "hover|forward")
            ->check(CLI::IsMember({"hover", "forward"}));
        sub->add_option("--u", c.u, "Forward trim body velocity u, m/s");
        sub->add_option("--v", c.v, "Forward trim body velocity v, m/s");
        sub->add_option("--w", c.w, "Forward trim body velocity w, m/s");
    }
}

int exit_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Input: return kExitUsage;
        case ErrorKind::Convergence: return kExitConvergence;
        case ErrorKind::Numerical: return kExitNumerical;
    }
    return kExitNumerical;
}

}  // namespace

CliEnv env_from_process() {
    CliEnv e;
    if (const char* c = std::getenv("ROTORLIN_CONFIG"); c && *c) e.config_path = c;
    return e;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const CliEnv& env) {
    CLI::App app{"Helicopter flight-dynamics toolkit: trim, linearization, modes, simulation",
                 "rotorlin"};
    app.require_subcommand(1);
    Opts o;
    std::string config;
    app.add_option("-c,--config", config, "Vehicle config file (default $ROTORLIN_CONFIG, else built-in)");
    app.set_version_flag("--version", kToolVersion);

    auto* params = app.add_subcommand("params", "Print the vehicle configuration");
    add_common(params, o.c, false);
    params->add_flag("--complete", o.complete, "Back-solve the unpublished constants");
    params->add_option("--kbeta-source", o.kbeta_source, "lateral-trim|pitch-flap");

    auto* trim = app.add_subcommand("trim", "Solve a trim point (JSON)");
    add_common(trim, o.c, true);

    auto* sweep = app.add_subcommand("sweep", "Rotor loads vs one state or input at trim (CSV)");
    add_common(sweep, o.c, true);
    sweep->add_option("--var", o.var, "State or input label (u..b1s, d_coll, d_ped, d_lat, d_long)");
    sweep->add_option("--from", o.from, "First value (absolute)");
    sweep->add_option("--to", o.to, "Last value (absolute)");
    sweep->add_option("--steps", o.steps, "Number of points");

    auto* lin = app.add_subcommand("linearize", "Linear model about trim");
    add_common(lin, o.c, true);
    lin->add_flag("--augmented", o.augmented, "Include flapping states (11-state model)");
    lin->add_option("--layout", o.layout, "auto|bordered|quasi-static|augmented");
    lin->add_option("--format", o.format, "text|json for the primary output");
    lin->add_option("--json", o.json_path, "Also write JSON to this file");

    auto* modes = app.add_subcommand("modes", "Eigenvalues and mode shapes");
    add_common(modes, o.c, true);
    modes->add_option("--block", o.block, "long|lat|full");
    modes->add_option("--layout", o.layout, "auto|bordered|quasi-static|augmented");
    modes->add_flag("--augmented", o.augmented, "Full block uses the 11-state model");
    modes->add_option("--format", o.format, "text|json for the primary output");
    modes->add_option("--json", o.json_path, "Also write JSON to this file");
    modes->add_option("--csv", o.csv_path, "Write normalized eigenvector magnitudes (CSV)");

    auto* sim = app.add_subcommand("simulate", "Time response from trim (CSV)");
    add_common(sim, o.c, true);
    sim->add_option("--model", o.model, "nonlinear|linear");
    sim->add_option("--script", o.script, "Input script: lines of `t channel value [ramp]`");
    sim->add_option("--variant", o.variant, "augmented|quasi-steady");
    sim->add_option("--t-end", o.t_end, "Final time, s");
    sim->add_option("--dt", o.dt, "Step, s");

    auto* cmp = app.add_subcommand("compare", "Divergence between two trajectories (JSON)");
    add_common(cmp, o.c, false);
    cmp->add_option("a", o.file_a, "Reference trajectory CSV")->required();
    cmp->add_option("b", o.file_b, "Trajectory CSV to compare")->required();

    auto* rep = app.add_subcommand("reproduce", "Full pipeline against the published values (JSON)");
    add_common(rep, o.c, false);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        Context ctx{env, out, err, kBuiltin, {}};
        if (!config.empty())
            ctx.config_path = config;
        else if (env.config_path)
            ctx.config_path = *env.config_path;
        ctx.params = ctx.config_path == kBuiltin ? xcell60_defaults() : load_config(ctx.config_path);

        if (*params) return run_params(ctx, o);
        if (*trim) return run_trim(ctx, o);
        if (*sweep) return run_sweep(ctx, o);
        if (*lin) return run_linearize(ctx, o);
        if (*modes) return run_modes(ctx, o);
        if (*sim) return run_simulate(ctx, o);
        if (*cmp) return run_compare(ctx, o);
        if (*rep) return run_reproduce(ctx, o);
    } catch (const Error& e) {
        err << "rotorlin: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        err << "rotorlin: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}

}  // namespace rotorlin
