#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include <mcrit/conformal_time.hpp>
#include <mcrit/energy.hpp>
#include <mcrit/error.hpp>

#include "format.hpp"
#include "svg.hpp"
#include "verify.hpp"

namespace mcrit::cli
{

namespace
{

const char *const synopsis =
    "usage: mcrit <command> [options]\n"
    "  commands: classify bounds check sample sweep convert verify plot\n"
    "  model:    --a A --H H [--lambda L]\n"
    "        or  --class {I,II+,II-,tan,cosh,sinh} [--theta T] --H H [--lambda L]\n"
    "  run 'mcrit --help' for the full option list\n";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] void usage(const std::string &what)
{
    throw UsageError(what);
}

struct Axis {
    CLI::Option *min = nullptr;
    CLI::Option *max = nullptr;
    double lo = 0;
    double hi = 0;
    int steps = 1;
};

struct Options {
    std::string command;
    double a = 0, H = 0, lambda = 0, theta = 0;
    std::string cls;
    double tau_min = 0, tau_max = 0;
    int n = 201;
    std::string format = "json", out_path;
    int threads = 1;
    double tol = default_cutoff;
    Axis theta_axis, H_axis, lambda_axis;
    bool to_cosmological = false, to_conformal = false;
    double tau = 0, t = 0, tau0 = 0;
    std::string suite;
    bool inject_fault = false, with_fluid = false;

    std::map<std::string, CLI::Option *> opt;

    bool given(const std::string &name) const
    {
        return opt.at(name)->count() > 0;
    }
};

// Model parameters

ModelKind kind_from_label(const std::string &s)
{
    static const std::map<std::string, ModelKind> kinds = {
        {"I", ModelKind::ClassI},           {"II+", ModelKind::ClassIIPositive}, {"II-", ModelKind::ClassIINegative},
        {"tan", ModelKind::ExceptionalTan}, {"cosh", ModelKind::ExceptionalCosh}, {"sinh", ModelKind::ExceptionalSinh},
    };
    return kinds.at(s);
}

bool is_general(ModelKind k)
{
    return k == ModelKind::ClassI || k == ModelKind::ClassIIPositive || k == ModelKind::ClassIINegative;
}

void require_finite(double x, const std::string &flag)
{
    if (!std::isfinite(x)) {
        usage(flag + " must be a finite number");
    }
}

CriticalParams resolve_params(const Options &o)
{
    const bool by_a = o.given("--a");
    const bool by_class = o.given("--class") || o.given("--theta");
    if (by_a && by_class) {
        usage("give the model either as --a/--H or as --class/--theta/--H, not both");
    }
    if (!by_a && !by_class) {
        usage("model parameters are required");
    }
    if (!o.given("--H")) {
        usage("--H is required");
    }
    require_finite(o.H, "--H");
    require_finite(o.lambda, "--lambda");
    if (by_a) {
        require_finite(o.a, "--a");
        return {o.a, o.H, o.lambda};
    }
    if (!o.given("--class")) {
        usage("--theta needs --class");
    }
    const ModelKind kind = kind_from_label(o.cls);
    if (!is_general(kind)) {
        if (o.given("--theta")) {
            usage("--theta does not apply to class " + o.cls);
        }
        return exceptional_params(kind, o.H, o.lambda);
    }
    if (!o.given("--theta")) {
        usage("class " + o.cls + " needs --theta");
    }
    require_finite(o.theta, "--theta");
    return params_from_theta(kind, o.theta, o.H, o.lambda);
}

Json model_record(const CriticalParams &p, const ModelClass &c)
{
    Json j;
    j["class"] = std::string(label(c.kind));
    j["theta"] = json_number(c.theta);
    j["H_sign"] = c.h_sign;
    j["a"] = json_number(p.a);
    j["H"] = json_number(p.H);
    j["lambda"] = json_number(p.Lambda);
    return j;
}

Json numbers(const std::vector<double> &xs)
{
    Json j = Json::array();
    for (double x : xs) {
        j.push_back(json_number(x));
    }
    return j;
}

// Output

std::string cell_text(const Json &v)
{
    if (v.is_null()) {
        return "";
    }
    if (v.is_boolean()) {
        return boolean(v.get<bool>());
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<long long>());
    }
    if (v.is_number()) {
        return number(v.get<double>());
    }
    if (v.is_string()) {
        return csv_cell(v.get<std::string>());
    }
    std::string out;
    for (const auto &e : v) {
        out += (out.empty() ? "" : ";") + cell_text(e);
    }
    return out;
}

std::string record_output(const Json &record, const std::string &format)
{
    if (format == "csv") {
        std::vector<std::string> header, row;
        for (const auto &[k, v] : record.items()) {
            header.push_back(k);
            row.push_back(cell_text(v));
        }
        CsvTable t(header);
        t.row(row);
        return t.str();
    }
    return record.dump(2) + "\n";
}

void require_format(const std::string &format, std::initializer_list<const char *> allowed, const std::string &cmd)
{
    for (const char *a : allowed) {
        if (format == a) {
            return;
        }
    }
    usage("--format " + format + " is not available for " + cmd);
}

// Commands

std::string cmd_classify(const Options &o)
{
    require_format(o.format, {"json", "csv"}, "classify");
    const CriticalParams p = resolve_params(o);
    const ModelClass c = classify(p);
    if (is_hzero(c.kind)) {
        fail(ErrorKind::HZeroModel, "H = 0 gives the closed-form model '" + std::string(label(c.kind)) +
                                        "', which has no Weierstrass form and no energy bounds");
    }
    Json j = model_record(p, c);
    const Invariants inv = invariants_of(p);
    j["g2"] = json_number(inv.g2);
    j["g3"] = json_number(inv.g3);
    j["discriminant"] = json_number(discriminant(inv));
    try {
        const Model m(p);
        const DomainInfo &d = m.domain();
        j["domain"] = d.kind == DomainKind::Interval ? "interval" : "full_line";
        j["domain_lo"] = json_number(d.lo);
        j["domain_hi"] = json_number(d.hi);
        j["period"] = d.period ? json_number(*d.period) : Json(nullptr);
        j["zeros_of_S"] = numbers(d.zeros_of_S);
        j["blowups"] = numbers(d.blowups);
        j["omega"] = is_general(c.kind) ? json_number(m.omega()) : Json(nullptr);
        j["tau_star"] = c.kind == ModelKind::ClassIIPositive ? json_number(m.tau_star()) : Json(nullptr);
        j["model_error"] = nullptr;
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::DomainError) {
            throw;
        }
        j["model_error"] = e.what();
    }
    return record_output(j, o.format);
}

std::string cmd_bounds(const Options &o)
{
    require_format(o.format, {"json", "csv"}, "bounds");
    const Model m(resolve_params(o));
    const EnergyBounds b = lambda_bounds(m);
    Json j = model_record(m.params(), m.model_class());
    j["density_max_lambda"] = json_number(b.density_max_lambda);
    j["dec_max_lambda"] = b.dec_max_lambda ? json_number(*b.dec_max_lambda) : Json(nullptr);
    if (const auto *w = std::get_if<WecIffThetaAtMost>(&b.wec_rule)) {
        j["wec"] = "theta_at_most";
        j["wec_theta_max"] = json_number(w->theta_max);
    } else {
        j["wec"] = "always";
    }
    if (const auto *s = std::get_if<SecInterval>(&b.sec_rule)) {
        j["sec"] = "interval";
        j["sec_lo"] = json_number(s->lo);
        j["sec_hi"] = json_number(s->hi);
    } else if (const auto *s = std::get_if<SecExactPoint>(&b.sec_rule)) {
        j["sec"] = "exact_point";
        j["sec_value"] = json_number(s->value);
    } else {
        j["sec"] = "never";
    }
    for (const auto &nv : b.closed_forms) {
        j[nv.name] = json_number(nv.value);
    }
    return record_output(j, o.format);
}

std::string cmd_check(const Options &o)
{
    require_format(o.format, {"json", "csv"}, "check");
    const Model m(resolve_params(o));
    const ConditionReport r = check_conditions(m);
    Json j = model_record(m.params(), m.model_class());
    j["density_nonneg"] = r.density_nonneg;
    j["wec"] = r.wec;
    j["dec"] = r.dec;
    j["sec"] = r.sec;
    j["min_m"] = json_number(r.margins.min_m);
    j["min_m_plus_p"] = json_number(r.margins.min_m_plus_p);
    j["min_m_minus_p"] = json_number(r.margins.min_m_minus_p);
    j["min_m3_plus_p"] = json_number(r.margins.min_m3_plus_p);
    return record_output(j, o.format);
}

std::string model_comment(const Model &m)
{
    const CriticalParams &p = m.params();
    return "model class=" + std::string(label(m.kind())) + " theta=" + number(m.model_class().theta) +
           " H=" + number(p.H) + " a=" + number(p.a) + " lambda=" + number(p.Lambda);
}

std::string cmd_sample(const Options &o, const std::string &default_format)
{
    const std::string format = o.given("--format") ? o.format : default_format;
    require_format(format, {"json", "csv", "svg"}, o.command);
    if (o.n < 2) {
        usage("--n must be at least 2");
    }
    if (!(o.tol > 0) || !std::isfinite(o.tol)) {
        usage("--tol must be positive");
    }
    if (o.given("--tau-min")) {
        require_finite(o.tau_min, "--tau-min");
    }
    if (o.given("--tau-max")) {
        require_finite(o.tau_max, "--tau-max");
    }
    if (o.given("--tau-min") && o.given("--tau-max") && !(o.tau_min < o.tau_max)) {
        usage("the grid needs --tau-min < --tau-max");
    }
    const Model m(resolve_params(o));
    const DomainInfo &d = m.domain();

    double lo = -5, hi = 5;
    if (d.kind == DomainKind::Interval) {
        lo = d.lo;
        hi = d.hi;
    } else if (d.period) {
        lo = 0;
        hi = *d.period;
    }
    lo = o.given("--tau-min") ? o.tau_min : lo;
    hi = o.given("--tau-max") ? o.tau_max : hi;

    std::vector<std::string> clipping;
    if (d.kind == DomainKind::Interval) {
        if (hi <= d.lo || lo >= d.hi) {
            fail(ErrorKind::OutOfDomain, "the grid lies outside the domain (" + number(d.lo) + ", " + number(d.hi) + ")");
        }
        if (lo < d.lo + o.tol) {
            clipping.push_back("tau-min clipped from " + number(lo) + " to " + number(d.lo + o.tol) +
                               " (collar " + number(o.tol) + " at the blow-up " + number(d.lo) + ")");
            lo = d.lo + o.tol;
        }
        if (hi > d.hi - o.tol) {
            clipping.push_back("tau-max clipped from " + number(hi) + " to " + number(d.hi - o.tol) +
                               " (collar " + number(o.tol) + " at the blow-up " + number(d.hi) + ")");
            hi = d.hi - o.tol;
        }
        if (!(lo < hi)) {
            fail(ErrorKind::OutOfDomain, "nothing of the grid is left after clipping");
        }
    }
    if (!(lo < hi)) {
        usage("the grid needs tau-min < tau-max");
    }

    std::vector<ConformalSample> rows;
    rows.reserve(static_cast<std::size_t>(o.n));
    for (int i = 0; i < o.n; ++i) {
        const double tau = i == o.n - 1 ? hi : lo + (hi - lo) * i / (o.n - 1);
        rows.push_back(sample(m, tau));
    }

    if (format == "svg") {
        std::string title = model_comment(m);
        for (const auto &c : clipping) {
            title += "; " + c;
        }
        return render_plot(rows, {o.with_fluid, title});
    }
    if (format == "csv") {
        CsvTable t({"tau", "S", "S_prime", "m_tilde", "p_tilde", "metric_state"});
        t.comment(model_comment(m));
        for (const auto &c : clipping) {
            t.comment(c);
        }
        for (const auto &r : rows) {
            t.row({number(r.tau), number(r.S), number(r.S_prime), number(r.m_tilde), number(r.p_tilde),
                   std::string(label(r.metric_state))});
        }
        return t.str();
    }
    Json j;
    j["model"] = model_record(m.params(), m.model_class());
    j["tau_min"] = json_number(lo);
    j["tau_max"] = json_number(hi);
    j["n"] = o.n;
    j["clipping"] = clipping;
    j["rows"] = Json::array();
    for (const auto &r : rows) {
        Json row;
        row["tau"] = json_number(r.tau);
        row["S"] = json_number(r.S);
        row["S_prime"] = json_number(r.S_prime);
        row["m_tilde"] = json_number(r.m_tilde);
        row["p_tilde"] = json_number(r.p_tilde);
        row["metric_state"] = std::string(label(r.metric_state));
        j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
}

std::vector<double> axis_values(const Options &o, const Axis &axis, const std::string &name, const char *fallback)
{
    double lo = 0;
    if (axis.min->count()) {
        lo = axis.lo;
    } else if (o.given(fallback)) {
        lo = name == "theta" ? o.theta : name == "H" ? o.H : o.lambda;
    } else if (name == "lambda") {
        lo = 0;
    } else {
        usage("sweep needs --" + name + "-min (or " + fallback + ")");
    }
    const double hi = axis.max->count() ? axis.hi : lo;
    require_finite(lo, "--" + name + "-min");
    require_finite(hi, "--" + name + "-max");
    if (axis.steps < 1 || hi < lo) {
        usage("the " + name + " range of the sweep is empty");
    }
    if (axis.steps == 1 && hi != lo) {
        usage("a " + name + " range with one step needs --" + name + "-min = --" + name + "-max");
    }
    if (axis.steps > 1 && hi == lo) {
        usage("a " + name + " range with several steps needs --" + name + "-min < --" + name + "-max");
    }
    std::vector<double> out;
    for (int i = 0; i < axis.steps; ++i) {
        out.push_back(i == axis.steps - 1 ? hi : lo + (hi - lo) * i / std::max(axis.steps - 1, 1));
    }
    return out;
}

std::string cmd_sweep(const Options &o)
{
    require_format(o.format, {"json", "csv"}, "sweep");
    if (o.given("--a")) {
        usage("sweep takes --class and theta ranges, not --a");
    }
    const std::string cls = o.given("--class") ? o.cls : "I";
    const ModelKind kind = kind_from_label(cls);
    if (!is_general(kind)) {
        usage("sweep covers the classes I, II+ and II-");
    }
    if (o.threads < 1) {
        usage("--threads must be at least 1");
    }
    const auto thetas = axis_values(o, o.theta_axis, "theta", "--theta");
    const auto Hs = axis_values(o, o.H_axis, "H", "--H");
    const auto lambdas = axis_values(o, o.lambda_axis, "lambda", "--lambda");

    struct Cell {
        double theta, H, lambda;
        std::optional<Model> model;
    };
    std::vector<Cell> cells;
    for (double th : thetas) {
        for (double H : Hs) {
            for (double L : lambdas) {
                try {
                    cells.push_back({th, H, L, Model(params_from_theta(kind, th, H, L))});
                } catch (const Error &e) {
                    fail(e.kind(), "sweep cell theta=" + number(th) + " H=" + number(H) + " lambda=" + number(L) +
                                       ": " + e.what());
                }
            }
        }
    }

    std::vector<std::optional<ConditionReport>> reports(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                reports[i] = check_conditions(*cells[i].model);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(o.threads), cells.size());
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < workers; ++k) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &th : pool) {
        th.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    if (o.format == "csv") {
        CsvTable t({"theta", "H", "lambda", "class", "wec", "dec", "sec", "min_m"});
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto &c = cells[i];
            const auto &r = *reports[i];
            t.row({number(c.theta), number(c.H), number(c.lambda), std::string(label(c.model->kind())), boolean(r.wec),
                   boolean(r.dec), boolean(r.sec), number(r.margins.min_m)});
        }
        return t.str();
    }
    Json j;
    j["class"] = cls;
    j["cells"] = cells.size();
    j["rows"] = Json::array();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto &c = cells[i];
        const auto &r = *reports[i];
        Json row;
        row["theta"] = json_number(c.theta);
        row["H"] = json_number(c.H);
        row["lambda"] = json_number(c.lambda);
        row["class"] = std::string(label(c.model->kind()));
        row["wec"] = r.wec;
        row["dec"] = r.dec;
        row["sec"] = r.sec;
        row["min_m"] = json_number(r.margins.min_m);
        j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
}

std::string cmd_convert(const Options &o)
{
    require_format(o.format, {"json", "csv"}, "convert");
    if (o.to_cosmological == o.to_conformal) {
        usage("convert needs exactly one of --to-cosmological and --to-conformal");
    }
    if (o.to_cosmological && !o.given("--tau")) {
        usage("--to-cosmological needs --tau");
    }
    if (o.to_conformal && !o.given("--t")) {
        usage("--to-conformal needs --t");
    }
    if (!(o.tol > 0) || !std::isfinite(o.tol)) {
        usage("--tol must be positive");
    }
    const Model m(resolve_params(o));
    const double tau0 = o.given("--tau0") ? o.tau0 : default_anchor(m);
    double tau, t;
    if (o.to_cosmological) {
        tau = o.tau;
        t = cosmological_time(m, tau0, tau);
    } else {
        t = o.t;
        tau = conformal_time(m, tau0, t, o.tol);
    }
    Json j = model_record(m.params(), m.model_class());
    j["tau0"] = json_number(tau0);
    j["tau"] = json_number(tau);
    j["t"] = json_number(t);
    j["S"] = json_number(m.scale(tau).S);
    return record_output(j, o.format);
}

int cmd_verify(const Options &o, std::string &output)
{
    const std::string format = o.given("--format") ? o.format : "text";
    if (format == "svg") {
        usage("--format svg is not available for verify");
    }
    VerifyOptions opts;
    opts.fault_scale = o.inject_fault ? 1.01 : 1.0;
    const auto results = run_suites(o.suite, opts);
    const bool all = std::all_of(results.begin(), results.end(), [](const SuiteResult &r) { return r.passed; });
    if (format == "csv") {
        CsvTable t({"suite", "passed", "detail"});
        for (const auto &r : results) {
            t.row({r.name, boolean(r.passed), csv_cell(r.detail)});
        }
        output = t.str();
    } else if (format == "json") {
        Json j;
        j["passed"] = all;
        j["rows"] = Json::array();
        for (const auto &r : results) {
            j["rows"].push_back({{"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        }
        output = j.dump(2) + "\n";
    } else {
        std::size_t passed = 0;
        for (const auto &r : results) {
            output += std::string(r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail + "\n";
            passed += r.passed;
        }
        output += std::to_string(passed) + "/" + std::to_string(results.size()) + " suites passed\n";
    }
    return all ? exit_ok : exit_numerical;
}

void define(CLI::App &app, Options &o)
{
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_config("--config", "", "Flat key=value file with the same keys as the flags; flags win");
    const auto add = [&](const std::string &name, auto &target, const std::string &help) {
        o.opt[name] = app.add_option(name, target, help);
        return o.opt[name];
    };

    add("command", o.command, "Subcommand")
        ->required()
        ->check(CLI::IsMember({"classify", "bounds", "check", "sample", "sweep", "convert", "verify", "plot"}));
    add("--a", o.a, "Internal parameter a");
    add("--H", o.H, "Internal parameter H");
    add("--lambda", o.lambda, "Cosmological constant")->default_str("0");
    add("--class", o.cls, "Model class")->check(CLI::IsMember({"I", "II+", "II-", "tan", "cosh", "sinh"}));
    add("--theta", o.theta, "Angular parameter");
    add("--tau-min", o.tau_min, "Grid start");
    add("--tau-max", o.tau_max, "Grid end");
    add("--n", o.n, "Grid points")->default_str("201");
    add("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "svg"}))->default_str("json");
    add("--out", o.out_path, "Write output to this file");
    add("--threads", o.threads, "Worker threads for sweep");
    add("--tol", o.tol, "Collar kept from blow-ups")->default_str("1e-6");
    for (auto [name, axis] : {std::pair{"theta", &o.theta_axis}, std::pair{"H", &o.H_axis}, std::pair{"lambda", &o.lambda_axis}}) {
        const std::string n = name;
        axis->min = add("--" + n + "-min", axis->lo, "Sweep range start");
        axis->max = add("--" + n + "-max", axis->hi, "Sweep range end");
        add("--" + n + "-steps", axis->steps, "Sweep range points")->default_str("1");
    }
    o.opt["--to-cosmological"] = app.add_flag("--to-cosmological", o.to_cosmological, "Convert tau to t");
    o.opt["--to-conformal"] = app.add_flag("--to-conformal", o.to_conformal, "Convert t to tau");
    add("--tau", o.tau, "Conformal time");
    add("--t", o.t, "Cosmological time");
    add("--tau0", o.tau0, "Anchor with t(tau0) = 0");
    add("--suite", o.suite, "Run a single verify suite");
    o.opt["--inject-fault"] = app.add_flag("--inject-fault", o.inject_fault, "Scale S by 1.01 in verify");
    o.opt["--with-fluid"] = app.add_flag("--with-fluid", o.with_fluid, "Also plot m and p");
}

int dispatch(const Options &o, std::string &output)
{
    if (o.command == "classify") {
        output = cmd_classify(o);
    } else if (o.command == "bounds") {
        output = cmd_bounds(o);
    } else if (o.command == "check") {
        output = cmd_check(o);
    } else if (o.command == "sample") {
        output = cmd_sample(o, "json");
    } else if (o.command == "plot") {
        output = cmd_sample(o, "svg");
    } else if (o.command == "sweep") {
        output = cmd_sweep(o);
    } else if (o.command == "convert") {
        output = cmd_convert(o);
    } else {
        return cmd_verify(o, output);
    }
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app("Classify, evaluate and verify m-critical Robertson-Walker universes", "mcrit");
    Options o;
    o.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    define(app, o);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n" << synopsis;
        return exit_usage;
    }

    std::string output;
    int code = exit_ok;
    try {
        code = dispatch(o, output);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n" << synopsis;
        return exit_usage;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::NumericalFailure ? exit_numerical : exit_usage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return exit_numerical;
    }

    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path, std::ios::binary);
        f << output;
        if (!f) {
            err << "error: cannot write " << o.out_path << "\n";
            return exit_usage;
        }
    } else {
        out << output;
    }
    return code;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    return run(std::vector<std::string>(argv + std::min(argc, 1), argv + argc), out, err);
}

} // namespace mcrit::cli
