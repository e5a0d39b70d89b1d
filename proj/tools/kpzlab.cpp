#include "kpz/continuum.hpp"
#include "kpz/exact.hpp"
#include "kpz/tasep.hpp"
#include "kpz/validate.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using json = nlohmann::json;
using namespace kpz;

constexpr const char* kOutputDirEnv = "KPZLAB_OUTPUT_DIR";

struct ValidationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

long to_long(const std::string& s)
{
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size())
        throw std::invalid_argument("not an integer: " + s);
    return v;
}

double to_double(const std::string& s)
{
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size())
        throw std::invalid_argument("not a number: " + s);
    return v;
}

std::vector<long> long_list(const std::string& s)
{
    std::vector<long> out;
    for (const auto& p : split(s, ','))
        out.push_back(to_long(p));
    return out;
}

std::vector<double> double_list(const std::string& s)
{
    std::vector<double> out;
    for (const auto& p : split(s, ','))
        out.push_back(to_double(p));
    return out;
}

// lo:hi:step, inclusive of hi up to rounding
std::vector<double> parse_grid(const std::string& s)
{
    auto parts = split(s, ':');
    if (parts.size() != 3)
        throw std::invalid_argument("grid must be lo:hi:step, got " + s);
    double lo = to_double(parts[0]), hi = to_double(parts[1]), step = to_double(parts[2]);
    if (!(step > 0) || hi < lo)
        throw std::invalid_argument("grid needs step > 0 and hi >= lo");
    std::vector<double> g;
    for (long k = 0;; ++k) {
        double v = lo + double(k) * step;
        if (v > hi + 1e-9 * step)
            break;
        g.push_back(v);
    }
    return g;
}

// "n:a,n:a" or "x:a,x:a"
template <class A, class B>
std::vector<std::pair<A, B>> pair_list(const std::string& s)
{
    std::vector<std::pair<A, B>> out;
    for (const auto& item : split(s, ',')) {
        auto ab = split(item, ':');
        if (ab.size() != 2)
            throw std::invalid_argument("expected a:b pairs, got " + item);
        if constexpr (std::is_integral_v<A>)
            out.emplace_back(A(to_long(ab[0])), B(to_long(ab[1])));
        else
            out.emplace_back(to_double(ab[0]), to_double(ab[1]));
    }
    return out;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Common {
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string config;
    bool dump_config = false;
};

std::string resolve_out(const std::string& out)
{
    if (out.empty())
        return out;
    std::filesystem::path p(out);
    const char* dir = std::getenv(kOutputDirEnv);
    if (p.is_relative() && dir && *dir)
        p = std::filesystem::path(dir) / p;
    return p.string();
}

void emit(const Common& c, const std::string& text)
{
    std::string path = resolve_out(c.out);
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot open output file " + path);
    f << text;
}

void write_table(const Common& c, const Table& t)
{
    std::ostringstream os;
    if (c.format == "json") {
        json j;
        j["columns"] = t.columns;
        j["rows"] = t.rows;
        os << j.dump() << "\n";
    } else {
        for (size_t i = 0; i < t.columns.size(); ++i)
            os << (i ? "," : "") << t.columns[i];
        os << "\n";
        for (const auto& r : t.rows) {
            for (size_t i = 0; i < r.size(); ++i)
                os << (i ? "," : "") << fmt17(r[i]);
            os << "\n";
        }
    }
    emit(c, os.str());
}

void summary(const std::string& line)
{
    std::cerr << line << "\n";
}

// ---- initial data flags shared by several subcommands ----

struct IcFlags {
    std::string ic = "step";
    int d = 2;
    std::string x0;

    void add(CLI::App* app)
    {
        app->add_option("--ic", ic, "initial data: step, periodic or explicit")->check(
            CLI::IsMember({"step", "periodic", "explicit"}));
        app->add_option("--d", d, "spacing for periodic data");
        app->add_option("--x0", x0, "explicit positions, strictly decreasing, comma separated");
    }

    InitialData make() const
    {
        if (ic == "periodic")
            return InitialData::periodic(d);
        if (ic == "explicit")
            return InitialData::explicit_data(long_list(x0));
        return InitialData::step();
    }
};

struct Presets {
    std::string ic, profile, events, campaign;
    double t = 1.0;
    int d = 2;
};

Presets preset(const std::string& name)
{
    if (name == "step-n3")
        return {"step", "narrow-wedge", "3:-3", "mc-vs-exact", 1.0, 2};
    if (name == "periodic-d2")
        return {"periodic", "flat", "2:-1", "mc-vs-exact", 1.0, 2};
    if (name == "flat")
        return {"periodic", "flat", "", "skew", 1.0, 2};
    if (name == "half-flat")
        return {"step", "half-flat", "", "skew", 1.0, 2};
    throw std::invalid_argument("unknown preset " + name + " (step-n3, periodic-d2, flat, half-flat)");
}

Profile make_profile(const std::string& name)
{
    if (name == "narrow-wedge")
        return Profile::narrow_wedge(0.0);
    if (name == "flat")
        return Profile::flat();
    if (name == "half-flat")
        return Profile::half_flat();
    std::ifstream f(name);
    if (!f)
        throw std::invalid_argument("profile must be narrow-wedge, flat, half-flat or a JSON file: " + name);
    std::stringstream ss;
    ss << f.rdbuf();
    return profile_from_json(ss.str());
}

std::vector<Event> parse_events(const std::string& s)
{
    std::vector<Event> ev;
    for (auto [n, a] : pair_list<int, long>(s))
        ev.push_back({n, a});
    if (ev.empty())
        throw std::invalid_argument("--events needs at least one n:a pair");
    return ev;
}

// labels whose motion can reach the window [zlo, zhi] by time tm
std::pair<long, long> height_labels(const InitialData& x0, long zlo, long zhi, double tm)
{
    double reach = tm + 10 * std::sqrt(tm) + 20;
    switch (x0.kind()) {
    case InitialData::Kind::step:
        return {1, step_label_bound(zhi, tm) + std::max(0L, -zlo)};
    case InitialData::Kind::periodic: {
        long d = x0.spacing();
        return {-long(std::ceil((2 * tm + 40 + double(zhi)) / double(d))),
                long(std::ceil((reach - double(zlo)) / double(d))) + 1};
    }
    case InitialData::Kind::explicit_:
        return {1, *x0.finite_count()};
    }
    return {1, 1};
}

// ---- subcommands ----

struct Simulate {
    IcFlags ic;
    double t = 1.0;
    long lo = 1, hi = 10, samples = 1;

    void add(CLI::App* app)
    {
        ic.add(app);
        app->add_option("--t", t, "time")->check(CLI::NonNegativeNumber);
        app->add_option("--lo", lo, "first tracked label");
        app->add_option("--hi", hi, "last tracked label");
        app->add_option("--samples", samples, "independent runs")->check(CLI::PositiveNumber);
    }

    void run(const Common& c) const
    {
        const ParticleState init = make_state(ic.make(), lo, hi);
        auto finals = run_samples(samples, c.jobs, [&](long k) { return evolve(init, t, sample_seed(c.seed, k)); });
        Table tab{{"sample", "label", "position"}, {}};
        for (long k = 0; k < samples; ++k)
            for (size_t i = 0; i < finals[size_t(k)].positions.size(); ++i)
                tab.rows.push_back({double(k), double(finals[size_t(k)].label(i)), double(finals[size_t(k)].positions[i])});
        write_table(c, tab);
        summary("simulate: " + std::to_string(samples) + " runs of labels " + std::to_string(lo) + ".." +
                std::to_string(hi) + " to t=" + fmt17(t));
    }
};

struct Height {
    IcFlags ic;
    double t = 1.0, eps = 0.0;
    std::string window = "-10:10";

    void add(CLI::App* app)
    {
        ic.add(app);
        app->add_option("--t", t, "time (continuum time when --eps is given)")->check(CLI::NonNegativeNumber);
        app->add_option("--window", window, "lattice window zlo:zhi");
        app->add_option("--eps", eps, "if > 0, also report h^eps with t_micro = 2 eps^{-3/2} t");
    }

    void run(const Common& c) const
    {
        auto w = split(window, ':');
        if (w.size() != 2)
            throw std::invalid_argument("--window must be zlo:zhi");
        long zlo = to_long(w[0]), zhi = to_long(w[1]);
        double tm = eps > 0 ? 2 * std::pow(eps, -1.5) * t : t;
        InitialData x0 = ic.make();
        auto [lo, hi] = height_labels(x0, zlo, zhi, tm);
        ParticleState s = evolve(make_state(x0, lo, hi), tm, c.seed);
        HeightField h = height(s, zlo, zhi);
        Table tab;
        tab.columns = {"z", "h"};
        if (eps > 0)
            tab.columns.insert(tab.columns.end(), {"x", "h_eps"});
        for (long z = zlo; z <= zhi; ++z) {
            std::vector<double> row{double(z), double(h.at(z))};
            if (eps > 0) {
                double x = eps * double(z) / 2;
                row.push_back(x);
                row.push_back(rescale_height(h, eps, t, x));
            }
            tab.rows.push_back(row);
        }
        write_table(c, tab);
        summary("height: window " + window + " at micro time " + fmt17(tm));
    }
};

struct ExactSchuetz {
    std::string x, y;
    double t = 1.0;

    void add(CLI::App* app)
    {
        app->add_option("--x", x, "final positions")->required();
        app->add_option("--y", y, "initial positions")->required();
        app->add_option("--t", t, "time")->check(CLI::NonNegativeNumber);
    }

    void run(const Common& c) const
    {
        auto xs = long_list(x), ys = long_list(y);
        double p = schuetz_transition(xs, ys, t);
        emit(c, fmt17(p) + "\n");
        summary("exact-schuetz: P(X_t = x | X_0 = y) = " + fmt17(p));
    }
};

struct ExactMultipoint {
    IcFlags ic;
    double t = 1.0, tol = 1e-9;
    std::string events;

    void add(CLI::App* app)
    {
        ic.add(app);
        app->add_option("--t", t, "time")->check(CLI::PositiveNumber);
        app->add_option("--events", events, "n:a pairs for P(X_t(n) > a for all pairs)")->required();
        app->add_option("--tol", tol, "truncation tolerance");
    }

    void run(const Common& c) const
    {
        auto ev = parse_events(events);
        MultipointResult r = multipoint_probability(ic.make(), t, ev, tol);
        emit(c, fmt17(r.value) + "\n");
        summary("exact-multipoint: value " + fmt17(r.value) + ", last-doubling delta " + fmt17(r.delta));
    }
};

struct KernelDump {
    IcFlags ic;
    double t = 1.0;
    int ni = 1, nj = 1;
    std::string grid = "-5:5:1";

    void add(CLI::App* app)
    {
        ic.add(app);
        app->add_option("--t", t, "time")->check(CLI::PositiveNumber);
        app->add_option("--ni", ni, "row label");
        app->add_option("--nj", nj, "column label");
        app->add_option("--grid", grid, "integer grid lo:hi:step for both arguments");
    }

    void run(const Common& c) const
    {
        auto g = parse_grid(grid);
        HitKernel K(ic.make(), t);
        Table tab{{"z1", "z2", "K"}, {}};
        for (double z1 : g)
            for (double z2 : g)
                tab.rows.push_back({z1, z2, K(ni, std::lround(z1), nj, std::lround(z2))});
        write_table(c, tab);
        summary("kernel-dump: " + std::to_string(tab.rows.size()) + " entries");
    }
};

struct Tw {
    std::string ensemble = "gue", grid = "-6:4:0.25";
    int order = 0;

    void add(CLI::App* app)
    {
        app->add_option("--ensemble", ensemble, "gue or goe")->check(CLI::IsMember({"gue", "goe"}));
        app->add_option("--grid", grid, "r grid lo:hi:step");
        app->add_option("--order", order, "fixed quadrature order; 0 runs the order ladder");
    }

    void run(const Common& c) const
    {
        Ensemble e = parse_ensemble(ensemble);
        Table tab{{"r", "F"}, {}};
        double worst = 0.0;
        for (double r : parse_grid(grid)) {
            if (order > 0) {
                tab.rows.push_back({r, tracy_widom_at_order(e, r, order)});
            } else {
                TwValue v = tracy_widom(e, r);
                worst = std::max(worst, v.delta);
                tab.rows.push_back({r, v.value});
            }
        }
        write_table(c, tab);
        summary("tw: " + ensemble + ", " + std::to_string(tab.rows.size()) + " points, max ladder delta " +
                fmt17(worst));
    }
};

struct Airy {
    std::string family = "airy2", grid = "-4:4:0.5", up_grid;
    double x = 0.0, xp = 0.0;

    void add(CLI::App* app)
    {
        app->add_option("--family", family, "airy2, airy1 or airy21")->check(
            CLI::IsMember({"airy2", "airy1", "airy21"}));
        app->add_option("--x", x, "first time argument");
        app->add_option("--xp", xp, "second time argument");
        app->add_option("--grid", grid, "u grid lo:hi:step");
        app->add_option("--up-grid", up_grid, "u' grid (defaults to --grid)");
    }

    void run(const Common& c) const
    {
        AiryFamily f = parse_airy_family(family);
        auto gu = parse_grid(grid);
        auto gv = up_grid.empty() ? gu : parse_grid(up_grid);
        Table tab{{"u", "up", "K"}, {}};
        for (double u : gu)
            for (double up : gv)
                tab.rows.push_back({u, up, airy_process_kernel(f, x, u, xp, up)});
        write_table(c, tab);
        summary("airy: " + family + " kernel at x=" + fmt17(x) + ", x'=" + fmt17(xp));
    }
};

struct FixedPoint {
    std::string profile = "narrow-wedge", preset_name, grid = "-4:2:0.5", points;
    double t = 1.0, x = 0.0, tol = 1e-10;

    void add(CLI::App* app)
    {
        app->add_option("--profile", profile, "narrow-wedge, flat, half-flat or a profile JSON file");
        app->add_option("--preset", preset_name, "scenario preset (sets --profile)");
        app->add_option("--t", t, "time")->check(CLI::PositiveNumber);
        app->add_option("--x", x, "space point for the one-point scan");
        app->add_option("--grid", grid, "a grid lo:hi:step for P(h(t,x) <= a)");
        app->add_option("--points", points, "x:a pairs for a single multi-point value");
        app->add_option("--tol", tol, "order-ladder tolerance");
    }

    void run(const Common& c) const
    {
        Profile h0 = make_profile(preset_name.empty() ? profile : preset(preset_name).profile);
        if (!points.empty()) {
            std::vector<SpacePoint> pts;
            for (auto [px, pa] : pair_list<double, double>(points))
                pts.push_back({px, pa});
            FixedPointResult r = fixed_point_prob(h0, pts, t, tol);
            emit(c, fmt17(r.value) + "\n");
            summary("fixedpoint: value " + fmt17(r.value) + " at order " + std::to_string(r.order));
            return;
        }
        Table tab{{"a", "P"}, {}};
        for (double a : parse_grid(grid))
            tab.rows.push_back({a, fixed_point_prob(h0, {{x, a}}, t, tol).value});
        write_table(c, tab);
        summary("fixedpoint: one-point law at x=" + fmt17(x) + ", " + std::to_string(tab.rows.size()) + " points");
    }
};

struct Validate {
    std::string campaign, preset_name, events, eps = "1,0.2,0.1,0.05", profile;
    IcFlags ic;
    double t = 1.0, rho = 0.5, alpha = 0.01, max_distance = -1.0, tol = 1e-8;
    long samples = 100000, window = 10;
    CLI::App* app_ = nullptr;

    void add(CLI::App* app)
    {
        app_ = app;
        app->add_option("campaign,--campaign", campaign,
                        "mc-vs-exact, bernoulli, corner-flip, poisson-chi2, schuetz-ctmc, convergence or skew")
            ->check(CLI::IsMember(
                {"mc-vs-exact", "bernoulli", "corner-flip", "poisson-chi2", "schuetz-ctmc", "convergence", "skew"}));
        app->add_option("--preset", preset_name, "step-n3, periodic-d2, flat or half-flat");
        ic.add(app);
        app->add_option("--t", t, "time");
        app->add_option("--events", events, "n:a pairs");
        app->add_option("--samples", samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
        app->add_option("--rho", rho, "Bernoulli density");
        app->add_option("--window", window, "observation window length");
        app->add_option("--alpha", alpha, "chi-square level");
        app->add_option("--eps", eps, "eps ladder for convergence, decreasing");
        app->add_option("--max-distance", max_distance, "optional bound on the finest sup distance");
        app->add_option("--profile", profile, "profile for the skew check");
        app->add_option("--tol", tol, "tolerance for the skew check");
    }

    bool given(const std::string& name) const { return app_->get_option(name)->count() > 0; }

    void run(const Common& c)
    {
        if (!preset_name.empty()) {
            Presets p = preset(preset_name);
            if (campaign.empty())
                campaign = p.campaign;
            if (!given("--ic"))
                ic.ic = p.ic;
            if (!given("--d"))
                ic.d = p.d;
            if (!given("--events"))
                events = p.events;
            if (!given("--t"))
                t = p.t;
            if (!given("--profile"))
                profile = p.profile;
        }
        if (campaign.empty())
            throw std::invalid_argument("validate: name a campaign or a preset");

        ValidationReport r;
        if (campaign == "mc-vs-exact") {
            auto ev = parse_events(events);
            r = mc_vs_exact(ic.make(), t, ev, samples, c.seed, c.jobs);
        } else if (campaign == "bernoulli") {
            r = bernoulli_invariance_test(rho, t, window, samples, c.seed, c.jobs);
        } else if (campaign == "corner-flip") {
            r = corner_flip_test(rho, t, window, samples, c.seed, c.jobs);
        } else if (campaign == "poisson-chi2") {
            r = poisson_chi2_test(t, samples, c.seed, alpha, c.jobs);
        } else if (campaign == "schuetz-ctmc") {
            r = schuetz_vs_ctmc(long_list(ic.x0.empty() ? "2,0,-3" : ic.x0), t);
        } else if (campaign == "convergence") {
            std::string kind = ic.ic == "periodic" ? "flat" : ic.ic;
            ConvergenceStudy st = convergence_study(kind, double_list(eps), t, samples, c.seed, c.jobs);
            r.campaign = "convergence-" + kind;
            r.seeds = {c.seed};
            for (const auto& row : st.rows) {
                std::string e = fmt17(row.eps);
                r.diagnostics["distance_eps_" + e] = row.distance;
                r.diagnostics["distance_midpoint_eps_" + e] = row.distance_midpoint;
                r.diagnostics["mean_eps_" + e] = row.mean;
                r.diagnostics["seconds_eps_" + e] = row.seconds;
            }
            bool dec = st.strictly_decreasing();
            r.checks.push_back({"sup distances strictly decrease", dec ? 1.0 : 0.0, 1.0, 0.0, dec, 0.0});
            if (max_distance >= 0 && !st.rows.empty()) {
                double d = st.rows.back().distance;
                r.checks.push_back({"finest sup distance", d, 0.0, max_distance, d <= max_distance, 0.0});
            }
        } else if (campaign == "skew") {
            auto start = std::chrono::steady_clock::now();
            std::vector<double> g{-2.0, -1.0, -0.3, 0.4, 1.2};
            SkewReport s = skew_identity_check(make_profile(profile.empty() ? "narrow-wedge" : profile), t, g);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            r.campaign = "skew-" + (profile.empty() ? std::string("narrow-wedge") : profile);
            r.checks.push_back({"max skew deviation", s.max_deviation, 0.0, tol, s.max_deviation <= tol, secs});
            r.diagnostics["points"] = s.points;
        }
        emit(c, r.to_json() + "\n");
        long passed = std::count_if(r.checks.begin(), r.checks.end(), [](const CheckRecord& k) { return k.pass; });
        summary("validate " + r.campaign + ": " + (r.all_pass() ? "PASS" : "FAIL") + " (" + std::to_string(passed) +
                "/" + std::to_string(r.checks.size()) + " checks)");
        if (!r.all_pass())
            throw ValidationFailed(r.campaign);
    }
};

const std::vector<std::string> kGlobalKeys = {"out", "format", "seed", "jobs"};

std::string option_key(const CLI::Option* o)
{
    return o->get_lnames().empty() ? o->get_name() : o->get_lnames().front();
}

void add_value(json& j, const std::string& key, const CLI::Option* o)
{
    auto res = o->results();
    std::string v = res.empty() ? o->get_default_str() : res.front();
    if (!v.empty())
        j[key] = v;
}

json dump_config(const CLI::App& app, const CLI::App* sub)
{
    json j;
    j["command"] = sub->get_name();
    for (const auto* o : app.get_options())
        if (auto k = option_key(o); std::find(kGlobalKeys.begin(), kGlobalKeys.end(), k) != kGlobalKeys.end())
            add_value(j, k, o);
    for (const auto* o : sub->get_options())
        if (auto k = option_key(o); k != "help")
            add_value(j, k, o);
    return j;
}

std::string scalar_string(const json& v, const std::string& key)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_integer())
        return std::to_string(v.get<long long>());
    if (v.is_number())
        return fmt17(v.get<double>());
    throw std::invalid_argument("config key " + key + " must be a string or number");
}

// argv equivalent of a RunConfig; unknown keys surface as parse errors
std::vector<std::string> config_args(const std::string& path, const std::vector<std::string>& commands)
{
    std::ifstream f(path);
    if (!f)
        throw std::invalid_argument("cannot read config " + path);
    json j = json::parse(f);
    if (!j.is_object() || !j.contains("command") || !j["command"].is_string())
        throw std::invalid_argument("config must be an object with a string \"command\"");
    std::string cmd = j["command"];
    if (std::find(commands.begin(), commands.end(), cmd) == commands.end())
        throw std::invalid_argument("config: unknown command " + cmd);
    std::vector<std::string> pre, post;
    for (auto& [k, v] : j.items()) {
        if (k == "command")
            continue;
        bool global = std::find(kGlobalKeys.begin(), kGlobalKeys.end(), k) != kGlobalKeys.end();
        auto& dst = global ? pre : post;
        dst.push_back("--" + k);
        dst.push_back(scalar_string(v, k));
    }
    pre.push_back(cmd);
    pre.insert(pre.end(), post.begin(), post.end());
    return pre;
}

int run(int argc, char** argv)
{
    CLI::App app{"kpzlab: TASEP, Fredholm determinants and the KPZ fixed point"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    app.add_option("--out", c.out, std::string("output file; relative paths go under $") + kOutputDirEnv);
    app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", c.seed, "master seed");
    app.add_option("--jobs", c.jobs, "Monte Carlo worker threads")->check(CLI::PositiveNumber);
    app.add_option("--config", c.config, "replay a RunConfig JSON file");
    app.add_flag("--dump-config", c.dump_config, "print the RunConfig JSON for this invocation and exit");

    Simulate simulate;
    Height height_cmd;
    ExactSchuetz schuetz;
    ExactMultipoint multipoint;
    KernelDump kernel;
    Tw tw;
    Airy airy;
    FixedPoint fixedpoint;
    Validate validate;
    std::vector<std::pair<CLI::App*, std::function<void()>>> subs;
    auto reg = [&](const char* name, const char* help, auto& cmd) {
        CLI::App* s = app.add_subcommand(name, help);
        cmd.add(s);
        subs.emplace_back(s, [&cmd, &c] { cmd.run(c); });
    };
    reg("simulate", "run TASEP and print final positions", simulate);
    reg("height", "simulate and print the height function", height_cmd);
    reg("exact-schuetz", "transition probability by the determinant formula", schuetz);
    reg("exact-multipoint", "multi-point distribution by the Fredholm formula", multipoint);
    reg("kernel-dump", "tabulate the TASEP correlation kernel", kernel);
    reg("tw", "Tracy-Widom distribution on a grid", tw);
    reg("airy", "Airy process extended kernels", airy);
    reg("fixedpoint", "KPZ fixed point probabilities", fixedpoint);
    reg("validate", "run a validation campaign", validate);

    std::vector<std::string> args(argv + 1, argv + argc);
    // a config file replaces the command line, apart from --dump-config
    for (size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") {
            std::vector<std::string> names;
            for (auto& [s, f] : subs)
                names.push_back(s->get_name());
            std::vector<std::string> replay = config_args(args[i + 1], names);
            bool dump = std::find(args.begin(), args.end(), "--dump-config") != args.end();
            args = replay;
            if (dump)
                args.insert(args.begin(), "--dump-config");
            break;
        }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 1;
    }

    for (auto& [s, f] : subs) {
        if (!s->parsed())
            continue;
        if (c.dump_config) {
            std::cout << dump_config(app, s).dump(2) << "\n";
            return 0;
        }
        f();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const ValidationFailed&) {
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "kpzlab: " << e.what() << "\n";
        return 1;
    }
}
