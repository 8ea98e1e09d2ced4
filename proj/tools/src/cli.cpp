#include "qhkit/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qhkit/checkers.hpp"
#include "qhkit/domain_io.hpp"
#include "qhkit/errors.hpp"
#include "qhkit/experiments.hpp"
#include "qhkit/maps.hpp"
#include "qhkit/metrics.hpp"
#include "qhkit/report.hpp"
#include "qhkit/sampling.hpp"

namespace qhkit::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Common {
    std::string domain, map, out = ".";
    int level = kDefaultLevel;
    std::uint64_t seed = 1;
    double tol = kDefaultEdgeTol;
};

struct DistOpts {
    std::string x, y;
};

struct CheckOpts {
    std::string name;
    std::size_t pairs = 200;
    double margin = 0.0;  // 0: a tenth of the domain's length unit
    double M = 0.0, C = 0.0;
    std::string phi = "identity";
    double t0 = 0.5, q = 0.5;
    std::string center;
    std::size_t centers = 3, per_center = 24;
};

struct ExperimentOpts {
    std::string name;
    std::vector<double> t{0.1, 0.05, 0.02};
    std::vector<int> m{2, 5, 10, 20};
    double r = 0.05, bend_deg = 90.0;
    std::size_t trials = 200;
    std::vector<double> s{0.3, 0.5, 0.9};
    std::size_t pairs = 24;
};

std::string read_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ValidationError("/", "cannot read " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Inline JSON (starting with '{') or a file path.
json json_arg(const std::string& arg) {
    const std::string text = (!arg.empty() && arg.front() == '{') ? arg : read_file(arg);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError("/", std::string("malformed JSON: ") + e.what());
    }
}

Domain domain_arg(const std::string& arg) {
    const json j = json_arg(arg);
    return j.contains("domain") ? domain_from_json(j.at("domain"), "/domain") : domain_from_json(j);
}

MapUnderTest map_arg(const std::string& arg) {
    const json j = json_arg(arg);
    return j.contains("map") ? map_from_json(j.at("map"), "/map") : map_from_json(j);
}

json manifest(const std::string& command, const Common& c, json params) {
    return {{"command", command}, {"domain", c.domain}, {"map", c.map},  {"seed", c.seed},
            {"level", c.level},   {"tol", c.tol},       {"out", c.out},  {"params", std::move(params)}};
}

fs::path out_dir(const Common& c) {
    fs::path dir(c.out);
    fs::create_directories(dir);
    return dir;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_dist(const Common& c, const DistOpts& o, std::ostream& out) {
    if (c.domain.empty()) throw ValidationError("/domain", "--domain is required");
    const Domain d = domain_arg(c.domain);
    const Point x = parse_point(o.x), y = parse_point(o.y);
    for (const auto& [p, field] : {std::pair{x, "/x"}, std::pair{y, "/y"}})
        if (!d.contains(p)) throw DomainMembershipError(std::string(field) + ": point " + p.str() + " is not in " + d.name());
    const MetricEstimate ku = k_upper(d, x, y, c.level, c.tol);
    const MetricEstimate kl = k_lower(d, x, y);
    out << "k_upper " << num(ku.value) << "\n"
        << "k_upper_tol " << num(ku.abs_tol) << "\n"
        << "k_lower " << num(kl.value) << "\n"
        << "j " << num(j_metric(d, x, y)) << "\n";
    return kExitPass;
}

int cmd_geodesic(const Common& c, const DistOpts& o, std::ostream& out) {
    if (c.domain.empty()) throw ValidationError("/domain", "--domain is required");
    const Domain d = domain_arg(c.domain);
    const Point x = parse_point(o.x), y = parse_point(o.y);
    const Path p = extract_neargeodesic(d, x, y, c.level, c.tol);
    const NeargeodesicConstant nc = neargeodesic_constant(p, d, 2000, c.level, c.seed);
    const fs::path dir = out_dir(c);
    std::vector<std::string> cols = {"x", "y"};
    if (x.dim() == 3) cols.push_back("z");
    std::vector<json> rows;
    for (const Point& q : p.points) {
        json r;
        for (int i = 0; i < q.dim(); ++i) r[cols[static_cast<std::size_t>(i)]] = q[i];
        rows.push_back(r);
    }
    write_text((dir / "geodesic.csv").string(), rows_to_csv(cols, rows));
    json m = manifest("geodesic", c, {{"x", o.x}, {"y", o.y}});
    m["result"] = {{"vertices", p.size()},
                   {"k_upper", qh_length(p, d, c.tol).value},
                   {"c_certified", nc.certified},
                   {"c_estimated", nc.estimated},
                   {"pairs_evaluated", nc.pairs_evaluated}};
    write_text((dir / "geodesic.json").string(), m.dump(2) + "\n");
    out << "vertices " << p.size() << "\n"
        << "c_certified " << num(nc.certified) << "\n"
        << "c_estimated " << num(nc.estimated) << "\n"
        << "wrote " << (dir / "geodesic.csv").string() << "\n";
    return kExitPass;
}

GrowthFunction parse_phi(const std::string& spec) {
    if (spec == "identity") return [](double t) { return t; };
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::vector<double> v;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        for (std::string tok; std::getline(ss, tok, ',');) v.push_back(std::stod(tok));
    }
    if (kind == "linear" && v.size() == 1 && v[0] >= 1.0) return [M = v[0]](double t) { return M * t; };
    if (kind == "affine" && v.size() == 2 && v[0] >= 1.0 && v[1] >= 0.0)
        return [M = v[0], C = v[1]](double t) { return M * t + C; };
    throw ValidationError("/phi", "expected identity, linear:<M>=1..., or affine:<M>,<C>");
}

void write_report(const fs::path& dir, const std::string& stem, const CheckReport& r, const json& man) {
    json j = report_to_json(r);
    j["run"] = man;
    write_text((dir / (stem + ".json")).string(), j.dump(2) + "\n");
    write_text((dir / (stem + "_witnesses.csv")).string(), witnesses_to_csv(r.witnesses));
    write_text((dir / (stem + ".manifest.json")).string(), man.dump(2) + "\n");
    for (const auto& [name, g] : r.gauges) {
        std::vector<json> rows;
        for (std::size_t i = 0; i < g.size(); ++i)
            rows.push_back({{"bin_lo", g.bins[i]},
                            {"bin_hi", g.bins[i + 1]},
                            {"count", g.counts[i]},
                            {"sup", g.sup_values[i] ? json(*g.sup_values[i]) : json(nullptr)},
                            {"envelope", g.monotone_envelope[i]}});
        write_text((dir / (stem + "_gauge_" + name + ".csv")).string(),
                   rows_to_csv({"bin_lo", "bin_hi", "count", "sup", "envelope"}, rows));
    }
}

int cmd_check(const Common& c, const CheckOpts& o, std::ostream& out) {
    const bool domain_check = o.name == "uniform" || o.name == "thmD";
    if (domain_check && c.domain.empty()) throw ValidationError("/domain", "--domain is required for " + o.name);
    if (!domain_check && c.map.empty()) throw ValidationError("/map", "--map is required for " + o.name);

    const std::optional<MapUnderTest> f = domain_check ? std::nullopt : std::optional(map_arg(c.map));
    const Domain source = domain_check ? domain_arg(c.domain) : f->source;
    const double margin = o.margin > 0.0 ? o.margin : 0.1 * source.shape_scale() * source.frame().scale();
    const json params = {{"check", o.name}, {"pairs", o.pairs}, {"margin", margin}, {"M", o.M},   {"C", o.C},
                         {"phi", o.phi},    {"t0", o.t0},       {"q", o.q},         {"center", o.center},
                         {"centers", o.centers}, {"per_center", o.per_center}};

    CheckReport r;
    if (o.name == "qh") {
        const QhEstimate e = estimate_qh_constant(*f, sample_pairs(source, o.pairs, margin, c.seed), c.level);
        r = e.report;
        if (o.M > 0.0) r.verdicts["M_qh_within"] = e.M_hat <= o.M;
    } else if (o.name == "cqh") {
        if (!(o.M >= 1.0)) throw ValidationError("/M", "--M >= 1 is required for cqh");
        r = check_cqh(*f, sample_pairs(source, o.pairs, margin, c.seed), o.M, o.C, c.level);
    } else if (o.name == "relative") {
        const auto pairs = sample_local_pairs(source, o.pairs, margin, 0.5 * o.t0, c.seed);
        r.check = "relative_theta";
        r.gauges["theta"] = estimate_relative_theta(*f, pairs, o.t0);
        r.manifest = {{"pairs", pairs.size()}, {"t0", o.t0}};
    } else if (o.name == "qs") {
        const Point center = o.center.empty() ? source.to_world(source.shape_anchor()) : parse_point(o.center);
        const double rad = o.q * source.dist_to_boundary(center);
        r.check = "qs_eta";
        r.gauges["eta"] = estimate_qs_eta(*f, center, o.q, sample_triples(center, rad * (1.0 - 1e-12), o.pairs, c.seed));
        r.manifest = {{"triples", o.pairs}, {"q", o.q}, {"center", point_to_json(center)}};
    } else if (o.name == "semisolid") {
        r = check_semisolid(*f, sample_pairs(source, o.pairs, margin, c.seed), parse_phi(o.phi), c.level);
    } else if (o.name == "solid") {
        r = check_solid(*f, sample_pairs(source, o.pairs, margin, c.seed), parse_phi(o.phi), c.level);
    } else if (o.name == "uniform") {
        r = uniformity_check(source, sample_pairs(source, o.pairs, margin, c.seed), c.level).report;
    } else if (o.name == "thmD") {
        r = theoremD_fit(source, sample_pairs(source, o.pairs, margin, c.seed), c.level).report;
    } else if (o.name == "local-global") {
        const auto centers = source.sample_interior(o.centers, margin, c.seed);
        const auto pairs = sample_local_pairs(source, o.pairs, margin, 0.5, c.seed + 1);
        r = local_to_global_qh(*f, centers, pairs, c.level, o.per_center, c.seed + 2).report;
    } else {
        throw ValidationError("/check", "unknown check '" + o.name + "'");
    }
    r.manifest["seed"] = c.seed;

    const fs::path dir = out_dir(c);
    const std::string stem = "check_" + o.name + "_seed" + std::to_string(c.seed);
    write_report(dir, stem, r, manifest("check", c, params));
    for (const auto& [k, v] : r.constants) out << k << " " << num(v) << "\n";
    for (const auto& [k, v] : r.verdicts) out << "verdict " << k << " " << (v ? "pass" : "fail") << "\n";
    for (const auto& w : r.witnesses) {
        out << "witness " << w.label << " " << num(w.value);
        for (const auto& p : w.points) out << " " << p.str();
        out << "\n";
    }
    out << "wrote " << (dir / (stem + ".json")).string() << "\n";
    return r.passed() ? kExitPass : kExitFail;
}

int cmd_experiment(const Common& c, const ExperimentOpts& o, std::ostream& out) {
    ExperimentResult res;
    json params = {{"experiment", o.name}};
    if (o.name == "example1") {
        res = run_example1(o.t, c.level);
        params["t"] = o.t;
    } else if (o.name == "example2") {
        res = run_example2(o.m, o.r, o.bend_deg * std::numbers::pi / 180.0, c.seed);
        params.update({{"m", o.m}, {"r", o.r}, {"bend_deg", o.bend_deg}});
    } else if (o.name == "lemma1") {
        res = run_lemma1(o.trials, o.s, c.seed);
        params.update({{"trials", o.trials}, {"s", o.s}});
    } else if (o.name == "uniformity") {
        res = run_uniformity(c.level, c.seed, o.pairs);
        params["pairs"] = o.pairs;
    } else {
        throw ValidationError("/experiment", "unknown experiment '" + o.name + "'");
    }
    const fs::path dir = out_dir(c);
    const std::string stem = o.name + "_seed" + std::to_string(c.seed);
    const json man = manifest("experiment", c, params);
    json j = result_to_json(res);
    j["run"] = man;
    write_text((dir / (stem + ".csv")).string(), rows_to_csv(res.columns, res.rows));
    write_text((dir / (stem + ".json")).string(), j.dump(2) + "\n");
    write_text((dir / (stem + ".manifest.json")).string(), man.dump(2) + "\n");
    for (const auto& [k, v] : res.summary) out << k << " " << num(v) << "\n";
    for (const auto& [k, v] : res.verdicts) out << "verdict " << k << " " << (v ? "pass" : "fail") << "\n";
    out << "wrote " << (dir / (stem + ".csv")).string() << "\n";
    return res.passed() ? kExitPass : kExitFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quasihyperbolic metric toolkit"};
    app.require_subcommand(1);
    Common c;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--domain", c.domain, "domain spec: JSON file or inline JSON");
        sub->add_option("--map", c.map, "map spec: JSON file or inline JSON");
        sub->add_option("--level", c.level, "graph resolution level")->check(CLI::Range(0, 8));
        sub->add_option("--seed", c.seed, "sampling seed");
        sub->add_option("--tol", c.tol, "per-edge integration tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--out", c.out, "output directory");
    };

    DistOpts d;
    auto* dist = app.add_subcommand("dist", "k_upper, k_lower and j between two points");
    add_common(dist);
    dist->add_option("--x", d.x, "first point, e.g. 0,0")->required();
    dist->add_option("--y", d.y, "second point")->required();

    auto* geo = app.add_subcommand("geodesic", "write a near-geodesic polyline");
    add_common(geo);
    geo->add_option("--x", d.x, "start point, e.g. 0,0")->required();
    geo->add_option("--y", d.y, "end point")->required();

    CheckOpts k;
    auto* check = app.add_subcommand("check", "run a map or domain check");
    add_common(check);
    check->add_option("name", k.name, "qh|cqh|relative|qs|semisolid|solid|uniform|thmD|local-global")
        ->required()
        ->check(CLI::IsMember({"qh", "cqh", "relative", "qs", "semisolid", "solid", "uniform", "thmD", "local-global"}));
    check->add_option("--pairs", k.pairs, "number of sampled pairs (or triples for qs)");
    check->add_option("--margin", k.margin, "minimum boundary distance of samples");
    check->add_option("--M", k.M, "multiplicative constant (qh, cqh)");
    check->add_option("--C", k.C, "additive constant (cqh)");
    check->add_option("--phi", k.phi, "growth function: identity | linear:M | affine:M,C");
    check->add_option("--t0", k.t0, "relative radius bound (relative)");
    check->add_option("--q", k.q, "ball fraction (qs)");
    check->add_option("--center", k.center, "ball center (qs)");
    check->add_option("--centers", k.centers, "maximal-ball centers (local-global)");
    check->add_option("--per-center", k.per_center, "pairs per maximal ball (local-global)");

    ExperimentOpts e;
    auto* exp = app.add_subcommand("experiment", "run a scripted experiment");
    add_common(exp);
    exp->add_option("name", e.name, "example1|example2|lemma1|uniformity")
        ->required()
        ->check(CLI::IsMember({"example1", "example2", "lemma1", "uniformity"}));
    exp->add_option("--t", e.t, "t values (example1)")->delimiter(',');
    exp->add_option("--m", e.m, "m values (example2)")->delimiter(',');
    exp->add_option("--r", e.r, "tube radius (example2)");
    exp->add_option("--bend-deg", e.bend_deg, "bend angle in degrees (example2)");
    exp->add_option("--trials", e.trials, "trials per s (lemma1)");
    exp->add_option("--s", e.s, "s values (lemma1)")->delimiter(',');
    exp->add_option("--pairs", e.pairs, "pairs per domain (uniformity)");

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& pe) {
        err << "usage error: " << pe.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*dist) return cmd_dist(c, d, out);
        if (*geo) return cmd_geodesic(c, d, out);
        if (*check) return cmd_check(c, k, out);
        return cmd_experiment(c, e, out);
    } catch (const ValidationError& ve) {
        err << "validation error at " << ve.field() << ": " << ve.message() << "\n";
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
    }
    return kExitUsage;
}

}  // namespace qhkit::cli
