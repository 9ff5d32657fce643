// Command-line front end. Every library operation sits behind a subcommand
// and emits CSV (default) or JSON; output is buffered and only written once
// the computation has succeeded, so a failing run never leaves a partial
// table behind. Exit codes: 0 ok, 2 invalid input, 3 precision exhausted.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alphax/base.hpp"
#include "alphax/basechange.hpp"
#include "alphax/dimension.hpp"
#include "alphax/errors.hpp"
#include "alphax/io.hpp"
#include "alphax/real.hpp"
#include "alphax/stats.hpp"

namespace {

using alphax::Base;
using alphax::BasePair;
using alphax::DigitSeq;
using alphax::Real;
using alphax::validation_error;
using json = nlohmann::ordered_json;

using KvRows = std::vector<std::pair<std::string, std::string>>;

struct GlobalOpts {
    long precision = static_cast<long>(alphax::default_precision());
    int sig_digits = 0;  // 0: full width for the precision
    std::string format = "csv";
    std::string out_path;
};

mpfr_prec_t work_prec(const GlobalOpts& g)
{
    if (g.precision < 64 || g.precision > (1L << 24))
        throw validation_error("--precision must be between 64 and 2^24 bits");
    return static_cast<mpfr_prec_t>(g.precision);
}

std::string fmt(const GlobalOpts& g, const Real& v)
{
    return alphax::format_real(v, g.sig_digits);
}

std::string fmt_double(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

json meta_for(const GlobalOpts& g, const std::string& command)
{
    json meta;
    meta["command"] = command;
    meta["precision_bits"] = g.precision;
    meta["depth"] = nullptr;
    meta["seed"] = nullptr;
    meta["version"] = alphax::kVersion;
    return meta;
}

void deliver(const GlobalOpts& g, const std::string& text)
{
    alphax::write_output(text, g.out_path);
}

// kv output in either format; extend_meta may fill meta["depth"]/["seed"].
template <typename MetaFn>
void emit_kv(const GlobalOpts& g, const std::string& command, const KvRows& rows, MetaFn extend_meta)
{
    if (g.format == "json") {
        json doc;
        doc["meta"] = meta_for(g, command);
        extend_meta(doc["meta"]);
        for (const auto& [k, v] : rows)
            doc[k] = v;
        deliver(g, doc.dump(2) + "\n");
    } else {
        deliver(g, alphax::csv_kv(rows));
    }
}

void emit_kv(const GlobalOpts& g, const std::string& command, const KvRows& rows)
{
    emit_kv(g, command, rows, [](json&) {});
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

long parse_long(const std::string& tok, const char* what)
{
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw validation_error(std::string("bad ") + what + ": '" + tok + "'");
    }
    if (pos != tok.size())
        throw validation_error(std::string("bad ") + what + ": '" + tok + "'");
    return v;
}

std::vector<long> parse_digit_list(const std::string& s)
{
    std::vector<long> out;
    for (const std::string& tok : split(s, ',')) {
        long d = parse_long(tok, "digit");
        if (d < 1)
            throw validation_error("digits must be >= 1, got " + tok);
        out.push_back(d);
    }
    return out;
}

alphax::ProbDist parse_prob_dist(const std::string& s, mpfr_prec_t prec)
{
    std::vector<Real> p;
    for (const std::string& tok : split(s, ','))
        p.emplace_back(tok, prec);
    return alphax::ProbDist(std::move(p));
}

// ---- subcommands ----

struct EncodeOpts {
    std::string alpha;
    std::string x;
    std::size_t digits = alphax::kDefaultDepth;
};

void run_encode(const GlobalOpts& g, const EncodeOpts& o)
{
    const mpfr_prec_t prec = work_prec(g);
    Base base(o.alpha, prec);
    Real x(o.x, prec);
    DigitSeq seq = alphax::encode(x, base, o.digits);
    alphax::PartialValue pv = alphax::decode(seq, base);

    if (g.format == "json") {
        json doc;
        doc["meta"] = meta_for(g, "encode");
        doc["meta"]["depth"] = o.digits;
        doc["digits"] = seq.digits;
        doc["value"] = fmt(g, pv.value);
        doc["error_bound"] = fmt(g, pv.error_bound);
        deliver(g, doc.dump(2) + "\n");
        return;
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < seq.digits.size(); ++i)
        os << (i ? " " : "") << seq.digits[i];
    os << '\n'
       << alphax::csv_kv({{"value", fmt(g, pv.value)}, {"error_bound", fmt(g, pv.error_bound)}});
    deliver(g, os.str());
}

struct DecodeOpts {
    std::string alpha;
    std::string digits;
    bool all_ones = false;
};

void run_decode(const GlobalOpts& g, const DecodeOpts& o)
{
    const mpfr_prec_t prec = work_prec(g);
    Base base(o.alpha, prec);
    DigitSeq seq{parse_digit_list(o.digits),
                 o.all_ones ? alphax::Tail::all_ones : alphax::Tail::truncated};
    alphax::PartialValue pv = alphax::decode(seq, base);
    emit_kv(g, "decode",
            {{"value", fmt(g, pv.value)}, {"error_bound", fmt(g, pv.error_bound)}});
}

struct CylinderOpts {
    std::string alpha;
    std::string digits;
};

void run_cylinder(const GlobalOpts& g, const CylinderOpts& o)
{
    const mpfr_prec_t prec = work_prec(g);
    Base base(o.alpha, prec);
    DigitSeq seq{parse_digit_list(o.digits), alphax::Tail::truncated};
    alphax::CylinderInterval iv = alphax::cylinder_interval(seq, base);
    emit_kv(g, "cylinder",
            {{"lo", fmt(g, iv.lo)}, {"hi", fmt(g, iv.hi)}, {"length", fmt(g, iv.length())}});
}

struct MapOpts {
    std::string alpha;
    std::string x;
    bool inverse = false;
    long i = 1;
};

void run_map(const GlobalOpts& g, const MapOpts& o)
{
    const mpfr_prec_t prec = work_prec(g);
    Base base(o.alpha, prec);
    Real x(o.x, prec);
    if (o.inverse) {
        Real y = alphax::forward_map(o.i, x, base);
        emit_kv(g, "map", {{"value", fmt(g, y)}});
        return;
    }
    alphax::StepResult s = alphax::expansion_step(x, base);
    emit_kv(g, "map",
            {{"digit", std::to_string(s.digit)}, {"value", fmt(g, s.remainder)}});
}

struct StatsOpts {
    std::string alpha;
    std::uint64_t n = 0;
    std::uint64_t seed = 1;
    std::uint64_t orbits = 0;
    int threads = 0;
};

void run_stats(const GlobalOpts& g, const StatsOpts& o)
{
    const mpfr_prec_t prec = work_prec(g);
    Base base(o.alpha, prec);
    alphax::SimConfig cfg;
    cfg.seed = o.seed;
    cfg.n_digits = o.n;
    cfg.n_orbits = o.orbits;
    alphax::DigitStats st = alphax::sim_digit_stats(base, cfg, o.threads);

    KvRows rows;
    rows.emplace_back("n", std::to_string(st.n));
    for (const auto& [d, c] : st.counts) {
        const std::string key = "digit_" + std::to_string(d);
        Real freq = Real(static_cast<unsigned long>(c), prec) /
                    Real(static_cast<unsigned long>(st.n), prec);
        rows.emplace_back(key + "_count", std::to_string(c));
        rows.emplace_back(key + "_freq", fmt(g, freq));
        rows.emplace_back(key + "_freq_theory", fmt(g, alphax::theoretical_frequency(base, d)));
    }
    rows.emplace_back("arithmetic_mean", fmt(g, st.arithmetic_mean));
    rows.emplace_back("arithmetic_mean_theory", fmt(g, alphax::theoretical_arithmetic_mean(base)));
    rows.emplace_back("geometric_mean", fmt(g, alphax::exp(st.log_geometric_mean)));
    rows.emplace_back("geometric_mean_theory", fmt(g, alphax::somos(base.alpha()).value));
    emit_kv(g, "stats", rows, [&](json& meta) { meta["seed"] = o.seed; });
}

struct DimOpts {
    std::string alpha;
    std::string set;
    long prefix = 0;
    std::string dist;
    bool full = false;
    double tol = 1e-12;
};

void run_dim(const GlobalOpts& g, const DimOpts& o)
{
    const mpfr_prec_t prec = work_prec(g);
    Base base(o.alpha, prec);
    const int picked = (!o.set.empty()) + (o.prefix > 0) + (!o.dist.empty()) + o.full;
    if (picked != 1)
        throw validation_error("pick exactly one of --set, --prefix, --dist, --full");

    alphax::DimensionResult r;
    if (!o.set.empty())
        r = alphax::moran_dimension(base, alphax::DigitSet(parse_digit_list(o.set)), o.tol);
    else if (o.prefix > 0)
        r = alphax::prefix_set_dimension(base, o.prefix, o.tol);
    else if (o.full)
        r = alphax::moran_dimension_full(base);
    else
        r = alphax::frequency_set_dimension(base, parse_prob_dist(o.dist, prec));

    emit_kv(g, "dim",
            {{"h", fmt(g, r.h)},
             {"residual", fmt(g, r.residual)},
             {"iterations", std::to_string(r.iterations)},
             {"degenerate", r.degenerate ? "true" : "false"}});
}

struct SomosOpts {
    std::string x;
    std::string grid;
};

void run_somos(const GlobalOpts& g, const SomosOpts& o)
{
    const mpfr_prec_t prec = work_prec(g);
    if (o.x.empty() == o.grid.empty())
        throw validation_error("pick exactly one of --x, --grid");

    if (!o.grid.empty()) {
        const auto parts = split(o.grid, ':');
        if (parts.size() != 3)
            throw validation_error("--grid wants lo:hi:count");
        Real lo(parts[0], prec);
        Real hi(parts[1], prec);
        const long count = parse_long(parts[2], "grid count");
        if (count < 2)
            throw validation_error("--grid needs at least 2 points");
        std::vector<Real> xs;
        xs.reserve(static_cast<std::size_t>(count));
        Real span = hi - lo;
        for (long j = 0; j < count; ++j)
            xs.push_back(lo + span * Real(j, prec) / Real(count - 1, prec));
        const auto pts = alphax::figure1_data(xs);

        std::vector<std::vector<std::string>> rows;
        rows.reserve(pts.size());
        for (const auto& [x, gx] : pts)
            rows.push_back({fmt(g, x), fmt(g, gx)});
        if (g.format == "json") {
            json doc;
            doc["meta"] = meta_for(g, "somos");
            doc["points"] = rows;
            deliver(g, doc.dump(2) + "\n");
        } else {
            deliver(g, alphax::csv_columns({"x", "G"}, rows));
        }
        return;
    }

    Real x(o.x, prec);
    alphax::SeriesValue gv = alphax::somos(x);
    emit_kv(g, "somos",
            {{"G", fmt(g, gv.value)},
             {"tail_bound", fmt(g, gv.tail_bound)},
             {"identity_residual", fmt(g, alphax::somos_identity_check(x))}});
}

struct GammaOpts {
    std::string x;
    std::uint64_t x1_terms = alphax::EulerGammaOptions{}.x1_terms;
    int threads = 0;
};

void run_gamma(const GlobalOpts& g, const GammaOpts& o)
{
    const mpfr_prec_t prec = work_prec(g);
    alphax::EulerGammaOptions opt;
    opt.x1_terms = o.x1_terms;
    opt.threads = o.threads;
    alphax::SeriesValue r = alphax::euler_gamma_fn(Real(o.x, prec), opt);
    emit_kv(g, "gamma", {{"gamma", fmt(g, r.value)}, {"tail_bound", fmt(g, r.tail_bound)}});
}

struct BasechangeOpts {
    std::string alpha;
    std::string beta;
    std::string x;
    bool graph = false;
    long depth = 0;  // 0: default / auto
    bool auto_depth = false;
    std::size_t resolution = 10000;
    long self_affine = 0;
    bool box_slope = false;
    bool residual = false;
    int threads = 0;
};

void run_basechange(const GlobalOpts& g, const BasechangeOpts& o)
{
    const mpfr_prec_t prec = work_prec(g);
    BasePair pair{Base(o.alpha, prec), Base(o.beta, prec)};
    std::size_t depth = o.depth > 0 ? static_cast<std::size_t>(o.depth) : alphax::kDefaultDepth;
    if (o.auto_depth)
        depth = alphax::auto_depth(pair);

    if (o.graph) {
        alphax::GraphSample gs = alphax::graph_sample(pair, depth, o.resolution, o.threads);

        KvRows analysis;
        for (long i = 1; i <= o.self_affine; ++i) {
            alphax::SelfAffineReport rep = alphax::self_affine_check(gs, pair, i);
            const std::string key = "self_affine_" + std::to_string(i);
            analysis.emplace_back(key + "_max_deviation", fmt(g, rep.max_deviation));
            analysis.emplace_back(key + "_bound", fmt(g, rep.bound_at_max));
            analysis.emplace_back(key + "_within_bounds", rep.within_bounds ? "true" : "false");
        }
        if (o.box_slope)
            analysis.emplace_back("box_count_slope", fmt_double(alphax::box_count_slope(gs)));

        std::vector<std::vector<std::string>> rows;
        rows.reserve(gs.points.size());
        for (const auto& [x, y] : gs.points)
            rows.push_back({fmt(g, x), fmt(g, y)});

        if (g.format == "json") {
            json doc;
            doc["meta"] = meta_for(g, "basechange");
            doc["meta"]["depth"] = depth;
            for (const auto& [k, v] : analysis)
                doc[k] = v;
            doc["points"] = rows;
            deliver(g, doc.dump(2) + "\n");
            return;
        }
        const std::string points_csv = alphax::csv_columns({"x", "y"}, rows);
        if (!g.out_path.empty()) {
            alphax::write_output(points_csv, g.out_path);
            if (!analysis.empty())
                std::cout << alphax::csv_kv(analysis);
        } else {
            std::ostringstream os;
            for (const auto& [k, v] : analysis)
                os << "# " << k << ' ' << v << '\n';
            os << points_csv;
            std::cout << os.str();
        }
        return;
    }

    if (o.x.empty())
        throw validation_error("basechange needs --x or --graph");
    Real x(o.x, prec);
    alphax::PartialValue pv = alphax::base_change(x, pair, depth);
    KvRows rows{{"value", fmt(g, pv.value)},
                {"error_bound", fmt(g, pv.error_bound)},
                {"depth", std::to_string(depth)}};
    if (o.residual)
        rows.emplace_back("functional_eq_residual",
                          fmt(g, alphax::functional_equation_residual(x, pair, depth)));
    emit_kv(g, "basechange", rows, [&](json& meta) { meta["depth"] = depth; });
}

struct ProbeOpts {
    std::string alpha;
    std::string beta;
    std::string x;
    std::size_t nmax = 100;
};

void run_probe(const GlobalOpts& g, const ProbeOpts& o)
{
    const mpfr_prec_t prec = work_prec(g);
    BasePair pair{Base(o.alpha, prec), Base(o.beta, prec)};
    alphax::QuotientProbe qp = alphax::derivative_probe(Real(o.x, prec), pair, o.nmax);

    if (g.format == "json") {
        json doc;
        doc["meta"] = meta_for(g, "probe");
        doc["meta"]["depth"] = o.nmax;
        doc["x"] = fmt(g, qp.x);
        doc["log10_quotients"] = qp.log10_quotients;
        deliver(g, doc.dump(2) + "\n");
        return;
    }
    std::vector<std::vector<std::string>> rows;
    rows.reserve(qp.log10_quotients.size());
    for (std::size_t n = 0; n < qp.log10_quotients.size(); ++n)
        rows.push_back({std::to_string(n + 1), fmt_double(qp.log10_quotients[n])});
    deliver(g, alphax::csv_columns({"n", "log10_quotient"}, rows));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"alpha-expansions: digits, orbit statistics, dimensions, base change"};
    app.require_subcommand(1);
    app.set_version_flag("--version", alphax::kVersion);

    GlobalOpts g;
    app.add_option("--precision", g.precision, "working precision in bits")->capture_default_str();
    app.add_option("--sig-digits", g.sig_digits, "decimal digits to print (default: full precision)");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", g.out_path, "write output to this file instead of stdout");

    EncodeOpts enc;
    auto* c_enc = app.add_subcommand("encode", "digit expansion of x in base alpha");
    c_enc->fallthrough();
    c_enc->add_option("--alpha", enc.alpha, "base, > 1")->required();
    c_enc->add_option("--x", enc.x, "point in (0, 1]")->required();
    c_enc->add_option("--digits", enc.digits, "how many digits")->capture_default_str();
    c_enc->callback([&] { run_encode(g, enc); });

    DecodeOpts dec;
    auto* c_dec = app.add_subcommand("decode", "value of a digit sequence");
    c_dec->fallthrough();
    c_dec->add_option("--alpha", dec.alpha, "base, > 1")->required();
    c_dec->add_option("--digits", dec.digits, "comma-separated digits, e.g. 3,1,1")->required();
    c_dec->add_flag("--all-ones", dec.all_ones, "treat the tail after the listed digits as all 1s");
    c_dec->callback([&] { run_decode(g, dec); });

    CylinderOpts cyl;
    auto* c_cyl = app.add_subcommand("cylinder", "interval of points starting with the given digits");
    c_cyl->fallthrough();
    c_cyl->add_option("--alpha", cyl.alpha, "base, > 1")->required();
    c_cyl->add_option("--digits", cyl.digits, "comma-separated digits")->required();
    c_cyl->callback([&] { run_cylinder(g, cyl); });

    MapOpts mp;
    auto* c_map = app.add_subcommand(
        "map", "apply the expansion shift T, or an inverse branch T_i with --inverse");
    c_map->fallthrough();
    c_map->add_option("--alpha", mp.alpha, "base, > 1")->required();
    c_map->add_option("--x", mp.x, "point in (0, 1]")->required();
    c_map->add_flag("--inverse", mp.inverse,
                    "apply T_i(x) = ((alpha-1) x + 1) / alpha^i instead of the shift");
    c_map->add_option("--i", mp.i, "branch index for --inverse, >= 1")->capture_default_str();
    c_map->callback([&] { run_map(g, mp); });

    StatsOpts st;
    auto* c_st = app.add_subcommand("stats", "digit statistics over seeded random orbits");
    c_st->fallthrough();
    c_st->add_option("--alpha", st.alpha, "base, > 1")->required();
    c_st->add_option("--n", st.n, "total digits to tally")->required();
    c_st->add_option("--seed", st.seed, "RNG seed")->capture_default_str();
    c_st->add_option("--orbits", st.orbits, "orbit count (0: auto split)")->capture_default_str();
    c_st->add_option("--threads", st.threads, "worker threads (0: all)");
    c_st->callback([&] { run_stats(g, st); });

    DimOpts dim;
    auto* c_dim = app.add_subcommand("dim", "Hausdorff dimension of digit-restricted sets");
    c_dim->fallthrough();
    c_dim->add_option("--alpha", dim.alpha, "base, > 1")->required();
    c_dim->add_option("--set", dim.set, "admissible digits, e.g. 1,2");
    c_dim->add_option("--prefix", dim.prefix, "digits restricted to {1..n}");
    c_dim->add_option("--dist", dim.dist, "digit frequencies, e.g. 0.5,0.5");
    c_dim->add_flag("--full", dim.full, "no restriction (dimension 1)");
    c_dim->add_option("--tol", dim.tol, "residual tolerance for the Moran solve")
        ->capture_default_str();
    c_dim->callback([&] { run_dim(g, dim); });

    SomosOpts som;
    auto* c_som = app.add_subcommand("somos", "limit geometric mean G(x) of the digits");
    c_som->fallthrough();
    c_som->add_option("--x", som.x, "evaluation point, > 1");
    c_som->add_option("--grid", som.grid, "lo:hi:count for a table of (x, G(x))");
    c_som->callback([&] { run_somos(g, som); });

    GammaOpts gam;
    auto* c_gam = app.add_subcommand("gamma", "gamma(x) = sum x^{i-1} (1/i - log((i+1)/i))");
    c_gam->fallthrough();
    c_gam->add_option("--x", gam.x, "evaluation point in (0, 1]")->required();
    c_gam->add_option("--x1-terms", gam.x1_terms, "partial-sum length at x = 1")
        ->capture_default_str();
    c_gam->add_option("--threads", gam.threads, "worker threads (0: all)");
    c_gam->callback([&] { run_gamma(g, gam); });

    BasechangeOpts bc;
    auto* c_bc = app.add_subcommand("basechange", "digit-transcoding map between two bases");
    c_bc->fallthrough();
    c_bc->add_option("--alpha", bc.alpha, "source base, > 1")->required();
    c_bc->add_option("--beta", bc.beta, "target base, > 1")->required();
    c_bc->add_option("--x", bc.x, "evaluate f(x) for one point");
    c_bc->add_flag("--graph", bc.graph, "sample the whole graph of f on (0, 1]");
    c_bc->add_flag("--residual", bc.residual,
                   "also report the functional-equation residual at x");
    auto* depth_opt = c_bc->add_option("--depth", bc.depth, "digit truncation depth");
    c_bc->add_flag("--auto-depth", bc.auto_depth, "pick depth for a 1e-12 truncation tail")
        ->excludes(depth_opt);
    c_bc->add_option("--resolution", bc.resolution, "graph grid points")->capture_default_str();
    c_bc->add_option("--self-affine", bc.self_affine,
                     "check f(G_i x) = G_i' f(x) on the graph for i = 1..this");
    c_bc->add_flag("--box-slope", bc.box_slope, "box-counting slope of the sampled graph");
    c_bc->add_option("--threads", bc.threads, "worker threads (0: all)");
    c_bc->callback([&] { run_basechange(g, bc); });

    ProbeOpts pr;
    auto* c_pr = app.add_subcommand("probe", "log10 difference quotients along cylinders at x");
    c_pr->fallthrough();
    c_pr->add_option("--alpha", pr.alpha, "source base, > 1")->required();
    c_pr->add_option("--beta", pr.beta, "target base, > 1")->required();
    c_pr->add_option("--x", pr.x, "point in (0, 1]")->required();
    c_pr->add_option("--nmax", pr.nmax, "cylinder depth to probe down to")->capture_default_str();
    c_pr->callback([&] { run_probe(g, pr); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const alphax::precision_exhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
