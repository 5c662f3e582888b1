// hopfkit command-line front end. Exit codes: 0 success, 1 I/O or parse
// error, 2 domain error. Errors are reported as {"error": code, "detail": ...}.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hopfkit.hpp"

using namespace hopfkit;
using io::Json;

namespace {

struct Options {
    std::string complex_path, map_path, target_path, cycle_path, curve_path, out_path, svg_path, spec_text;
    std::string format = "json";
    std::string rule = "smallest";
    bool min_l1 = false;
    bool verify = false;
    std::optional<int> t1, t2;
    // bounds
    std::optional<long long> bounds_N;
    std::optional<double> volume, mt_C;
    // tube
    double epsilon = 0, theta = 0;
    std::optional<long long> q;
    long long q_max = 1000;
    std::optional<double> c, C;
    // family / growth
    int example = 1;
    int N = 0;
    int N_max = 30;
};

void emit(const Options& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
    } else {
        io::write_text_file(o.out_path, text);
    }
}

void require_path(const std::string& p, const char* flag) {
    if (p.empty()) fail(ErrorCode::ParseError, std::string("missing required option ") + flag);
}

VertexRule parse_rule(const std::string& r) {
    if (r == "smallest") return VertexRule::Smallest;
    if (r == "largest") return VertexRule::Largest;
    if (r == "middle") return VertexRule::Middle;
    fail(ErrorCode::ParseError, "--rule must be smallest, largest or middle");
}

AnosovSpec parse_spec(const std::string& text) {
    AnosovSpec s;
    if (text.empty()) return s;
    std::stringstream in(text);
    std::string item;
    std::size_t k = 0;
    while (std::getline(in, item, ',')) {
        if (k >= 4) fail(ErrorCode::ParseError, "--spec takes four integers a,b,c,d");
        try {
            std::size_t used = 0;
            s.m[k] = std::stol(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "--spec entry is not an integer: '" + item + "'");
        }
        ++k;
    }
    if (k != 4) fail(ErrorCode::ParseError, "--spec takes four integers a,b,c,d");
    return s;
}

std::shared_ptr<const Complex3> load_shared(const std::string& path) {
    return std::make_shared<const Complex3>(io::load_complex(path));
}

// The target comes from --target, or from a "target" complex embedded in the map file.
SimplicialMap load_map(const Options& o) {
    require_path(o.complex_path, "--complex");
    require_path(o.map_path, "--map");
    const Json mj = io::read_json_file(o.map_path);
    std::shared_ptr<const Complex3> target;
    if (!o.target_path.empty()) {
        target = load_shared(o.target_path);
    } else if (mj.is_object() && mj.contains("target")) {
        target = std::make_shared<const Complex3>(io::complex_from_json(mj.at("target")));
    } else {
        fail(ErrorCode::ParseError, "no target complex: pass --target or embed \"target\" in the map file");
    }
    return io::map_from_json(mj, load_shared(o.complex_path), target);
}

Chain load_chain(const std::string& path, const Complex3& c) {
    Chain z = io::chain_from_json(io::read_json_file(path));
    io::require_chain_fits(z, c);
    return z;
}

int cmd_validate(const Options& o) {
    require_path(o.complex_path, "--complex");
    const Complex3 c = io::load_complex(o.complex_path);
    const auto v = validate_closed_oriented(c);
    Json j;
    j["ok"] = v.ok;
    j["dimension"] = c.dimension();
    j["simplex_counts"] = {c.simplex_count(0), c.simplex_count(1), c.simplex_count(2), c.simplex_count(3)};
    j["offending"] = v.offending;
    j["diagnostic"] = v.diagnostic;
    emit(o, io::dump(j));
    return v.ok ? 0 : 2;
}

int cmd_homology(const Options& o) {
    require_path(o.complex_path, "--complex");
    const Complex3 c = io::load_complex(o.complex_path);
    emit(o, io::dump(io::homology_report_json(homology_summary(c), spanning_genus_report(c))));
    return 0;
}

int cmd_fill(const Options& o) {
    require_path(o.complex_path, "--complex");
    require_path(o.cycle_path, "--cycle");
    const Complex3 c = io::load_complex(o.complex_path);
    const Chain y = load_chain(o.cycle_path, c);
    Json j;
    if (o.min_l1) {
        const auto m = fill_cycle_min_l1(y, c);
        j["filling"] = io::chain_to_json(m.z);
        j["norm_l1"] = io::rational_json(m.norm);
        j["method"] = m.method == FillMethod::Network ? "network" : "simplex";
    } else {
        const Chain z = fill_cycle_any(y, c);
        j["filling"] = io::chain_to_json(z);
        j["norm_l1"] = io::rational_json(z.norm_l1());
    }
    j["cycle_norm_l1"] = io::rational_json(y.norm_l1());
    emit(o, io::dump(j));
    return 0;
}

int cmd_hopf(const Options& o) {
    const SimplicialMap f = load_map(o);
    HopfOptions opt;
    opt.t1 = o.t1;
    opt.t2 = o.t2;
    opt.rule = parse_rule(o.rule);
    const auto r = hopf_invariant_report(f, opt);
    Json j;
    j["hopf"] = io::rational_json(r.value);
    j["t1"] = r.t1;
    j["t2"] = r.t2;
    j["checks"] = r.checks;
    emit(o, io::dump(j));
    return 0;
}

int cmd_degree(const Options& o) {
    const SimplicialMap f = load_map(o);
    emit(o, io::dump(Json{{"degree", degree(f)}}));
    return 0;
}

int cmd_linking(const Options& o) {
    require_path(o.complex_path, "--complex");
    require_path(o.cycle_path, "--cycle");
    require_path(o.curve_path, "--curve");
    const Complex3 c = io::load_complex(o.complex_path);
    const Chain y1 = load_chain(o.cycle_path, c);
    const DualCurve y2 = io::dual_curve_from_json(io::read_json_file(o.curve_path));
    emit(o, io::dump(Json{{"linking", io::rational_json(linking_number(y1, y2, c))}}));
    return 0;
}

int cmd_bounds(const Options& o) {
    require_path(o.complex_path, "--complex");
    const Complex3 c = io::load_complex(o.complex_path);
    const auto fb = filling_constant_bound(c);
    Json j;
    j["rank_r"] = fb.rank_r;
    j["inverse_entry_bound_E_squared"] = io::integer_json(fb.inverse_entry_bound_E_squared);
    j["inverse_entry_bound_E"] = io::integer_json(fb.inverse_entry_bound_E);
    j["fill_ratio_bound"] = io::rational_json(fb.fill_ratio_bound);
    j["hopf_size_upper_bound"] = io::rational_json(hopf_size_upper_bound(c));
    if (o.bounds_N) {
        const double V = o.volume.value_or(static_cast<double>(c.simplex_count(3)));
        j["milnor_thurston"] = {{"N", *o.bounds_N}, {"V", V}, {"C", o.mt_C.value_or(1.0)},
                                {"degree_bound", milnor_thurston_degree_bound(*o.bounds_N, V, o.mt_C.value_or(1.0))}};
    }
    j["normalized_constants"] = true;
    emit(o, io::dump(j));
    return 0;
}

std::string tube_table(const TubeReport& r, const TubeParams& p) {
    std::ostringstream s;
    s << std::setprecision(6);
    s << "epsilon " << p.epsilon << "  theta " << p.theta << "  R in [" << r.R_lower << ", " << r.R_upper << "]\n";
    s << "best approximation " << r.best_approx.p << "/" << r.best_approx.q << "  N_w " << r.N_w << "\n\n";
    s << std::left << std::setw(16) << "branch" << std::setw(16) << "quantity" << std::setw(16) << "threshold"
      << "selected\n";
    auto row = [&](TubeBranch b, const std::string& quantity, double threshold) {
        s << std::setw(16) << to_string(b) << std::setw(16) << quantity << std::setw(16) << threshold
          << (r.branch == b ? "*" : "") << "\n";
    };
    std::ostringstream qs, hs;
    if (p.q) {
        qs << *p.q;
    } else {
        qs << "inf";
    }
    hs << std::setprecision(6) << r.hopf_size_lower;
    row(TubeBranch::TorsionOrder, qs.str(), r.order_threshold);
    row(TubeBranch::HopfSize, hs.str(), r.hopf_threshold);
    row(TubeBranch::Volume, "-", r.volume_threshold);
    s << "\nnormalized units (c = " << p.constants.c << ", C = " << p.constants.C << ")\n";
    return s.str();
}

int cmd_tube(const Options& o) {
    TubeParams p;
    p.epsilon = o.epsilon;
    p.theta = o.theta;
    p.q = o.q;
    p.q_max = o.q_max;
    p.constants.c = o.c.value_or(1.0);
    p.constants.C = o.C.value_or(1.0);
    const auto r = tube_report(p);
    if (o.format == "table") {
        emit(o, tube_table(r, p));
        return 0;
    }
    if (o.format != "json") fail(ErrorCode::ParseError, "tube --format must be json or table");
    Json j = io::tube_report_json(r);
    if (!o.c || !o.C) j["normalized_constants"] = true;
    emit(o, io::dump(j));
    return 0;
}

int cmd_family(const Options& o) {
    const AnosovSpec spec = parse_spec(o.spec_text);
    Json manifest;
    std::string complex_text;
    if (o.example == 1) {
        const auto inst = example1_build(o.N, spec);
        manifest["N"] = inst.N;
        manifest["predicted_linking"] = io::integer_json(inst.predicted_linking);
        manifest["tet_count"] = inst.tet_count;
        if (o.verify) manifest["measured_linking"] = io::rational_json(linking_number(inst.tube1, inst.tube2, inst.complex));
        complex_text = io::dump(io::complex_to_json(inst.complex));
    } else if (o.example == 2) {
        const auto inst = example2_build(o.N, spec);
        manifest["N"] = inst.N;
        manifest["predicted_linking"] = io::integer_json(inst.predicted_linking);
        manifest["tet_count"] = inst.manifold->simplex_count(3);
        if (o.verify) {
            Json h = Json::array();
            Rational v[3];
            int k = 0;
            for (const SimplicialMap* f : {&inst.f1, &inst.f2, &inst.f3}) h.push_back(io::rational_json(v[k++] = hopf_invariant(*f)));
            manifest["hopf"] = h;
            manifest["hopf_difference"] = io::rational_json(v[2] - v[0] - v[1]);
        }
        complex_text = io::dump(io::complex_to_json(*inst.manifold));
    } else {
        fail(ErrorCode::InvalidParams, "--example must be 1 or 2");
    }
    // With --out the complex goes to the file and the manifest to stdout.
    if (o.out_path.empty()) {
        std::cout << io::dump(Json{{"manifest", manifest}, {"complex", Json::parse(complex_text)}});
    } else {
        io::write_text_file(o.out_path, complex_text);
        std::cout << io::dump(manifest);
    }
    return 0;
}

std::string growth_svg(const GrowthCertificate& g) {
    const double w = 480, h = 320, pad = 40;
    double ymax = 1;
    for (const auto& [N, v] : g.table) ymax = std::max(ymax, std::log10(std::max(1.0, v.get_d())));
    const double xmax = static_cast<double>(g.table.back().first);
    std::ostringstream s;
    s << std::fixed << std::setprecision(2);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    s << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad << "\" y2=\"" << h - pad
      << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << h - pad << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << w / 2 << "\" y=\"" << h - 8 << "\" text-anchor=\"middle\">N</text>\n";
    s << "<text x=\"12\" y=\"" << h / 2 << "\" transform=\"rotate(-90 12 " << h / 2
      << ")\" text-anchor=\"middle\">log10 pairing</text>\n";
    s << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
    for (std::size_t k = 0; k < g.table.size(); ++k) {
        const double x = pad + (w - 2 * pad) * (g.table[k].first - 1) / std::max(1.0, xmax - 1);
        const double y = h - pad - (h - 2 * pad) * std::log10(std::max(1.0, g.table[k].second.get_d())) / ymax;
        s << (k ? " " : "") << x << "," << y;
    }
    s << "\"/>\n</svg>\n";
    return s.str();
}

int cmd_growth(const Options& o) {
    const auto g = growth_certificate(parse_spec(o.spec_text), o.N_max);
    if (!o.svg_path.empty()) io::write_text_file(o.svg_path, growth_svg(g));
    if (o.format == "csv") {
        std::ostringstream s;
        s << "N,pairing\n";
        for (const auto& [N, v] : g.table) s << N << "," << v.get_str() << "\n";
        emit(o, s.str());
        return 0;
    }
    if (o.format != "json") fail(ErrorCode::ParseError, "growth --format must be json or csv");
    Json table = Json::array();
    for (const auto& [N, v] : g.table) table.push_back({{"N", N}, {"pairing", io::integer_json(v)}});
    Json j;
    j["table"] = table;
    j["min_ratio"] = io::rational_json(g.min_ratio);
    j["last_ratio"] = io::rational_json(g.last_ratio);
    j["c_estimate"] = g.c_estimate;
    emit(o, io::dump(j));
    return 0;
}

int report_error(const Error& e) {
    std::cout << io::dump(io::error_json(e));
    return e.code() == ErrorCode::ParseError ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hopfkit: Hopf invariants, linking numbers and filling bounds on simplicial 3-complexes"};
    app.require_subcommand(1, 1);
    Options o;

    auto add_out = [&](CLI::App* s) { s->add_option("--out", o.out_path, "Write the report to this file"); };
    auto add_complex = [&](CLI::App* s) { s->add_option("--complex", o.complex_path, "Complex JSON (hopfkit-complex-v1)"); };

    auto* validate = app.add_subcommand("validate", "Check that a complex is a closed oriented pseudo-manifold");
    add_complex(validate);
    add_out(validate);

    auto* homology = app.add_subcommand("homology", "Betti numbers, H1 torsion order and the lattice report");
    add_complex(homology);
    add_out(homology);

    auto* fill = app.add_subcommand("fill", "Fill a null-homologous 1-cycle by a 2-chain");
    add_complex(fill);
    fill->add_option("--cycle", o.cycle_path, "Chain JSON of the 1-cycle");
    fill->add_flag("--min-l1", o.min_l1, "Return a filling of least L1 norm");
    add_out(fill);

    auto* hopf = app.add_subcommand("hopf", "Hopf invariant of a simplicial map to a surface");
    for (auto* s : {hopf, app.add_subcommand("degree", "Degree of a simplicial map between closed 3-complexes")}) {
        add_complex(s);
        s->add_option("--map", o.map_path, "Map JSON (hopfkit-map-v1)");
        s->add_option("--target", o.target_path, "Target complex JSON; defaults to the map file's \"target\"");
        add_out(s);
    }
    hopf->add_option("--t1", o.t1, "First target triangle");
    hopf->add_option("--t2", o.t2, "Second target triangle");
    hopf->add_option("--rule", o.rule, "Vertex choice rule: smallest, largest or middle");

    auto* linking = app.add_subcommand("linking", "Linking number of a 1-cycle with a dual curve");
    add_complex(linking);
    linking->add_option("--cycle", o.cycle_path, "Chain JSON of the 1-cycle");
    linking->add_option("--curve", o.curve_path, "Dual curve JSON");
    add_out(linking);

    auto* bounds = app.add_subcommand("bounds", "Filling constant, Hopf-size upper bound, Milnor-Thurston bound");
    add_complex(bounds);
    bounds->add_option("--N", o.bounds_N, "Hopf exponent N for the Milnor-Thurston degree bound");
    bounds->add_option("--volume", o.volume, "Volume V (default: tetrahedron count)");
    bounds->add_option("--C", o.mt_C, "Constant C (default 1)");
    add_out(bounds);

    auto* tube = app.add_subcommand("tube", "Margulis tube trichotomy report");
    tube->add_option("--epsilon", o.epsilon, "Core length")->required();
    tube->add_option("--theta", o.theta, "Twist angle in radians");
    tube->add_option("--q", o.q, "Order of the core in homology (absent: infinite)");
    tube->add_option("--qmax", o.q_max, "Largest denominator for the angle approximation");
    tube->add_option("--c", o.c, "Lower constant c (default 1)");
    tube->add_option("--C", o.C, "Upper constant C (default 1)");
    tube->add_option("--format", o.format, "json or table");
    add_out(tube);

    auto* family = app.add_subcommand("family", "Build an exponential-growth family member");
    family->add_option("--example", o.example, "1 or 2");
    family->add_option("--N", o.N, "Power of the torus map");
    family->add_option("--spec", o.spec_text, "Torus map a,b,c,d (default 2,1,1,1)");
    family->add_flag("--verify", o.verify, "Also compute the linking number or Hopf invariants");
    add_out(family);

    auto* growth = app.add_subcommand("growth", "Pairing table of the matrix oracle");
    growth->add_option("--N-max", o.N_max, "Largest N");
    growth->add_option("--spec", o.spec_text, "Torus map a,b,c,d (default 2,1,1,1)");
    growth->add_option("--format", o.format, "json or csv");
    growth->add_option("--svg", o.svg_path, "Also write a log plot");
    add_out(growth);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error(Error(ErrorCode::ParseError, e.what()));
    }

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "validate") return cmd_validate(o);
        if (name == "homology") return cmd_homology(o);
        if (name == "fill") return cmd_fill(o);
        if (name == "hopf") return cmd_hopf(o);
        if (name == "degree") return cmd_degree(o);
        if (name == "linking") return cmd_linking(o);
        if (name == "bounds") return cmd_bounds(o);
        if (name == "tube") return cmd_tube(o);
        if (name == "family") return cmd_family(o);
        if (name == "growth") return cmd_growth(o);
    } catch (const Error& e) {
        return report_error(e);
    } catch (const std::bad_alloc&) {
        return report_error(Error(ErrorCode::TooLarge, "out of memory"));
    } catch (const std::exception& e) {
        return report_error(Error(ErrorCode::ParseError, e.what()));
    }
    return 1;
}
