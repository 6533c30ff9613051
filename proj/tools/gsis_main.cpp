// gsis: command-line front end for the graph shift-invariant space toolkit.
//
// Subcommands run analysis pipelines over a spectral decomposition obtained
// from one input source: --complete N, --circulant N q1,q2,..., explicit
// shift matrix files, or a --load'ed cache written by `decompose --save`.
// Reports are emitted as JSON (default), CSV, or text; all randomized
// internals are seeded, so identical inputs and seed give byte-identical
// output. The GSIS_TOL_OVERRIDE environment variable may hold a JSON object
// of tolerance overrides applied when shift files are ingested.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gsis/errors.hpp"
#include "gsis/fgsis.hpp"
#include "gsis/linalg.hpp"
#include "gsis/filters.hpp"
#include "gsis/io.hpp"
#include "gsis/rkhs.hpp"
#include "gsis/spaces.hpp"
#include "gsis/special.hpp"
#include "gsis/spectral.hpp"
#include "gsis/uncertainty.hpp"

using json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
    int complete = 0;
    std::vector<std::string> circulant;  // {N, "q1,q2,..."}
    std::vector<std::string> shift_files;
    std::string graph_file;
    std::string load_path;
    double scale = 1.0;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string output;
};

void add_source_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--complete", o.complete, "use the complete graph on N vertices");
    cmd->add_option("--circulant", o.circulant,
                    "use the circulant graph C(N, Q): pass N and a comma list of offsets")
        ->expected(2);
    cmd->add_option("--shifts", o.shift_files, "shift matrix files (one per shift)");
    cmd->add_option("--graph", o.graph_file, "graph file used to validate shift support");
    cmd->add_option("--load", o.load_path, "decomposition cache written by `decompose --save`");
    cmd->add_option("--scale", o.scale,
                    "uniform scaling applied to the shifts (frame analysis needs "
                    "max joint-frequency norm below one)");
    cmd->add_option("--seed", o.seed, "seed for all randomized internals");
    cmd->add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--output", o.output, "write the report to this file instead of stdout");
}

int parse_int(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw gsis::ParseError(std::string(what) + ": not an integer: '" + s + "'");
    }
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_int(item, what));
    if (out.empty()) throw gsis::ParseError(std::string(what) + ": empty list");
    return out;
}

json matrix_to_json(const gsis::Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

gsis::Matrix matrix_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw gsis::ParseError(std::string(what) + ": expected a nested array");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    gsis::Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols)
            throw gsis::ParseError(std::string(what) + ": ragged rows");
        for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

json vector_to_json(const gsis::Vector& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

gsis::ToleranceConfig env_tolerances() {
    gsis::ToleranceConfig tol;
    if (const char* env = std::getenv("GSIS_TOL_OVERRIDE"))
        tol = gsis::apply_tolerance_overrides(tol, env);
    return tol;
}

void save_cache(const std::string& path, const gsis::SpectralDecomposition& sd) {
    json j;
    j["kind"] = "gsis-decomposition-cache";
    j["n"] = sd.n;
    j["d"] = sd.d;
    json shifts = json::array();
    for (const auto& s : sd.shifts) shifts.push_back(matrix_to_json(s));
    j["shifts"] = std::move(shifts);
    j["u"] = matrix_to_json(sd.source.u);
    j["lambda"] = matrix_to_json(sd.source.lambda);
    std::ofstream out(path);
    if (!out) throw gsis::ParseError("cannot write cache file " + path);
    out << j.dump(2) << "\n";
}

gsis::SpectralDecomposition load_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gsis::ParseError("cannot read cache file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw gsis::ParseError("cache file " + path + ": " + e.what());
    }
    if (j.value("kind", "") != "gsis-decomposition-cache")
        throw gsis::ParseError("cache file " + path + " has the wrong kind marker");
    std::vector<gsis::Matrix> mats;
    for (const auto& s : j.at("shifts")) mats.push_back(matrix_from_json(s, "cache shifts"));
    gsis::ShiftSet ss = gsis::validate_shifts(mats, std::nullopt, env_tolerances());
    gsis::JointEigen je;
    je.u = matrix_from_json(j.at("u"), "cache u");
    je.lambda = matrix_from_json(j.at("lambda"), "cache lambda");
    double worst = 0.0;
    for (size_t l = 0; l < mats.size(); ++l) {
        gsis::Matrix rebuilt =
            je.u * je.lambda.row(static_cast<int>(l)).asDiagonal() * je.u.transpose();
        worst = std::max(worst, gsis::max_abs(mats[l] - rebuilt));
    }
    je.residual = worst;
    je.orth_residual =
        gsis::max_abs(je.u.transpose() * je.u - gsis::Matrix::Identity(je.u.rows(), je.u.rows()));
    return gsis::build_decomposition(ss, je);
}

gsis::SpectralDecomposition resolve_decomposition(const CommonOpts& o) {
    const int sources = (o.complete > 0 ? 1 : 0) + (o.circulant.empty() ? 0 : 1) +
                        (o.shift_files.empty() ? 0 : 1) + (o.load_path.empty() ? 0 : 1);
    if (sources != 1)
        throw gsis::ParseError(
            "choose exactly one input source: --complete, --circulant, --shifts, or --load");

    gsis::SpectralDecomposition sd;
    if (o.complete > 0) {
        sd = gsis::complete_graph_decomposition(o.complete);
    } else if (!o.circulant.empty()) {
        const int n = parse_int(o.circulant[0], "--circulant N");
        std::vector<int> q = parse_int_list(o.circulant[1], "--circulant offsets");
        sd = gsis::circulant_decomposition(gsis::make_circulant_spec(n, q)).sd;
    } else if (!o.shift_files.empty()) {
        std::vector<gsis::Matrix> mats;
        for (const auto& f : o.shift_files) mats.push_back(gsis::read_matrix_file(f));
        std::optional<gsis::Graph> graph;
        if (!o.graph_file.empty()) graph = gsis::read_graph_file(o.graph_file);
        sd = gsis::decompose(gsis::validate_shifts(mats, graph, env_tolerances()), o.seed);
    } else {
        sd = load_cache(o.load_path);
    }
    if (o.scale != 1.0) sd = gsis::scale_decomposition(sd, o.scale);
    return sd;
}

// ---------------------------------------------------------------- reports

void flatten(const json& j, const std::string& prefix, std::vector<std::string>& out,
             const std::string& sep) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            flatten(value, prefix.empty() ? key : prefix + "." + key, out, sep);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", out, sep);
    } else {
        out.push_back(prefix + sep + j.dump());
    }
}

void emit(const json& rep, const CommonOpts& o) {
    std::ostringstream body;
    if (o.format == "json") {
        body << rep.dump(2) << "\n";
    } else {
        std::vector<std::string> lines;
        flatten(rep, "", lines, o.format == "csv" ? "," : " = ");
        for (const auto& line : lines) body << line << "\n";
    }
    if (o.output.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(o.output);
        if (!out) throw gsis::ParseError("cannot write output file " + o.output);
        out << body.str();
    }
}

json decomposition_report(const gsis::SpectralDecomposition& sd) {
    json rep;
    rep["n"] = sd.n;
    rep["d"] = sd.d;
    rep["band_count"] = sd.band_count;
    json freqs = json::array();
    for (const auto& g : sd.frequencies) freqs.push_back(vector_to_json(g));
    rep["frequencies"] = std::move(freqs);
    rep["multiplicities"] = sd.multiplicities;
    rep["max_gamma_norm"] = sd.max_gamma_norm;
    rep["group_tol"] = sd.group_tol;
    rep["residual"] = sd.source.residual;
    rep["orth_residual"] = sd.source.orth_residual;
    return rep;
}

// ---------------------------------------------------------------- commands

struct DecomposeOpts {
    CommonOpts common;
    std::string save_path;
};

void run_decompose(const DecomposeOpts& o) {
    gsis::SpectralDecomposition sd = resolve_decomposition(o.common);
    json rep;
    rep["command"] = "decompose";
    rep["decomposition"] = decomposition_report(sd);
    if (!o.save_path.empty()) {
        save_cache(o.save_path, sd);
        rep["saved"] = o.save_path;
    }
    emit(rep, o.common);
}

struct GftOpts {
    CommonOpts common;
    std::string signal_file;
    int lowpass_k = 0;
};

void run_gft(const GftOpts& o) {
    gsis::SpectralDecomposition sd = resolve_decomposition(o.common);
    gsis::Vector x = gsis::read_signal_file(o.signal_file);
    gsis::GftSignal hat = gsis::gft(sd, x);
    json rep;
    rep["command"] = "gft";
    json comps = json::array();
    json energies = json::array();
    for (int m = 0; m < sd.band_count; ++m) {
        comps.push_back(vector_to_json(hat.components[static_cast<size_t>(m)]));
        energies.push_back(hat.band_energy(m));
    }
    rep["components"] = std::move(comps);
    rep["band_energies"] = std::move(energies);
    rep["total_energy"] = hat.total_energy();
    if (o.lowpass_k > 0) {
        gsis::LowpassResult lp = gsis::lowpass(sd, x, o.lowpass_k);
        json jlp;
        jlp["k"] = o.lowpass_k;
        jlp["approximation"] = vector_to_json(lp.approximation);
        jlp["bound"] = lp.bound;
        jlp["error"] = lp.error;
        rep["lowpass"] = std::move(jlp);
    }
    emit(rep, o.common);
}

struct FilterOpts {
    CommonOpts common;
    std::string matrix_file;
    std::string signal_file;
};

const char* tag_name(gsis::FilterTag tag) {
    switch (tag) {
        case gsis::FilterTag::polynomial: return "polynomial";
        case gsis::FilterTag::shift_invariant: return "shift_invariant";
        default: return "general";
    }
}

void run_filter(const FilterOpts& o) {
    gsis::SpectralDecomposition sd = resolve_decomposition(o.common);
    gsis::Matrix h = gsis::read_matrix_file(o.matrix_file);
    gsis::Filter f = gsis::make_filter(sd, h);
    json rep;
    rep["command"] = "filter";
    rep["tag"] = tag_name(f.tag);
    if (f.tag == gsis::FilterTag::polynomial) rep["multipliers"] = f.multipliers;
    gsis::BasisInvarianceReport bi = gsis::basis_invariance_check(sd, h, 8, o.common.seed);
    rep["basis_invariant"] = bi.invariant;
    rep["basis_deviation"] = bi.max_deviation;
    if (!o.signal_file.empty()) {
        gsis::Vector x = gsis::read_signal_file(o.signal_file);
        if (x.size() != sd.n)
            throw gsis::DimensionMismatch("signal length does not match the decomposition");
        rep["applied"] = vector_to_json(f.h * x);
    }
    emit(rep, o.common);
}

struct SpaceOpts {
    CommonOpts common;
    std::string basis_file;
};

void run_space(const SpaceOpts& o) {
    gsis::SpectralDecomposition sd = resolve_decomposition(o.common);
    gsis::Subspace v = gsis::make_subspace(gsis::read_matrix_file(o.basis_file));
    gsis::Gsis u = gsis::analyze_space(sd, v);
    json rep;
    rep["command"] = "space";
    rep["dim"] = u.dim();
    rep["dim_fn"] = u.dim_fn;
    rep["spectrum"] = u.spectrum;
    auto bands = gsis::bandlimited_test(u);
    rep["bandlimited"] = bands ? json(*bands) : json(nullptr);
    rep["shifted_equality"] = gsis::shifted_equality_test(u);
    rep["kernel_tag"] = tag_name(gsis::kernel_from_gsis(u).kernel.tag);
    emit(rep, o.common);
}

struct FrameOpts {
    CommonOpts common;
    std::string phi_file;
};

void run_frame(const FrameOpts& o) {
    gsis::SpectralDecomposition sd = resolve_decomposition(o.common);
    gsis::GeneratorFamily phi = gsis::make_generators(gsis::read_matrix_file(o.phi_file));
    gsis::FiberSet fs = gsis::fiber_analysis(sd, phi);
    json rep;
    rep["command"] = "frame";
    rep["r"] = fs.r;
    rep["fiber_ranks"] = fs.rank;
    rep["coupling"] = matrix_to_json(gsis::frame_coupling(sd));
    gsis::FrameBounds fb = gsis::frame_bounds(sd, phi);
    rep["bounds"] = json{{"lower", fb.lower}, {"upper", fb.upper}};
    rep["bessel"] = gsis::bessel_bound(sd, phi);
    rep["operator_si"] = gsis::frame_operator_si_test(fs);
    rep["operator_tag"] = tag_name(gsis::frame_operator(sd, phi).tag);
    rep["dual_exists"] = gsis::dual_frame(sd, phi, o.common.seed).exists;
    gsis::RieszResult rr = gsis::riesz_check(sd, phi, o.common.seed);
    json jr;
    jr["is_riesz"] = rr.is_riesz;
    if (rr.is_riesz) {
        jr["lower"] = rr.lower;
        jr["upper"] = rr.upper;
    }
    rep["riesz"] = std::move(jr);
    emit(rep, o.common);
}

void run_dual(const FrameOpts& o) {
    gsis::SpectralDecomposition sd = resolve_decomposition(o.common);
    gsis::GeneratorFamily phi = gsis::make_generators(gsis::read_matrix_file(o.phi_file));
    gsis::DualFrameResult dual = gsis::dual_frame(sd, phi, o.common.seed);
    json rep;
    rep["command"] = "dual";
    rep["exists"] = dual.exists;
    if (dual.exists) {
        rep["dual_generators"] = matrix_to_json(dual.dual);
        rep["reconstruction_residual"] = dual.reconstruction_residual;
        rep["cross_band_max"] = dual.cross_band_max;
        rep["idempotent_residual"] = dual.idempotent_residual;
        rep["span_match"] = dual.span_match;
    }
    emit(rep, o.common);
}

struct UncertaintyOpts {
    CommonOpts common;
    std::vector<int> y;      // 0-based vertices
    std::vector<int> omega;  // 1-based bands
    int exhaustive_limit = 64;
};

void run_uncertainty(const UncertaintyOpts& o) {
    gsis::SpectralDecomposition sd = resolve_decomposition(o.common);
    json rep;
    rep["command"] = "uncertainty";
    if (!o.y.empty() || !o.omega.empty()) {
        std::vector<int> omega0;
        for (int m : o.omega) {
            if (m < 1) throw gsis::ParseError("--Omega entries are 1-based band indices");
            omega0.push_back(m - 1);
        }
        gsis::SpatialFourierPair pair = gsis::alpha_pair(sd, o.y, omega0);
        json jp;
        jp["alpha"] = pair.alpha;
        jp["dim_omega"] = pair.dim_omega;
        jp["annihilating"] = pair.alpha < 1.0;
        if (pair.alpha < 1.0) {
            jp["c1"] = 1.0 / (1.0 - pair.alpha);
            jp["c2"] = std::sqrt(std::max(pair.dim_omega - pair.alpha * pair.alpha, 0.0)) /
                       (1.0 - pair.alpha);
        }
        rep["pair"] = std::move(jp);
    }
    gsis::CoherenceNorms c = gsis::coherence_norms(sd, o.exhaustive_limit, o.common.seed);
    json jc;
    jc["p_star"] = c.p_star;
    jc["p_star2"] = c.p_star2;
    jc["p_inf"] = c.p_inf;
    jc["lower_bound_only"] = c.lower_bound_only;
    rep["coherence"] = std::move(jc);
    emit(rep, o.common);
}

int exit_code_for(const gsis::Error& e) {
    if (dynamic_cast<const gsis::ParseError*>(&e)) return 2;
    if (dynamic_cast<const gsis::ValidationError*>(&e)) return 3;
    if (dynamic_cast<const gsis::PreconditionError*>(&e)) return 4;
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph shift-invariant space toolkit"};
    app.require_subcommand(1);

    DecomposeOpts dec;
    auto* cmd_dec = app.add_subcommand("decompose", "compute the spectral decomposition");
    add_source_options(cmd_dec, dec.common);
    cmd_dec->add_option("shift_files", dec.common.shift_files, "shift matrix files");
    cmd_dec->add_option("--save", dec.save_path, "write a decomposition cache");
    cmd_dec->callback([&] { run_decompose(dec); });

    GftOpts gft_o;
    auto* cmd_gft = app.add_subcommand("gft", "graph Fourier transform of a signal");
    add_source_options(cmd_gft, gft_o.common);
    cmd_gft->add_option("signal", gft_o.signal_file, "signal file (one value per line)")
        ->required();
    cmd_gft->add_option("--lowpass", gft_o.lowpass_k,
                        "also compute the K-band lowpass approximation");
    cmd_gft->callback([&] { run_gft(gft_o); });

    FilterOpts fil;
    auto* cmd_fil = app.add_subcommand("filter", "classify (and apply) a filter matrix");
    add_source_options(cmd_fil, fil.common);
    cmd_fil->add_option("matrix", fil.matrix_file, "filter matrix file")->required();
    cmd_fil->add_option("--signal", fil.signal_file, "apply the filter to this signal");
    cmd_fil->callback([&] { run_filter(fil); });

    SpaceOpts spc;
    auto* cmd_spc = app.add_subcommand("space", "analyze a shift-invariant subspace");
    add_source_options(cmd_spc, spc.common);
    cmd_spc->add_option("basis", spc.basis_file, "matrix whose columns span the subspace")
        ->required();
    cmd_spc->callback([&] { run_space(spc); });

    FrameOpts frm;
    auto* cmd_frm = app.add_subcommand("frame", "frame analysis of a shifted generator system");
    add_source_options(cmd_frm, frm.common);
    cmd_frm->add_option("generators", frm.phi_file, "generator matrix file (one per column)")
        ->required();
    cmd_frm->callback([&] { run_frame(frm); });

    FrameOpts dua;
    auto* cmd_dua = app.add_subcommand("dual", "shift-invariant dual frame construction");
    add_source_options(cmd_dua, dua.common);
    cmd_dua->add_option("generators", dua.phi_file, "generator matrix file (one per column)")
        ->required();
    cmd_dua->callback([&] { run_dual(dua); });

    UncertaintyOpts unc;
    auto* cmd_unc = app.add_subcommand("uncertainty", "spatial-Fourier uncertainty quantities");
    add_source_options(cmd_unc, unc.common);
    cmd_unc->add_option("--Y", unc.y, "vertex set (0-based, comma separated)")
        ->delimiter(',');
    cmd_unc->add_option("--Omega", unc.omega, "band set (1-based, comma separated)")
        ->delimiter(',');
    cmd_unc->add_option("--exhaustive-limit", unc.exhaustive_limit,
                        "largest N for the exact coherence-norm search");
    cmd_unc->callback([&] { run_uncertainty(unc); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const gsis::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
