// Batch front end: signal generation, OOS1 field I/O, forward/inverse
// transforms, inequality verification sweeps (CSV), and a self-test.
//
// Exit codes: 0 success, 1 self-test failure, 2 malformed file,
// 3 invalid transform parameters, 4 invalid check parameters.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oolct/oolct.hpp"

namespace {

using namespace oolct;

OLCTParams parse_axis(const std::string& text, const char* label) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            vals.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw invalid_params(std::string(label) + ": cannot parse '" + item + "'");
        }
    }
    if (vals.size() != 6)
        throw invalid_params(std::string(label) + ": expected a,b,c,d,tau,eta");
    return OLCTParams::make(vals[0], vals[1], vals[2], vals[3], vals[4], vals[5], 1e-9, label);
}

std::uint8_t parse_components(const std::string& text) {
    if (text == "all") return 0xff;
    std::uint8_t mask = 0;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const int c = std::stoi(item);
        if (c < 0 || c > 7) throw std::invalid_argument("components: index out of range 0..7");
        mask |= std::uint8_t(1u << c);
    }
    if (mask == 0) throw std::invalid_argument("components: empty selection");
    return mask;
}

std::array<bool, 3> parse_parity(const std::string& text) {
    if (text.size() != 3) throw std::invalid_argument("parity: expected three of e/o, e.g. oee");
    std::array<bool, 3> odd{};
    for (int k = 0; k < 3; ++k) {
        if (text[k] == 'o')
            odd[k] = true;
        else if (text[k] != 'e')
            throw std::invalid_argument("parity: expected three of e/o, e.g. oee");
    }
    return odd;
}

PhaseConvention parse_convention(const std::string& text) {
    if (text == "unitary") return PhaseConvention::Unitary;
    if (text == "literal") return PhaseConvention::Literal;
    throw std::invalid_argument("convention: expected unitary or literal");
}

TransformPath parse_path(const std::string& text) {
    if (text == "direct") return TransformPath::Direct;
    if (text == "fft") return TransformPath::Fft;
    if (text == "closed_form") return TransformPath::ClosedForm;
    throw std::invalid_argument("path: expected direct, fft or closed_form");
}

void echo_field_meta(const OctField3D& f) {
    for (int k = 0; k < 3; ++k) {
        std::cout << "n" << k + 1 << "=" << f.grid.n(k) << "\n";
        std::cout << "dx" << k + 1 << "=" << format_double(f.grid.dx(k)) << "\n";
    }
}

// ---------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------

bool selftest_table(const std::string& fault) {
    // independent transcription of the standard octonion multiplication table
    int expected[8][8] = {
        {1, 2, 3, 4, 5, 6, 7, 8},     {2, -1, 4, -3, 6, -5, -8, 7},
        {3, -4, -1, 2, 7, 8, -5, -6}, {4, 3, -2, -1, 8, -7, 6, -5},
        {5, -6, -7, -8, -1, 2, 3, 4}, {6, 5, -8, 7, -2, -1, -4, 3},
        {7, 8, 5, -6, -3, 4, -1, -2}, {8, -7, 6, 5, -4, -3, 2, -1},
    };
    if (fault == "table") expected[3][5] = -expected[3][5];  // fault-injection hook
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            const Octonion p = oct_mul(Octonion::unit(r), Octonion::unit(c));
            const int v = expected[r][c];
            const int m = std::abs(v) - 1;
            const double sg = v < 0 ? -1.0 : 1.0;
            for (int i = 0; i < 8; ++i)
                if (p.s[i] != (i == m ? sg : 0.0)) return false;
        }
    return true;
}

bool selftest_lemma1() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const Quaternion a{u(rng), u(rng), u(rng), u(rng)};
        const Quaternion b{u(rng), u(rng), u(rng), u(rng)};
        for (const auto& [lhs, rhs] : lemma1_identities(a, b))
            for (int i = 0; i < 8; ++i)
                if (std::abs(lhs.s[i] - rhs.s[i]) > 1e-12) return false;
    }
    return true;
}

OctField3D selftest_field(int n) {
    SignalSpec spec;
    spec.kind = SignalKind::RandomSmooth;
    spec.components = 0xff;
    spec.seed = 7;
    return make_signal(Grid3D::cubic(n, 6.0), spec);
}

bool selftest_parity() {
    const OctField3D f = selftest_field(16);
    const auto parts = parity8(f);
    const double total = std::pow(lp_norm(f, 2.0), 2);
    double sum = 0.0;
    for (const auto& p : parts) sum += std::pow(lp_norm(p, 2.0), 2);
    if (std::abs(sum - total) > 1e-12 * total) return false;
    auto [fm, fn] = local_pair_split(f);
    const double pair_sum = std::pow(lp_norm(fm, 2.0), 2) + std::pow(lp_norm(fn, 2.0), 2);
    return std::abs(pair_sum - total) <= 1e-12 * total;
}

bool selftest_paths() {
    const OctField3D f = selftest_field(16);
    const OLCTParamsTriple Ps[2] = {
        OLCTParamsTriple::fourier(),
        {OLCTParams::make(1.0, 1.0, 1.0, 2.0, 0.5, -0.3),
         OLCTParams::make(0.5, -1.0, 1.0, 0.0, -0.2, 0.1),
         OLCTParams::make(2.0, 1.0, 1.0, 1.0, 0.3, 0.7)},
    };
    for (const auto& P : Ps) {
        const OctField3D direct = oolct3d(f, P);
        const OctField3D closed =
            oolct3d(f, P, {PhaseConvention::Unitary, TransformPath::ClosedForm, {}});
        const OctField3D fast = oolct3d(f, P, {PhaseConvention::Unitary, TransformPath::Fft, {}});
        if (rel_l2_error(closed, direct) > 1e-8) return false;
        if (rel_l2_error(fast, direct) > 1e-8) return false;
    }
    return true;
}

bool selftest_roundtrip() {
    const OctField3D f = selftest_field(16);
    const OLCTParamsTriple P{OLCTParams::make(1.0, 1.0, 1.0, 2.0, 0.5, -0.3),
                             OLCTParams::make(0.0, 1.0, -1.0, 0.0, 0.1, 0.2),
                             OLCTParams::make(0.5, -1.0, 1.0, 0.0, 0.0, 0.4)};
    return rel_l2_error(oolct3d_inverse(oolct3d(f, P), P), f) <= 1e-6;
}

int run_selftest(const std::string& fault) {
    bool ok = true;
    const auto report = [&](const char* name, bool pass) {
        std::cout << (pass ? "PASS " : "FAIL ") << name << "\n";
        ok = ok && pass;
    };
    report("table", selftest_table(fault));
    report("lemma1", selftest_lemma1());
    report("parity", selftest_parity());
    report("paths", selftest_paths());
    report("roundtrip", selftest_roundtrip());
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"octonion offset linear canonical transform toolkit"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "generate a test signal as an OOS1 field file");
    std::string gen_out, gen_kind = "gaussian", gen_components = "0", gen_parity = "oee";
    int gen_n = 32;
    double gen_halfwidth = 8.0, gen_sigma = 1.0, gen_beta = 0.5;
    std::uint64_t gen_seed = 1;
    gen->add_option("--out", gen_out, "output file")->required();
    gen->add_option("--kind", gen_kind,
                    "gaussian | chirped_gaussian | parity_probe | random_smooth");
    gen->add_option("--n", gen_n, "samples per axis (even)");
    gen->add_option("--halfwidth", gen_halfwidth, "half extent of the sampled box");
    gen->add_option("--sigma", gen_sigma, "gaussian width");
    gen->add_option("--components", gen_components, "component list 0..7 or 'all'");
    gen->add_option("--seed", gen_seed, "seed for random_smooth");
    gen->add_option("--beta", gen_beta, "chirp rate for chirped_gaussian");
    gen->add_option("--parity", gen_parity, "parity pattern for parity_probe, e.g. oee");

    // --- transform / invert ---
    std::string tr_in, tr_out, tr_a1, tr_a2, tr_a3, tr_path = "direct", tr_conv = "unitary";
    std::string tr_reference;
    const auto add_transform_options = [&](CLI::App* cmd, bool with_reference) {
        cmd->add_option("--in", tr_in, "input OOS1 file")->required();
        cmd->add_option("--out", tr_out, "output OOS1 file")->required();
        cmd->add_option("--A1", tr_a1, "axis-1 parameters a,b,c,d,tau,eta")->required();
        cmd->add_option("--A2", tr_a2, "axis-2 parameters a,b,c,d,tau,eta")->required();
        cmd->add_option("--A3", tr_a3, "axis-3 parameters a,b,c,d,tau,eta")->required();
        cmd->add_option("--path", tr_path, "direct | fft | closed_form");
        cmd->add_option("--convention", tr_conv, "unitary | literal");
        if (with_reference)
            cmd->add_option("--reference", tr_reference,
                            "original signal file; prints roundtrip_rel_err");
    };
    auto* tr = app.add_subcommand("transform", "forward transform of an OOS1 field");
    add_transform_options(tr, false);
    auto* inv = app.add_subcommand("invert", "inverse transform of an OOS1 field");
    add_transform_options(inv, true);

    // --- verify ---
    auto* ver = app.add_subcommand("verify", "evaluate uncertainty-inequality reports as CSV");
    std::string ver_in, ver_a1, ver_a2, ver_a3, ver_check = "all", ver_csv = "-";
    std::string ver_path = "direct", ver_conv = "unitary";
    double ver_alpha = 0.5, ver_p = 1.5, ver_ball_r = 1.0;
    ver->add_option("--in", ver_in, "input OOS1 file")->required();
    ver->add_option("--A1", ver_a1, "axis-1 parameters a,b,c,d,tau,eta")->required();
    ver->add_option("--A2", ver_a2, "axis-2 parameters a,b,c,d,tau,eta")->required();
    ver->add_option("--A3", ver_a3, "axis-3 parameters a,b,c,d,tau,eta")->required();
    ver->add_option("--check", ver_check, "pitt | log | hy | local | energy | all");
    ver->add_option("--alpha", ver_alpha, "moment exponent for pitt/local");
    ver->add_option("--p", ver_p, "Lebesgue exponent for hy, in [1,2]");
    ver->add_option("--mask-ball-r", ver_ball_r, "radius of the frequency-ball set E");
    ver->add_option("--csv", ver_csv, "CSV output path, '-' for stdout");
    ver->add_option("--path", ver_path, "direct | fft | closed_form");
    ver->add_option("--convention", ver_conv, "unitary | literal");

    // --- selftest ---
    auto* st = app.add_subcommand("selftest", "run the embedded invariant suite");
    std::string st_fault;
    st->add_option("--inject-fault", st_fault, "test hook: corrupt a named check group")
        ->group("");  // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gen->parsed()) {
            SignalSpec spec;
            if (gen_kind == "gaussian")
                spec.kind = SignalKind::Gaussian;
            else if (gen_kind == "chirped_gaussian")
                spec.kind = SignalKind::ChirpedGaussian;
            else if (gen_kind == "parity_probe")
                spec.kind = SignalKind::ParityProbe;
            else if (gen_kind == "random_smooth")
                spec.kind = SignalKind::RandomSmooth;
            else
                throw std::invalid_argument("kind: unknown signal kind '" + gen_kind + "'");
            spec.sigma = gen_sigma;
            spec.components = parse_components(gen_components);
            spec.seed = gen_seed;
            spec.chirp_beta = gen_beta;
            spec.parity_odd = parse_parity(gen_parity);
            const Grid3D grid = Grid3D::cubic(gen_n, gen_halfwidth);
            const OctField3D f = make_signal(grid, spec);
            write_oos1(gen_out, f);
            std::cout << "output=" << gen_out << "\n";
            echo_field_meta(f);
            return 0;
        }

        if (tr->parsed() || inv->parsed()) {
            const OLCTParamsTriple P{parse_axis(tr_a1, "A1"), parse_axis(tr_a2, "A2"),
                                     parse_axis(tr_a3, "A3")};
            TransformOptions opts;
            opts.path = parse_path(tr_path);
            opts.convention = parse_convention(tr_conv);
            const OctField3D in = read_oos1(tr_in);
            const OctField3D out =
                tr->parsed() ? oolct3d(in, P, opts) : oolct3d_inverse(in, P, opts);
            write_oos1(tr_out, out);
            std::cout << "command=" << (tr->parsed() ? "transform" : "invert") << "\n";
            std::cout << "input=" << tr_in << "\n";
            std::cout << "output=" << tr_out << "\n";
            std::cout << "path=" << to_string(opts.path) << "\n";
            std::cout << "convention=" << to_string(opts.convention) << "\n";
            for (int k = 0; k < 3; ++k)
                std::cout << "b" << k + 1 << "=" << format_double(P.axis(k).b) << "\n";
            echo_field_meta(out);
            if (inv->parsed() && !tr_reference.empty()) {
                const OctField3D ref = read_oos1(tr_reference);
                std::cout << "roundtrip_rel_err=" << format_double(rel_l2_error(out, ref)) << "\n";
            }
            return 0;
        }

        if (ver->parsed()) {
            const OLCTParamsTriple P{parse_axis(ver_a1, "A1"), parse_axis(ver_a2, "A2"),
                                     parse_axis(ver_a3, "A3")};
            TransformOptions opts;
            opts.path = parse_path(ver_path);
            opts.convention = parse_convention(ver_conv);
            const OctField3D f = read_oos1(ver_in);
            const Grid3D wgrid = olct_conjugate_grid(f.grid, P);

            const auto local_at = [&](double alpha) {
                const VoxelMask E = ball_mask(wgrid, ver_ball_r);
                return local_check(f, P, alpha, E, opts);
            };
            std::vector<InequalityReport> reports;
            if (ver_check == "energy")
                reports.push_back(energy_check(f, P, opts));
            else if (ver_check == "pitt")
                reports.push_back(pitt_check(f, P, ver_alpha, opts));
            else if (ver_check == "log")
                reports.push_back(log_check(f, P, opts));
            else if (ver_check == "hy")
                reports.push_back(hy_check(f, P, ver_p, opts));
            else if (ver_check == "local")
                reports.push_back(local_at(ver_alpha));
            else if (ver_check == "all") {
                // --alpha drives pitt; the local rows fall back to a valid
                // exponent when the requested one is outside their domain
                const double local_alpha =
                    (ver_alpha > 0.0 && ver_alpha != 1.0) ? ver_alpha : 0.5;
                reports.push_back(energy_check(f, P, opts));
                reports.push_back(pitt_check(f, P, ver_alpha, opts));
                reports.push_back(log_check(f, P, opts));
                reports.push_back(hy_check(f, P, ver_p, opts));
                reports.push_back(local_at(local_alpha));
                reports.push_back(local_at(local_alpha < 1.0 ? 2.0 : 0.5));
            } else {
                throw invalid_check("check: unknown check '" + ver_check + "'");
            }

            std::string csv = csv_header();
            csv += '\n';
            for (const auto& r : reports) {
                csv += csv_row(r);
                csv += '\n';
            }
            if (ver_csv == "-") {
                std::cout << csv;
            } else {
                std::ofstream out(ver_csv, std::ios::binary);
                if (!out) throw file_format_error("cannot open for writing: " + ver_csv);
                out << csv;
            }
            return 0;
        }

        if (st->parsed()) return run_selftest(st_fault);
    } catch (const file_format_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const invalid_check& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const invalid_params& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
