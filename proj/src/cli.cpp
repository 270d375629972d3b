#include "padicsub/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "padicsub/convergence.hpp"
#include "padicsub/smoothness.hpp"
#include "padicsub/wavelet.hpp"

namespace padicsub {

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
}

std::string fmt(double x) {
    std::ostringstream ss;
    ss.precision(17);
    ss << x;
    return ss.str();
}

struct CommonOpts {
    std::string mask_path;
    long long budget = -1;  // -1: per-command default
    int threads = 0;        // 0: machine parallelism
    int resolved_threads() const {
        if (threads > 0) return threads;
        unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1 : static_cast<int>(hc);
    }
    long long mul_budget() const { return budget < 0 ? kDefaultMulBudget : budget; }
    std::size_t cell_budget() const {
        return budget < 0 ? kDefaultCellBudget : static_cast<std::size_t>(budget);
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("mask", o.mask_path, "mask JSON file")->required();
    cmd->add_option("--budget", o.budget,
                    "resource budget (matrix products, or cells for cascade/wavelet)");
    cmd->add_option("--threads", o.threads, "worker threads (default: machine parallelism)");
}

std::pair<long, long> parse_levels(const std::string& text) {
    auto pos = text.find(':');
    if (pos == std::string::npos)
        throw std::invalid_argument("--levels expects a range like 0:6");
    return {std::stol(text.substr(0, pos)), std::stol(text.substr(pos + 1))};
}

int verdict_exit(const Certificate& c) {
    switch (c.verdict) {
        case Verdict::Convergent: return kExitOk;
        case Verdict::Divergent: return kExitDivergent;
        default: return c.budget_exhausted ? kExitBudget : kExitInconclusive;
    }
}

void print_certificate(const Certificate& c) {
    std::cout << "verdict: " << verdict_name(c.verdict) << "\n";
    std::cout << "q = " << c.q.to_string() << ", threshold p^(1/q) = " << fmt(c.threshold)
              << "\n";
    std::cout << "sum rules " << (c.sum_rules_pass ? "pass" : "fail") << ":";
    for (const auto& [eps, v] : c.sum_rule_table)
        std::cout << "  [" << eps.to_string() << "] = " << gaussian_to_string(v);
    std::cout << "\n";
    std::cout << "admissible set size " << c.index_set.size() << ", dim W = " << c.dim_w << "\n";
    if (c.bracket) {
        if (c.bracket->nilpotency)
            std::cout << "nilpotency index " << *c.bracket->nilpotency << " (rho_q = 0 exactly)\n";
        else
            std::cout << "rho_q bracket [" << fmt(c.bracket->lower) << ", "
                      << fmt(c.bracket->upper) << "] at depth " << c.bracket->depth_achieved
                      << "\n";
    }
    if (!c.failure_reason.empty()) std::cout << "reason: " << c.failure_reason << "\n";
    if (c.budget_exhausted) std::cout << "budget exhausted before the requested depth\n";
}

int cmd_validate(const CommonOpts& o) {
    Mask m = load_mask(o.mask_path);
    ValidationReport r = validate(m);
    std::cout << "coefficient sum = " << gaussian_to_string(r.coefficient_sum) << " (expected "
              << m.prime() << ")\n";
    for (const auto& a : r.off_grid)
        std::cout << "off-grid support point: " << a.to_string() << "\n";
    std::cout << (r.pass ? "valid" : "invalid") << "\n";
    return r.pass ? kExitOk : kExitInputError;
}

int cmd_certify(const CommonOpts& o, const std::string& q_text, long depth,
                const std::string& out_path) {
    Mask m = load_mask(o.mask_path);
    Certificate c =
        certify(m, QValue::parse(q_text), depth, o.mul_budget(), o.resolved_threads());
    print_certificate(c);
    if (!out_path.empty()) write_file(out_path, certificate_to_json(c));
    return verdict_exit(c);
}

int cmd_cascade(const CommonOpts& o, long iters, const std::string& csv_path) {
    Mask m = load_mask(o.mask_path);
    BallStepFunction f = cascade_iterate(m, iters, o.cell_budget());
    std::string csv = step_function_csv(f);
    if (csv_path.empty())
        std::cout << csv;
    else {
        write_file(csv_path, csv);
        std::cout << "cascade iterate " << iters << ": " << f.cell_count() << " cells at level "
                  << f.level() << " -> " << csv_path << "\n";
    }
    return kExitOk;
}

int cmd_smoothness(const CommonOpts& o, const std::string& q_text, long iters,
                   const std::string& levels, long depth, const std::string& json_path,
                   const std::string& csv_path) {
    Mask m = load_mask(o.mask_path);
    auto [lo, hi] = parse_levels(levels);
    SmoothnessReport r =
        critical_exponent_estimate(m, QValue::parse(q_text), iters, lo, hi, depth,
                                   o.mul_budget(), o.resolved_threads());
    if (r.infinite)
        std::cout << "critical exponent: infinite\n";
    else
        std::cout << "critical exponent estimate: " << fmt(r.exponent) << " (max fit residual "
                  << fmt(r.fit_residual) << ")\n";
    if (r.zero_level) std::cout << "moduli vanish exactly from level " << *r.zero_level << "\n";
    if (!json_path.empty()) write_file(json_path, smoothness_to_json(r));
    if (!csv_path.empty()) write_file(csv_path, smoothness_to_csv(r));
    return kExitOk;
}

int cmd_jsr(const CommonOpts& o, const std::string& q_text, long depth,
            const std::string& out_path) {
    Mask m = load_mask(o.mask_path);
    QValue q = QValue::parse(q_text);
    IndexSet K = admissible_closure(m, m.support());
    std::vector<TransitionMatrix> ops = transition_family(m, K);
    std::vector<Sequence> gens;
    IpElement zero(m.prime());
    for (const IpElement& g : m.support())
        if (!g.is_zero()) gens.push_back(difference(delta(zero), g));
    Subspace W = minimal_invariant_subspace(ops, gens);
    std::vector<ExactMatrix> restricted;
    for (const auto& op : ops) restricted.push_back(restrict_to(op, W));
    MatrixFamily family = MatrixFamily::from(std::move(restricted));
    Budget b{o.mul_budget()};
    JsrBracket br = jsr_bracket(family, q, depth, MatrixNorm::MaxRowSum, &b,
                                o.resolved_threads());
    std::cout << "restricted family: " << family.count() << " operators of dimension "
              << family.dim << "\n";
    if (br.nilpotency)
        std::cout << "nilpotency index " << *br.nilpotency << "; rho_q = 0 exactly\n";
    else
        std::cout << "rho_" << q.to_string() << " bracket [" << fmt(br.lower) << ", "
                  << fmt(br.upper) << "] at depth " << br.depth_achieved << "\n";
    if (!out_path.empty()) {
        std::ostringstream js;
        js << "{\n  \"q\": \"" << q.to_string() << "\",\n  \"lower\": " << fmt(br.lower)
           << ",\n  \"upper\": " << fmt(br.upper) << ",\n  \"depth_achieved\": "
           << br.depth_achieved << ",\n  \"nilpotency_index\": "
           << (br.nilpotency ? std::to_string(*br.nilpotency) : "null")
           << ",\n  \"norm\": \"" << matrix_norm_name(br.norm_used) << "\"\n}\n";
        write_file(out_path, js.str());
    }
    return br.budget_exhausted ? kExitBudget : kExitOk;
}

int cmd_wavelet(const CommonOpts& o, const std::string& out_dir, long cascade_index, long iters,
                const std::string& csv_path) {
    Mask m = load_mask(o.mask_path);
    WaveletMasks w = complete_masks(m);
    UnitarityReport rep = verify_unitary(build_U(mask_coefficient_vector(m), w.wavelets), 1e-9);
    std::cout << "completed " << w.wavelets.size() << " wavelet mask(s); ||U*U - I||_max = "
              << fmt(rep.max_deviation) << "\n";
    std::cout << "orthogonality verified at the coefficient level: unitarity of the "
                 "shifted-mask matrix stands in for the shift inner products\n";
    for (long j = 1; j <= static_cast<long>(w.wavelets.size()); ++j) {
        std::string path = out_dir + "/wavelet_" + std::to_string(j) + ".json";
        write_file(path, wavelet_mask_to_json(w, j));
        std::cout << "wrote " << path << "\n";
    }
    if (cascade_index > 0) {
        BallStepFunction psi = wavelet_cascade(m, w, cascade_index, iters, o.cell_budget());
        std::string csv = step_function_csv(psi);
        if (csv_path.empty())
            std::cout << csv;
        else {
            write_file(csv_path, csv);
            std::cout << "wrote " << csv_path << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

std::string step_function_csv(const BallStepFunction& f) {
    std::vector<std::pair<mpq_class, const mpq_class*>> order;
    order.reserve(f.cell_count());
    for (const auto& [c, v] : f.cells()) order.emplace_back(monna_coordinate(f.prime(), c), &c);
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ostringstream out;
    out << "level,center,monna_x,re,im,abs\n";
    out.precision(17);
    for (const auto& [monna, center] : order) {
        const GaussianRational& v = f.cells().at(*center);
        out << f.level() << "," << rational_to_string(*center) << "," << monna.get_d() << ","
            << v.re.get_d() << "," << v.im.get_d() << "," << std::sqrt(v.abs2().get_d()) << "\n";
    }
    return out.str();
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"p-adic refinement mask analysis"};
    app.require_subcommand(1);

    CommonOpts vo;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check the mask normalization");
    add_common(validate_cmd, vo);

    CommonOpts co;
    std::string c_q = "2", c_out;
    long c_depth = kDefaultDepth;
    CLI::App* certify_cmd = app.add_subcommand("certify", "certify L_q-convergence");
    add_common(certify_cmd, co);
    certify_cmd->add_option("--q", c_q, "integrability exponent (rational or 'inf')");
    certify_cmd->add_option("--depth", c_depth, "enumeration depth for the JSR bracket");
    certify_cmd->add_option("--out", c_out, "write the certificate JSON here");

    CommonOpts ko;
    long k_iters = 4;
    std::string k_csv;
    CLI::App* cascade_cmd = app.add_subcommand("cascade", "render a cascade iterate as CSV");
    add_common(cascade_cmd, ko);
    cascade_cmd->add_option("--iters", k_iters, "number of cascade iterations");
    cascade_cmd->add_option("--csv", k_csv, "output CSV path (stdout when omitted)");

    CommonOpts so;
    std::string s_q = "2", s_levels = "0:6", s_json, s_csv;
    long s_iters = 6, s_depth = kDefaultDepth;
    CLI::App* smooth_cmd = app.add_subcommand("smoothness", "moduli of continuity and exponent");
    add_common(smooth_cmd, so);
    smooth_cmd->add_option("--q", s_q, "integrability exponent (rational or 'inf')");
    smooth_cmd->add_option("--iters", s_iters, "cascade iterations to analyze");
    smooth_cmd->add_option("--levels", s_levels, "level range a:b");
    smooth_cmd->add_option("--depth", s_depth, "certification depth");
    smooth_cmd->add_option("--json", s_json, "write the report JSON here");
    smooth_cmd->add_option("--csv", s_csv, "write the n,omega,E_n table here");

    CommonOpts jo;
    std::string j_q = "2", j_out;
    long j_depth = kDefaultDepth;
    CLI::App* jsr_cmd = app.add_subcommand("jsr", "JSR bracket of the transition family");
    add_common(jsr_cmd, jo);
    jsr_cmd->add_option("--q", j_q, "integrability exponent (rational or 'inf')");
    jsr_cmd->add_option("--depth", j_depth, "enumeration depth");
    jsr_cmd->add_option("--out", j_out, "write the bracket JSON here");

    CommonOpts wo;
    std::string w_dir = ".", w_csv;
    long w_index = 0, w_iters = 4;
    CLI::App* wavelet_cmd = app.add_subcommand("wavelet", "complete the mask to wavelet masks");
    add_common(wavelet_cmd, wo);
    wavelet_cmd->add_option("--out-dir", w_dir, "directory for the wavelet mask files");
    wavelet_cmd->add_option("--cascade", w_index, "also render wavelet psi_j (index j >= 1)");
    wavelet_cmd->add_option("--iters", w_iters, "cascade iterations for the rendering");
    wavelet_cmd->add_option("--csv", w_csv, "CSV path for the rendering");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(vo);
        if (certify_cmd->parsed()) return cmd_certify(co, c_q, c_depth, c_out);
        if (cascade_cmd->parsed()) return cmd_cascade(ko, k_iters, k_csv);
        if (smooth_cmd->parsed())
            return cmd_smoothness(so, s_q, s_iters, s_levels, s_depth, s_json, s_csv);
        if (jsr_cmd->parsed()) return cmd_jsr(jo, j_q, j_depth, j_out);
        if (wavelet_cmd->parsed()) return cmd_wavelet(wo, w_dir, w_index, w_iters, w_csv);
    } catch (const NotConvergent& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDivergent;
    } catch (const CellBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const MulBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace padicsub
