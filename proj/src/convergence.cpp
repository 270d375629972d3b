#include "padicsub/convergence.hpp"

#include <cmath>

#include "json.hpp"

namespace padicsub {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Convergent: return "Convergent";
        case Verdict::Divergent: return "Divergent";
        default: return "Inconclusive";
    }
}

CheckNecessaryResult check_necessary(const Mask& m) {
    CheckNecessaryResult r;
    r.table = sum_rules(m);
    r.pass = true;
    for (const auto& [eps, v] : r.table) {
        if (v != GaussianRational(1)) {
            r.pass = false;
            r.failures.push_back(eps);
        }
    }
    return r;
}

Certificate certify(const Mask& m, const QValue& q, long depth, long long budget, int threads) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    ValidationReport vr = validate(m);
    if (!vr.pass) throw std::invalid_argument("mask fails validation (sum != p or off-grid support)");

    Certificate c;
    c.p = m.prime();
    c.q = q;
    c.threshold = std::pow(static_cast<double>(m.prime()), q.reciprocal());
    c.depth_requested = depth;

    CheckNecessaryResult nec = check_necessary(m);
    c.sum_rule_table = nec.table;
    c.sum_rules_pass = nec.pass;

    IndexSet K = admissible_closure(m, m.support());
    c.index_set = K.to_strings();

    std::vector<Sequence> gens;
    IpElement zero(m.prime());
    for (const IpElement& g : m.support())
        if (!g.is_zero()) gens.push_back(difference(delta(zero), g));

    std::vector<TransitionMatrix> ops = transition_family(m, K);
    Subspace W = minimal_invariant_subspace(ops, gens);
    c.dim_w = static_cast<long>(W.dimension());

    if (!nec.pass) {
        c.verdict = Verdict::Divergent;
        c.depth_achieved = 0;
        std::string reason = "sum rule fails:";
        for (const auto& eps : nec.failures)
            reason += " value at " + eps.to_string() + " is " +
                      gaussian_to_string(nec.table.at(eps));
        c.failure_reason = reason;
        return c;
    }

    std::vector<ExactMatrix> restricted;
    restricted.reserve(ops.size());
    for (const auto& op : ops) restricted.push_back(restrict_to(op, W));
    MatrixFamily family = MatrixFamily::from(std::move(restricted));

    Budget b{budget};
    JsrBracket bracket = jsr_bracket(family, q, depth, MatrixNorm::MaxRowSum, &b, threads);
    c.bracket = bracket;
    c.depth_achieved = bracket.depth_achieved;
    c.budget_exhausted = bracket.budget_exhausted;

    if (bracket.nilpotency) {
        c.verdict = Verdict::Convergent;
    } else if (bracket.upper < c.threshold - kVerdictTol) {
        c.verdict = Verdict::Convergent;
    } else if (bracket.lower >= c.threshold + kVerdictTol) {
        c.verdict = Verdict::Divergent;
        c.failure_reason = "joint spectral radius lower bound " + std::to_string(bracket.lower) +
                           " reaches the threshold " + std::to_string(c.threshold);
    } else {
        c.verdict = Verdict::Inconclusive;
    }
    return c;
}

bool certificate_consistent(const Certificate& c) {
    // the stored flag must agree with the exact table
    bool table_ok = true;
    for (const auto& [eps, v] : c.sum_rule_table)
        if (v != GaussianRational(1)) table_ok = false;
    if (c.sum_rules_pass != table_ok) return false;

    switch (c.verdict) {
        case Verdict::Convergent:
            if (!c.sum_rules_pass || !c.bracket) return false;
            return c.bracket->nilpotency.has_value() ||
                   c.bracket->upper < c.threshold - kVerdictTol;
        case Verdict::Divergent:
            if (!c.sum_rules_pass) return true;
            return c.bracket && c.bracket->lower >= c.threshold + kVerdictTol;
        default:
            if (!c.sum_rules_pass) return false;  // would have been Divergent
            if (!c.bracket) return false;
            return !(c.bracket->nilpotency.has_value() ||
                     c.bracket->upper < c.threshold - kVerdictTol ||
                     c.bracket->lower >= c.threshold + kVerdictTol);
    }
    return false;
}

namespace {

nlohmann::json gaussian_json(const GaussianRational& v) {
    return {{"re", rational_to_string(v.re)}, {"im", rational_to_string(v.im)}};
}

GaussianRational gaussian_from_json(const nlohmann::json& j) {
    return {parse_rational(j.at("re").get<std::string>()),
            parse_rational(j.at("im").get<std::string>())};
}

}  // namespace

std::string certificate_to_json(const Certificate& c) {
    nlohmann::json j;
    j["verdict"] = verdict_name(c.verdict);
    j["p"] = c.p;
    j["q"] = c.q.to_string();
    j["threshold"] = c.threshold;
    j["depth_requested"] = c.depth_requested;
    j["depth_achieved"] = c.depth_achieved;
    j["sum_rules_pass"] = c.sum_rules_pass;
    nlohmann::json table = nlohmann::json::object();
    for (const auto& [eps, v] : c.sum_rule_table) table[eps.to_string()] = gaussian_json(v);
    j["sum_rules"] = table;
    j["K"] = c.index_set;
    j["dim_W"] = c.dim_w;
    if (c.bracket) {
        nlohmann::json b;
        b["lower"] = c.bracket->lower;
        b["upper"] = c.bracket->upper;
        b["depth_achieved"] = c.bracket->depth_achieved;
        b["norm"] = matrix_norm_name(c.bracket->norm_used);
        if (c.bracket->nilpotency) b["nilpotency_index"] = *c.bracket->nilpotency;
        j["bracket"] = b;
    } else {
        j["bracket"] = nullptr;
    }
    j["budget_exhausted"] = c.budget_exhausted;
    j["failure_reason"] = c.failure_reason;
    return j.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Certificate c;
    std::string v = j.at("verdict").get<std::string>();
    c.verdict = v == "Convergent"   ? Verdict::Convergent
                : v == "Divergent" ? Verdict::Divergent
                                   : Verdict::Inconclusive;
    c.p = j.at("p").get<long>();
    c.q = QValue::parse(j.at("q").get<std::string>());
    c.threshold = j.at("threshold").get<double>();
    c.depth_requested = j.at("depth_requested").get<long>();
    c.depth_achieved = j.at("depth_achieved").get<long>();
    c.sum_rules_pass = j.at("sum_rules_pass").get<bool>();
    for (const auto& [key, val] : j.at("sum_rules").items()) {
        mpq_class r = parse_rational(key);
        long gamma = r == 0 ? 0 : integer_valuation(r.get_den(), c.p);
        c.sum_rule_table.emplace(IpElement::canonical(c.p, r.get_num(), gamma),
                                 gaussian_from_json(val));
    }
    c.index_set = j.at("K").get<std::vector<std::string>>();
    c.dim_w = j.at("dim_W").get<long>();
    if (!j.at("bracket").is_null()) {
        const auto& b = j.at("bracket");
        JsrBracket br;
        br.q = c.q;
        br.depth_requested = c.depth_requested;
        br.depth_achieved = b.at("depth_achieved").get<long>();
        br.lower = b.at("lower").get<double>();
        br.upper = b.at("upper").get<double>();
        br.norm_used = b.at("norm").get<std::string>() == "max-column-sum"
                           ? MatrixNorm::MaxColSum
                           : MatrixNorm::MaxRowSum;
        if (b.contains("nilpotency_index")) br.nilpotency = b.at("nilpotency_index").get<long>();
        c.bracket = br;
    }
    c.budget_exhausted = j.at("budget_exhausted").get<bool>();
    c.failure_reason = j.at("failure_reason").get<std::string>();
    return c;
}

}  // namespace padicsub
