#pragma once

#include "padicsub/spectral.hpp"
#include "padicsub/subdivision.hpp"
#include "padicsub/transition.hpp"

namespace padicsub {

enum class Verdict { Convergent, Divergent, Inconclusive };

const char* verdict_name(Verdict v);

/// Margin used when comparing float JSR bounds against the threshold p^{1/q};
/// exact nilpotency certificates bypass it.
inline constexpr double kVerdictTol = 1e-9;

inline constexpr long kDefaultDepth = 8;

struct Certificate {
    Verdict verdict = Verdict::Inconclusive;
    long p = 2;
    QValue q = QValue::of(1);
    double threshold = 0.0;  // p^{1/q}
    long depth_requested = 0;
    long depth_achieved = 0;
    std::map<IpElement, GaussianRational> sum_rule_table;
    bool sum_rules_pass = false;
    std::vector<std::string> index_set;
    long dim_w = 0;
    std::optional<JsrBracket> bracket;
    bool budget_exhausted = false;
    std::string failure_reason;
};

struct CheckNecessaryResult {
    bool pass = false;
    std::map<IpElement, GaussianRational> table;
    std::vector<IpElement> failures;
};

/// Exact necessary condition: the sum rule equals 1 at every coset
/// representative.
CheckNecessaryResult check_necessary(const Mask& m);

/// Full convergence certification for the subdivision scheme in L_q:
/// exact sum rules, admissible closure, minimal invariant subspace generated
/// by the difference seeds, then a nilpotency certificate or a JSR bracket
/// compared against p^{1/q}.
Certificate certify(const Mask& m, const QValue& q, long depth = kDefaultDepth,
                    long long budget = kDefaultMulBudget, int threads = 1);

/// The verdict rules, machine-checkable from the certificate alone.
bool certificate_consistent(const Certificate& c);

std::string certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const std::string& text);

}  // namespace padicsub
