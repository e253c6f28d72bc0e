#pragma once

#include "opspec/arrangement.hpp"
#include "opspec/classify.hpp"

#include <optional>
#include <set>
#include <variant>

namespace opspec {

enum class CompletionTarget { FLI, FRI, Invertible };

/* Explicit description of the constructed corner C for M_C = (A C; 0 B):
   a partial isometry pairing kernel vectors of B-λ with range-complement
   vectors of A-λ, weight 1 on each pair. The pairing follows the canonical
   diagonal enumeration of both address streams ("pair i-th with i-th");
   finite cases materialize the pairs, the infinite case is the canonical
   bijection between the two streams. */
struct CompletionCertificate {
    CompletionTarget target = CompletionTarget::FLI;
    GQ at_lambda;
    enum class Case { Finite, Infinite } kase = Case::Finite;
    std::vector<std::pair<BasisAddress, BasisAddress>> pairs;  // (kernel of B, cokernel of A)
};

/* Corner choice: the zero operator or a constructed certificate. */
using Corner = std::variant<std::monostate, CompletionCertificate>;

inline Corner corner_zero() { return std::monostate{}; }
inline bool corner_is_zero(const Corner& c) { return std::holds_alternative<std::monostate>(c); }

struct CompletionReport {
    bool decision = false;
    std::set<char> failed_conditions;  // subset of {'a','b','c'}
    enum class Case { None, Finite, Infinite } kase = Case::None;
    std::optional<CompletionCertificate> certificate;  // set when decision and C != 0 needed
    bool zero_suffices = false;                        // decision true with C = 0
};

struct BlockMatrixExpr {
    OperatorExpr a, b;
    Corner c;
};

CompletionReport fli_completable(const OperatorExpr& a, const OperatorExpr& b, const GQ& lambda);
CompletionReport fri_completable(const OperatorExpr& a, const OperatorExpr& b, const GQ& lambda);
CompletionReport invertible_completable(const OperatorExpr& a, const OperatorExpr& b,
                                        const GQ& lambda);

/* Exact point data of M_C - λ where available: C = 0 at any λ (direct sum),
   a constructed C at its certificate λ. Anything else is Deferred. */
struct Deferred {};
using McPointData = std::variant<PointData, Deferred>;
McPointData mc_point_data(const BlockMatrixExpr& m, const GQ& lambda);

enum class CheckVerdict { Holds, Fails, PreconditionViolated };

/* α(B-λ) + β(M_C-λ) = β(B-λ) + β(A-λ), under the hypotheses of the index
   argument (M_C-λ and A-λ left invertible, ranges closed). */
CheckVerdict harte_identity_check(const OperatorExpr& a, const OperatorExpr& b, const Corner& c,
                                  const GQ& lambda);

/* Exceptional set Δ for the intersection-over-all-C corollaries, and the
   full intersection spectrum σ_l(A) ∪ σ_SF∓(B/A) ∪ Δ.
   literal_paper_form evaluates the printed FRI variant (with its suspected
   misprint) instead of the dual-derived one. */
RegionExpr delta_region(const OperatorExpr& a, const OperatorExpr& b, CompletionTarget target,
                        bool literal_paper_form = false);
RegionExpr intersection_spectrum_region(const OperatorExpr& a, const OperatorExpr& b,
                                        CompletionTarget target);
/* The region where the completion decision is yes, for the consistency
   cross-check against the corollary. */
RegionExpr completable_region(const OperatorExpr& a, const OperatorExpr& b,
                              CompletionTarget target);

enum class WForm { Main, Alt };
RegionExpr w_region(const OperatorExpr& a, const OperatorExpr& b, CompletionTarget target,
                    WForm form);

/* Verdicts for oracle-assisted checks. */
struct Verdict {
    enum class Kind { Exact, SampledPass, Fail, Inconclusive } kind = Kind::Exact;
    std::size_t samples = 0;
    std::string detail;

    bool passed() const { return kind == Kind::Exact || kind == Kind::SampledPass; }
};

struct SampleConfig {
    std::size_t n_samples = 25;
    std::uint64_t seed = 1;
    std::vector<int> sizes = {64, 128, 256};
    double tol = 1e-8;
};

/* σ_t(A) ∪ σ_t(B) = σ_t(M_C) ∪ W plus the η identity; exact for C = 0,
   pointwise at the certificate λ and oracle-sampled elsewhere. */
Verdict filling_holes_check(const OperatorExpr& a, const OperatorExpr& b, const Corner& c,
                            CompletionTarget target, const SampleConfig& cfg = {});

/* The two sandwich inclusions around σ_t(M_C). */
Verdict sandwich_check(const OperatorExpr& a, const OperatorExpr& b, const Corner& c,
                       CompletionTarget target, const SampleConfig& cfg = {});

struct CorollaryOutcome {
    bool hypothesis = false;
    Verdict conclusion;  // meaningful only when hypothesis holds
};

CorollaryOutcome no_interior_corollary_check(const OperatorExpr& a, const OperatorExpr& b,
                                             CompletionTarget target);
CorollaryOutcome dong_condition_check(const OperatorExpr& a, const OperatorExpr& b);
CorollaryOutcome s_class_proposition_check(const OperatorExpr& a, const OperatorExpr& b,
                                           CompletionTarget target);

}  // namespace opspec
