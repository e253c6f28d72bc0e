#pragma once

#include "opspec/completion.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace opspec {

using DenseMatrix = Eigen::MatrixXcd;

struct TruncationConfig {
    int cap_per_atom = 8;     // copies materialized for an infinite multiplicity
    int max_total_dim = 4096; // refuse larger truncations

    /* copies materialized for multiplicity m at per-copy size n */
    int copies(const ExtNat& m, int n) const {
        if (m.is_inf()) return std::min(n, cap_per_atom);
        return static_cast<int>(m.value());
    }
};

/* Compression P_n T P_n onto the first n standard coordinates per copy.
   Layout is atom-major, copy-major, coordinate-minor; the bilateral shift
   enumerates Z as 0, 1, -1, 2, -2, ... so its window edges sit at the end of
   each copy block. Infinite multiplicities are capped per the config. */
DenseMatrix truncate(const OperatorExpr& expr, int n, const TruncationConfig& cfg = {});
DenseMatrix truncate(const BlockMatrixExpr& m, int n, const TruncationConfig& cfg = {});

/* All singular values, descending. */
std::vector<double> singular_values(const DenseMatrix& m);

enum class ClosedEvidence { StableGap, ShrinkingGap, Inconclusive };

struct NumericPointData {
    int alpha_est = 0;
    int beta_est = 0;
    ClosedEvidence closed_evidence = ClosedEvidence::Inconclusive;
    bool alpha_capped = false;  // estimate saturated the infinite-multiplicity cap
    bool beta_capped = false;
    bool consistent = true;  // filtered counts agreed across the two largest sizes

    struct PerSize {
        int n = 0;             // requested per-copy size
        int dim = 0;           // total truncation dimension
        int alpha_n = 0, beta_n = 0;
        std::vector<double> small_sigma;
        std::vector<double> edge_mass_right, edge_mass_left;
        double non_null_min = 0.0;
    };
    std::vector<PerSize> per_size;
};

NumericPointData estimate_point_data(const OperatorExpr& expr, const GQ& lambda,
                                     const std::vector<int>& sizes, double tol,
                                     const TruncationConfig& cfg = {});
NumericPointData estimate_point_data(const BlockMatrixExpr& m, const GQ& lambda,
                                     const std::vector<int>& sizes, double tol,
                                     const TruncationConfig& cfg = {});

/* Three-valued numerical evidence that λ is in the resolvent set of the
   given kind; Unknown when the truncation data is inconclusive. */
enum class Evidence { InResolvent, InSpectrum, Unknown };
Evidence oracle_resolvent_evidence(const NumericPointData& est, SpectrumKind kind);

/* Operator-norm residual of the triangular factorization of M_C - λ at
   truncation size n, restricted to the interior coordinates. */
double factorization_identity_check(const OperatorExpr& a, const OperatorExpr& b, const Corner& c,
                                    int n, const GQ& lambda, const TruncationConfig& cfg = {});

}  // namespace opspec
