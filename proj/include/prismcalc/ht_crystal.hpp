#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prismcalc/pd_series.hpp"

namespace prismcalc {

/// A rational Hodge-Tate crystal presented by the matrix A1 of its
/// endomorphism on K^d.
struct HTCrystal {
    const LocalField* field;
    std::int64_t rank;
    KMatrix a1;
};

/// Coefficients A_0..A_D of the stratification series sum A_n X^n/n!, A_0 = I.
struct StratificationSeries {
    const LocalField* field;
    std::int64_t rank;
    std::int64_t degree;
    std::vector<KMatrix> a;  // size degree+1

    /// View as a matrix-coefficient pd series in `nvars` variables (X = X_{var+1}).
    PDSeries as_pd_series(int nvars, int var) const;
};

struct NhtVerdict {
    bool nearly_ht;
    // e = 1 evidence: residue classes i with chi-bar = prod (x - i*cbar)^{m_i};
    // for a violator the leftover quotient degree is recorded.
    std::vector<std::pair<std::int64_t, std::int64_t>> residue_classes;
    std::int64_t unmatched_degree = 0;
    // e > 1 evidence: all non-leading charpoly coefficients in the maximal ideal
    bool coeffs_in_maximal_ideal = false;
    bool all_roots_integral = false;
    // thresholds report
    Frac vpi_Eprime;
    std::int64_t e_minus_1;
};

struct ConvergenceResult {
    enum class Kind { ConvergedAt, BoundedBelowEvidence, Undetermined };
    Kind kind;
    std::int64_t n = 0;  // certifying step for ConvergedAt / window end otherwise
};

struct CocycleResult {
    bool holds;
    std::int64_t degree;    // checked degree, or first failing total degree
    PDIndex witness{0, 0};  // differing multi-index when failing
    std::optional<KMatrix> witness_diff;
};

/// A_{n+1} = prod_{i=0}^{n} (i E'(pi) + A_1), built left-to-right.
StratificationSeries stratify(const HTCrystal& c, std::int64_t degree);

/// Same coefficients obtained by expanding (1 - E'(pi) X)^(-A1/E'(pi)) termwise
/// through generalized binomial coefficients of Phi = -A1/E'(pi).
StratificationSeries binomial_series(const HTCrystal& c, std::int64_t degree);

/// Decides exactly whether every eigenvalue alpha of A1 (in Kbar) admits an
/// integer i with v_pi(i E'(pi) + alpha) > 0.
NhtVerdict nearly_ht_check(const HTCrystal& c);

ConvergenceResult convergence_oracle(const HTCrystal& c, const Frac& threshold,
                                     std::int64_t budget);

CocycleResult cocycle_check(const StratificationSeries& s);

} // namespace prismcalc
