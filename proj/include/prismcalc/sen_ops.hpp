#pragma once

#include <cstdint>
#include <vector>

#include "prismcalc/ht_crystal.hpp"

namespace prismcalc {

struct WeightClassReport {
    std::int64_t residue;        // integer class i (e = 1 evidence)
    std::int64_t multiplicity;
    Frac distance_lower_bound;   // certified lower bound on v_pi(weight - i)
};

struct SenData {
    const LocalField* field;
    KMatrix phi;                 // -A1 / E'(pi)
    KPoly charpoly_phi;
    NewtonPolygon weight_polygon;
    std::vector<WeightClassReport> residue_report;  // e = 1 only
    // weights whose valuation exceeds the tracked precision: the polygon
    // certifies only v_pi >= unresolved_bound for them
    std::int64_t unresolved_weights = 0;
    Frac unresolved_bound = Frac::infinity();
};

/// Truncated ordinary power series sum_{n<=D} M_n z^n with K-matrix coefficients.
struct FormalMatrixSeries {
    const LocalField* field;
    std::int64_t rank;
    std::int64_t degree;
    std::vector<KMatrix> m;  // size degree+1

    FormalMatrixSeries operator*(const FormalMatrixSeries& o) const;
    FormalMatrixSeries operator-(const FormalMatrixSeries& o) const;
};

bool eq_tracked(const FormalMatrixSeries& a, const FormalMatrixSeries& b);

SenData sen_from_crystal(const HTCrystal& c);

/// U(z) = (1 - z)^Phi = sum_n z^n (-1)^n binom(Phi, n).
FormalMatrixSeries tau_cocycle(const HTCrystal& c, std::int64_t degree);

/// log U = -sum_{k=1}^{D} (I - U)^k / k; requires constant term I.
FormalMatrixSeries series_log(const FormalMatrixSeries& u);

/// -(coefficient of z in log U); equals Phi for U = tau_cocycle(c).
KMatrix recover_sen(const FormalMatrixSeries& u);

/// theta(u lambda') = pi * (E'(pi)/E(0)) * prod_{n>=1} E(pi^{p^n})/E(0),
/// truncated once the tail factors are 1 at precision N (p-adic digits).
KElement theta_u_lambda_prime(const LocalField& field, std::int64_t N);

} // namespace prismcalc
