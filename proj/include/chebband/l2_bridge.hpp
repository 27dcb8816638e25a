#pragma once

#include "chebband/asymptotics.hpp"
#include "chebband/remez.hpp"

namespace chebband {

/// Weight of the form  extra(x) * R(x) * [augmented: (a_{2l} - x)] / (h(x) rho(x))
/// on the interior of the bands, where R is the monic degree-(l-1) polynomial
/// vanishing at one endpoint of each gap: eps_j = +1 picks a_{2j+1}, -1 picks
/// a_{2j}.  R/h > 0 on the open bands for every sign pattern.
struct EdgeClassWeight {
    std::vector<int> eps;           // size l-1
    bool augmented = false;         // multiply by (a_{2l} - x)
    Weight rho = Weight::unit();    // positive polynomial divisor
    Weight extra = Weight::unit();  // extra positive factor

    Poly R(const IntervalSystem& sys) const;
    int zeros_in_band(const IntervalSystem& sys, int j) const;
};

/// Monic three-term recurrence by the Stieltjes procedure with singular
/// quadrature; norm2[k] = ||P_k||^2 for the monic P_k.
struct OrthoBasis {
    std::vector<double> a;      // size n
    std::vector<double> b2;     // size n (b2[0] unused)
    std::vector<double> norm2;  // size n+1
    double monic(int k, double x) const;
    double orthonormal(int k, double x) const;
};

OrthoBasis orthonormal_polys(const PotentialTable& T, const EdgeClassWeight& w, int n);
/// Plain positive weight integrated without the edge substitution.
OrthoBasis orthonormal_polys(const PotentialTable& T, const std::function<double(double)>& w,
                             int n);

/// E_{n-1,2}(x^n; w) = ||P_n||^2, the squared L2 distance of x^n to P_{n-1}.
double l2_deviation(const PotentialTable& T, const EdgeClassWeight& w, int n);
double l2_deviation(const PotentialTable& T, const std::function<double(double)>& w, int n);

/// Locates the in-gap points x_{j,n} carried by the orthonormal polynomial
/// p_n for the weight R/(h rho): branch-point values of R p_n^2 / (2 rho)
/// interpolate the monic gap polynomial g_(n); verifies the Pell identity by
/// crossing the recurrence route with the phase route.
struct PellReport {
    std::vector<double> x;       // located gap points, one per gap
    std::vector<int> delta;      // sheet signs
    double fit_residual = 0.0;   // relative defect of the branch-point fit
    double pell_residual = 0.0;  // max |R1^2 - H R2^2 - 1| / max(1, R1^2) on probes
    bool located = true;
};

PellReport pell_verify(const PotentialTable& T, const EdgeClassWeight& w, int n);

struct BridgeReport {
    double lhs = 0.0;                  // Remez deviation at degree N
    int N = 0;                         // 2n, or 2n+1 for the augmented variant
    std::vector<std::vector<int>> eps_patterns;
    std::vector<double> rhs_all;       // E_{n-1,2} per pattern
    int argmax = -1;
    std::vector<int> eps_sigma;        // pattern selected by the parity rule
    bool argmax_matches_sigma = false;
    double rhs = 0.0;                  // max over patterns
    double ratio = 0.0;                // lhs / rhs
    std::vector<double> x_located;     // gap points from the argmax weight
    std::vector<double> c_inversion;   // gap points of the degree-N problem
    double x_vs_c = 0.0;               // max distance (interior points)
};

/// Compare the degree-2n (or 2n+1) weighted minimax deviation against the
/// half-degree L2 deviations over the 2^(l-1) edge-class weights.
BridgeReport bridge_compare(const PotentialTable& T, const Weight& W, int n,
                            bool augmented = false, const RemezConfig& rcfg = {});

}  // namespace chebband
