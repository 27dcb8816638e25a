#pragma once

#include "chebband/inversion.hpp"

namespace chebband {

/// Predicted asymptotic objects for one weight and degree: the outer function
/// psi_n, its boundary trace on E, the minimum-deviation prediction, zero
/// counts, and the two-sheeted cosine machinery for polynomial weights.
class AsymptoticModel {
  public:
    static AsymptoticModel make(const PotentialTable& T, const Weight& W, int n);

    const PotentialTable& table() const { return *T_; }
    const Weight& weight() const { return W_; }
    const InversionSolution& solution() const { return sol_; }
    const SzegoData& szego() const { return szego_; }
    int degree() const { return n_; }

    /// Boundary phase Theta_n(x) = n arg phi^+(x,inf) - sum arg phi^+(x,c_j)
    /// + arg W^+(x), continuous along the walk from a_{2l}.
    double theta(double x) const;
    /// psi_n^+ + psi_n^- = 2 W(x) cos Theta_n(x): the prediction for twice the
    /// normalized minimal polynomial on E.
    double predict_on_E(double x) const;

    /// log |psi_n(z)| for z off the bands.
    double psi_log_modulus(cplx z) const;
    /// Full complex psi_n along the standard path (up-and-over from the right
    /// of the system).
    cplx psi(cplx z) const;
    /// Prediction for the normalized minimal polynomial off E; evaluates both
    /// branches (the reflected one decays like |phi|^{-2n}).
    cplx predict_off_E(cplx z) const;

    /// Minimum-deviation prediction 2 cap^n prod' phi(c_j; inf) / W(inf).
    double predict_deviation() const;

    struct ZeroCounts {
        std::vector<int> per_band;        // k = 1..l
        std::vector<double> raw;          // before rounding
        double rounding_defect = 0.0;
        std::vector<bool> gap_zero_expected;
    };
    ZeroCounts predict_zero_counts() const;

    // --- polynomial-weight (Pell) machinery -----------------------------
    /// Phase chi_n(x) = (n - nu) arg phi^+(x,inf) + sum nu_j arg phi^+(x,w_j)
    ///                  - sum' arg phi^+(x,c_j)  on E.
    double chi(double x) const;
    double rational_R(double x) const { return std::cos(chi(x)); }
    /// Companion with R^2 - H S^2 = 1 on E.
    double rational_S(double x) const;
    /// Closed-form deviation 2 cap^{n-nu} prod' phi(c_j;inf) / (lc prod phi(w_j;inf)^nu_j).
    double rational_deviation() const;

  private:
    const PotentialTable* T_ = nullptr;
    Weight W_;
    int n_ = 0;
    InversionSolution sol_;
    SzegoData szego_;
    std::vector<GreenPole> cpoles_;  // interior c's only (flagged ones drop out)
    std::vector<GreenPole> wreal_;
    std::vector<int> wreal_mult_;
    std::vector<GreenPolePair> wpair_;
    std::vector<int> wpair_mult_;

    void require_poly() const;
};

}  // namespace chebband
