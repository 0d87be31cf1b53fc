// liouvillian.hpp — photon and phonon generators on (rho00, rho++, rho--, rho+-, rho-+), trap composition, steady state, propagation

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "darkstate/error.hpp"
#include "darkstate/optical_rates.hpp"

namespace darkstate {

// Index of each component in the dimer state vector.
enum Component : int { P00 = 0, PPP = 1, PMM = 2, PPM = 3, PMP = 4 };

struct Liouvillian {
    Eigen::MatrixXcd L;
    std::vector<std::string> labels;
    std::vector<bool> population; // true for diagonal density-matrix entries

    Eigen::Index size() const { return L.rows(); }
    Liouvillian operator+(const Liouvillian& o) const {
        if (labels != o.labels) throw InvalidParameter("liouvillian: basis mismatch");
        return {L + o.L, labels, population};
    }
};

enum class PhotonVariant { RWA, NonRWA };

inline Liouvillian empty_dimer_liouvillian() {
    return {Eigen::MatrixXcd::Zero(5, 5), {"00", "++", "--", "+-", "-+"}, {true, true, true, false, false}};
}

inline Liouvillian photon_liouvillian(const RateSet& r, PhotonVariant v = PhotonVariant::RWA) {
    Liouvillian out = empty_dimer_liouvillian();
    auto& L = out.L;
    const cplx I{0.0, 1.0};
    const auto Tp = r.Theta_plus, Tm = r.Theta_minus;
    const auto Up = r.ThetaT_plus, Um = r.ThetaT_minus;
    const double gE = r.gamma_plus_E + r.gamma_minus_E;
    // counter-rotating couplings enter as i * phi~ (a Hamiltonian-like term)
    const cplx Fp = v == PhotonVariant::NonRWA ? I * r.Phi_plus.real() : cplx{};
    const cplx Fm = v == PhotonVariant::NonRWA ? I * r.Phi_minus.real() : cplx{};
    const double Dt = v == PhotonVariant::NonRWA ? r.Delta_tf() : r.Delta_t();

    L(P00, P00) = -(r.gamma_plus_A + r.gamma_minus_A);
    L(P00, PPP) = r.gamma_plus_E;
    L(P00, PMM) = r.gamma_minus_E;
    // The ground row also absorbs the column sums of the counter-rotating terms so the
    // trace is conserved exactly.
    L(P00, PPM) = Tp + std::conj(Tm) + std::conj(Fp) + Fm;
    L(P00, PMP) = std::conj(Tp) + Tm + Fp + std::conj(Fm);

    L(PPP, P00) = r.gamma_plus_A;
    L(PPP, PPP) = -r.gamma_plus_E;
    L(PPP, PPM) = -std::conj(Tm) - std::conj(Fp);
    L(PPP, PMP) = -Tm - Fp;

    L(PMM, P00) = r.gamma_minus_A;
    L(PMM, PMM) = -r.gamma_minus_E;
    L(PMM, PPM) = -Tp - Fm;
    L(PMM, PMP) = -std::conj(Tp) - std::conj(Fm);

    L(PPM, P00) = Up + std::conj(Um);
    L(PPM, PPP) = -std::conj(Tp) - std::conj(Fm);
    L(PPM, PMM) = -Tm - Fp;
    L(PPM, PPM) = -0.5 * gE - I * Dt;

    L(PMP, P00) = std::conj(Up) + Um;
    L(PMP, PPP) = -Tp - Fm;
    L(PMP, PMM) = -std::conj(Tm) - std::conj(Fp);
    L(PMP, PMP) = -0.5 * gE + I * Dt;
    return out;
}

inline Liouvillian phonon_liouvillian(const RateSet& r) {
    Liouvillian out = empty_dimer_liouvillian();
    auto& L = out.L;
    const cplx I{0.0, 1.0};
    const double gxz = r.gxz0(), Sxz = r.Sxz0(), gzz = r.gzz0();
    L(PPP, PPP) = -r.gpn_plus_eta;
    L(PPP, PMM) = r.gpn_plus_meta;
    L(PPP, PPM) = gxz;
    L(PPP, PMP) = gxz;

    L(PMM, PPP) = r.gpn_plus_eta;
    L(PMM, PMM) = -r.gpn_plus_meta;
    L(PMM, PPM) = -gxz;
    L(PMM, PMP) = -gxz;

    L(PPM, PPP) = 2.0 * (I * Sxz + std::conj(r.zxz.eta));
    L(PPM, PMM) = 2.0 * (I * Sxz - r.zxz.meta);
    L(PPM, PPM) = -(r.gbar_plus + I * r.mubar_plus) - 2.0 * gzz;
    L(PPM, PMP) = r.gbar_minus - I * r.mubar_minus;

    L(PMP, PPP) = 2.0 * (-I * Sxz + r.zxz.eta);
    L(PMP, PMM) = 2.0 * (-I * Sxz - std::conj(r.zxz.meta));
    L(PMP, PPM) = r.gbar_minus + I * r.mubar_minus;
    L(PMP, PMP) = -(r.gbar_plus - I * r.mubar_plus) - 2.0 * gzz;
    return out;
}

inline Liouvillian total_liouvillian(const RateSet& r, PhotonVariant v = PhotonVariant::RWA) {
    return photon_liouvillian(r, v) + phonon_liouvillian(r);
}

// ---- trap ------------------------------------------------------------------------

// Two-level trap |alpha> (upper) and |beta> (lower). Extraction moves |-,beta> to
// |0,alpha> at gamma_x; the trap relaxes alpha -> beta at gamma_t.
struct TrapParameters {
    double gamma_x{1e-7}; // eV
    double gamma_t{1e-9}; // eV
    double temperature{300.0};
};

// Composite generator: the system block for trap level alpha, then for beta. Extraction
// takes `source` (in beta) to the ground state in alpha; `half_damped` components of the
// beta block lose gamma_x / 2 (coherences with the extracted state).
inline Liouvillian compose_with_trap(const Liouvillian& sys, const TrapParameters& t, Eigen::Index source = PMM,
                                     std::vector<Eigen::Index> half_damped = {PPM, PMP}) {
    if (!(t.gamma_x >= 0.0) || !(t.gamma_t >= 0.0)) throw InvalidParameter("trap rates must be >= 0");
    const Eigen::Index n = sys.size();
    Liouvillian out;
    out.L = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    out.L.topLeftCorner(n, n) = sys.L;
    out.L.bottomRightCorner(n, n) = sys.L;
    for (const char* lvl : {"a", "b"})
        for (Eigen::Index i = 0; i < n; ++i) {
            out.labels.push_back(sys.labels[i] + "," + lvl);
            out.population.push_back(sys.population[i]);
        }
    for (Eigen::Index i = 0; i < n; ++i) {
        out.L(i, i) -= t.gamma_t;
        out.L(n + i, i) += t.gamma_t;
    }
    out.L(0, n + source) += t.gamma_x;
    out.L(n + source, n + source) -= t.gamma_x;
    for (Eigen::Index i : half_damped) out.L(n + i, n + i) -= 0.5 * t.gamma_x;
    return out;
}

// ---- steady state ----------------------------------------------------------------

struct SteadyStateOptions {
    double rank_tol{1e-13};     // relative singular-value threshold for the kernel
    double residual_tol{1e-9};  // |L x| / (|L| |x|)
    double positivity_tol{1e-8};
};

// Unique normalised kernel of L. Coherences are eliminated first (Schur complement), so
// the kernel is found on the population block whose entries are all on the rate scale.
inline Eigen::VectorXcd steady_state(const Liouvillian& lv, const SteadyStateOptions& opt = {}) {
    const Eigen::Index n = lv.size();
    std::vector<Eigen::Index> P, C;
    for (Eigen::Index i = 0; i < n; ++i) (lv.population[i] ? P : C).push_back(i);
    const Eigen::Index np = static_cast<Eigen::Index>(P.size()), nc = static_cast<Eigen::Index>(C.size());
    Eigen::MatrixXcd Lpp(np, np), Lpc(np, nc), Lcp(nc, np), Lcc(nc, nc);
    for (Eigen::Index i = 0; i < np; ++i) {
        for (Eigen::Index j = 0; j < np; ++j) Lpp(i, j) = lv.L(P[i], P[j]);
        for (Eigen::Index j = 0; j < nc; ++j) Lpc(i, j) = lv.L(P[i], C[j]);
    }
    for (Eigen::Index i = 0; i < nc; ++i) {
        for (Eigen::Index j = 0; j < np; ++j) Lcp(i, j) = lv.L(C[i], P[j]);
        for (Eigen::Index j = 0; j < nc; ++j) Lcc(i, j) = lv.L(C[i], C[j]);
    }
    Eigen::VectorXcd x(n);
    bool reduced = false;
    if (nc > 0) {
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(Lcc);
        if (lu.isInvertible() && lu.rcond() > 1e-13) {
            const Eigen::MatrixXcd K = lu.solve(Lcp); // Lcc^{-1} Lcp
            const Eigen::MatrixXcd R = Lpp - Lpc * K;
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R, Eigen::ComputeFullV);
            const auto& s = svd.singularValues();
            const double smax = s(0);
            if (np > 1 && s(np - 2) <= opt.rank_tol * smax)
                throw DegenerateSteadyState("steady state: kernel dimension > 1", s(np - 2) / smax);
            Eigen::VectorXcd p = svd.matrixV().col(np - 1);
            const cplx tr = p.sum();
            if (std::abs(tr) == 0.0) throw DegenerateSteadyState("steady state: kernel has zero trace", 0.0);
            p /= tr;
            const Eigen::VectorXcd c = -K * p;
            for (Eigen::Index i = 0; i < np; ++i) x(P[i]) = p(i);
            for (Eigen::Index i = 0; i < nc; ++i) x(C[i]) = c(i);
            reduced = true;
        }
    }
    if (!reduced) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(lv.L, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        if (n > 1 && s(n - 2) <= opt.rank_tol * s(0))
            throw DegenerateSteadyState("steady state: kernel dimension > 1", s(n - 2) / s(0));
        x = svd.matrixV().col(n - 1);
        cplx tr{};
        for (Eigen::Index i : P) tr += x(i);
        if (std::abs(tr) == 0.0) throw DegenerateSteadyState("steady state: kernel has zero trace", 0.0);
        x /= tr;
    }
    const double lnorm = lv.L.norm();
    const double res = (lv.L * x).norm() / (lnorm * x.norm());
    if (!(res < opt.residual_tol)) throw NumericalError("steady state: residual above tolerance", res);
    for (Eigen::Index i : P) {
        if (x(i).real() < -opt.positivity_tol)
            throw PositivityViolation("steady state: negative population " + lv.labels[i], x(i).real());
        x(i) = x(i).real(); // populations are real; drop rounding noise
    }
    return x;
}

// ---- time evolution --------------------------------------------------------------

// rho(t) = exp(L t) rho0 at the requested times. Uses the eigendecomposition of L; the
// zero mode is snapped to exactly zero so long times do not drift. Falls back to the
// matrix exponential if the eigenvectors are ill-conditioned.
inline std::vector<Eigen::VectorXcd> time_evolve(const Liouvillian& lv, const Eigen::VectorXcd& rho0,
                                                 const std::vector<double>& times) {
    if (rho0.size() != lv.size()) throw InvalidParameter("time_evolve: state size mismatch");
    std::vector<Eigen::VectorXcd> out;
    out.reserve(times.size());
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(lv.L);
    const Eigen::MatrixXcd& V = es.eigenvectors();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(V);
    const double cond = V.norm() * lu.inverse().norm();
    if (es.info() == Eigen::Success && std::isfinite(cond) && cond < 1e10) {
        Eigen::VectorXcd lam = es.eigenvalues();
        const double scale = lv.L.norm();
        for (Eigen::Index i = 0; i < lam.size(); ++i)
            if (std::abs(lam(i)) < 1e-13 * scale) lam(i) = 0.0;
        const Eigen::VectorXcd c = lu.solve(rho0);
        for (double t : times) {
            Eigen::VectorXcd e(lam.size());
            for (Eigen::Index i = 0; i < lam.size(); ++i) e(i) = std::exp(lam(i) * t) * c(i);
            out.push_back(V * e);
        }
        return out;
    }
    for (double t : times) {
        const Eigen::MatrixXcd Lt = lv.L * t;
        out.push_back(Lt.exp() * rho0);
    }
    return out;
}

// Population-weighted trace of a state vector.
inline cplx trace(const Liouvillian& lv, const Eigen::VectorXcd& x) {
    cplx t{};
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (lv.population[i]) t += x(i);
    return t;
}

} // namespace darkstate
