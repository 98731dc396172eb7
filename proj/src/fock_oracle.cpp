#include "g2coh/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "g2coh/errors.hpp"

namespace g2coh {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr double kDroppedPopulation = 1e-20;

void require_dim(int dim) {
    if (dim < 2) throw DomainError("Fock truncation dimension must be >= 2");
}

struct RealSpectrum {
    MatrixXd vectors;
    VectorXd values;
};

// X with X(k, k+1) = X(k+1, k) = √(k+1):  a† − a = W (−i X) W†,  W = diag(i^k).
RealSpectrum quadrature_spectrum(int dim) {
    VectorXd diag = VectorXd::Zero(dim);
    VectorXd sub(dim - 1);
    for (int k = 0; k + 1 < dim; ++k) sub(k) = std::sqrt(double(k + 1));
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    return {solver.eigenvectors(), solver.eigenvalues()};
}

// Y with Y(k, k+2) = Y(k+2, k) = √((k+1)(k+2)):  a² − a†² = W (i Y) W†,  W = diag(e^{iπk/4}).
// Y couples only states of equal parity, so each parity chain is a tridiagonal problem.
RealSpectrum pair_spectrum(int dim) {
    MatrixXd vectors = MatrixXd::Zero(dim, dim);
    VectorXd values(dim);
    int column = 0;
    for (int parity = 0; parity < 2; ++parity) {
        const int len = (dim - parity + 1) / 2;
        if (len == 0) continue;
        VectorXd diag = VectorXd::Zero(len);
        if (len == 1) {
            vectors(parity, column) = 1.0;
            values(column) = 0.0;
            ++column;
            continue;
        }
        VectorXd sub(len - 1);
        for (int j = 0; j + 1 < len; ++j) {
            const double k = 2.0 * j + parity;
            sub(j) = std::sqrt((k + 1.0) * (k + 2.0));
        }
        Eigen::SelfAdjointEigenSolver<MatrixXd> solver;
        solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        for (int m = 0; m < len; ++m) {
            for (int j = 0; j < len; ++j) vectors(2 * j + parity, column) = solver.eigenvectors()(j, m);
            values(column) = solver.eigenvalues()(m);
            ++column;
        }
    }
    return {std::move(vectors), std::move(values)};
}

// diag(e^{i k step})
VectorXcd phase_ramp(int dim, double step) {
    VectorXcd out(dim);
    for (int k = 0; k < dim; ++k) out(k) = std::polar(1.0, step * k);
    return out;
}

MatrixXcd real_times(const MatrixXd& real, const MatrixXcd& m) {
    MatrixXcd out(real.rows(), m.cols());
    out.real().noalias() = real * m.real();
    out.imag().noalias() = real * m.imag();
    return out;
}

MatrixXcd real_transpose_times(const MatrixXd& real, const MatrixXcd& m) {
    MatrixXcd out(real.cols(), m.cols());
    out.real().noalias() = real.transpose() * m.real();
    out.imag().noalias() = real.transpose() * m.imag();
    return out;
}

// L Q diag(e^{i·angle·λ}) Qᵀ L† applied to the columns of m.
MatrixXcd apply_rotated(const RealSpectrum& spec, const VectorXcd& ramp, double angle, const MatrixXcd& m) {
    MatrixXcd tmp = ramp.conjugate().asDiagonal() * m;
    tmp = real_transpose_times(spec.vectors, tmp);
    for (Eigen::Index i = 0; i < tmp.rows(); ++i) tmp.row(i) *= std::polar(1.0, angle * spec.values(i));
    tmp = real_times(spec.vectors, tmp);
    return ramp.asDiagonal() * tmp;
}

MatrixXcd dense_rotated(const RealSpectrum& spec, const VectorXcd& ramp, double angle) {
    const int dim = static_cast<int>(spec.values.size());
    return apply_rotated(spec, ramp, angle, MatrixXcd::Identity(dim, dim));
}

double photon_weighted_norm(const MatrixXcd& columns, const VectorXd& weights) {
    double total = 0.0;
    for (Eigen::Index k = 0; k < columns.cols(); ++k) {
        double col = 0.0;
        for (Eigen::Index i = 1; i < columns.rows(); ++i) col += double(i) * std::norm(columns(i, k));
        total += weights(k) * col;
    }
    return total;
}

double top_population(const MatrixXcd& columns, const VectorXd& weights) {
    const Eigen::Index rows = columns.rows();
    const Eigen::Index first = rows - std::max<Eigen::Index>(1, rows / 10);
    double total = 0.0;
    for (Eigen::Index k = 0; k < columns.cols(); ++k) {
        total += weights(k) * columns.bottomRows(rows - first).col(k).squaredNorm();
    }
    return total;
}

MatrixXcd annihilate(const MatrixXcd& m) {
    MatrixXcd out = MatrixXcd::Zero(m.rows(), m.cols());
    for (Eigen::Index i = 0; i + 1 < m.rows(); ++i) out.row(i) = std::sqrt(double(i + 1)) * m.row(i + 1);
    return out;
}

}  // namespace

LadderOperators ladder_operators(int dim) {
    require_dim(dim);
    FockMatrix a = FockMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    FockMatrix adag = a.adjoint();
    return {std::move(a), std::move(adag)};
}

FockMatrix displacement(ComplexAmplitude alpha, int dim) {
    require_dim(dim);
    // α a† − α* a = R(φ) |α| (a† − a) R(φ)†
    const VectorXcd ramp = phase_ramp(dim, alpha.phase() + 0.5 * std::numbers::pi);
    return dense_rotated(quadrature_spectrum(dim), ramp, -alpha.magnitude());
}

FockMatrix squeeze(const SqueezeParam& xi, int dim) {
    require_dim(dim);
    // −(ξ/2) a†² + (ξ*/2) a² = R(θ/2) (r/2)(a² − a†²) R(θ/2)†
    const VectorXcd ramp = phase_ramp(dim, 0.5 * xi.theta() + 0.25 * std::numbers::pi);
    return dense_rotated(pair_spectrum(dim), ramp, 0.5 * xi.r());
}

Eigen::VectorXd thermal_weights(double nbar, int dim) {
    require_dim(dim);
    if (!(nbar >= 0.0)) throw DomainError("mean thermal occupation must be >= 0");
    VectorXd p = VectorXd::Zero(dim);
    const double ratio = nbar / (nbar + 1.0);
    double w = 1.0;
    for (int n = 0; n < dim; ++n) {
        p(n) = w;
        w *= ratio;
    }
    return p / p.sum();
}

FockMatrix thermal_rho(double nbar, int dim) {
    return thermal_weights(nbar, dim).cast<cplx>().asDiagonal();
}

FockMatrix gaussian_rho(const GaussianStateParams& state, int dim) {
    const FockMatrix u = displacement(state.alpha, dim) * squeeze(state.xi, dim);
    const VectorXd p = thermal_weights(state.nbar, dim);
    FockMatrix rho = (u * p.cast<cplx>().asDiagonal()) * u.adjoint();
    return rho / rho.trace().real();
}

FockMatrix hamiltonian_matrix(const HamiltonianParams& params, int dim) {
    const auto [a, adag] = ladder_operators(dim);
    const cplx b = params.b;
    const cplx c = params.c;
    FockMatrix h = c * (adag * adag) + std::conj(c) * (a * a) + b * a + std::conj(b) * adag;
    return h;
}

FockMatrix heisenberg_a_matrix(const HamiltonianParams& params, double tau, int dim) {
    if (!(tau >= 0.0)) throw DomainError("delay tau must be >= 0");
    const auto [a, adag] = ladder_operators(dim);
    if (tau == 0.0) return a;
    Eigen::SelfAdjointEigenSolver<FockMatrix> solver(hamiltonian_matrix(params, dim));
    const FockMatrix& q = solver.eigenvectors();
    VectorXcd forward(dim);
    for (int k = 0; k < dim; ++k) forward(k) = std::polar(1.0, solver.eigenvalues()(k) * tau);
    FockMatrix inner = q.adjoint() * a * q;
    inner = forward.asDiagonal() * inner * forward.conjugate().asDiagonal();
    return q * inner * q.adjoint();
}

FockMatrix flow_matrix(const FlowResult& flow, int dim) {
    const auto [a, adag] = ladder_operators(dim);
    FockMatrix m = flow.cosh_coeff * a + flow.sinh_coeff * adag;
    m.diagonal().array() += flow.shift.value();
    return m;
}

FockMatrix conjugated_annihilator(ComplexAmplitude alpha, const SqueezeParam& xi, int dim) {
    const FockMatrix u = displacement(alpha, dim) * squeeze(xi, dim);
    return u.adjoint() * ladder_operators(dim).a * u;
}

double projected_norm(const FockMatrix& m, int block) {
    block = std::min<int>(block, static_cast<int>(m.rows()));
    Eigen::BDCSVD<FockMatrix> svd(m.topLeftCorner(block, block));
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

DensityDiagnostics density_diagnostics(const FockMatrix& rho) {
    DensityDiagnostics d;
    d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    d.trace_error = std::abs(rho.trace() - cplx{1.0, 0.0});
    const FockMatrix hermitian = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<FockMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = solver.eigenvalues().minCoeff();
    return d;
}

OracleEvaluator::OracleEvaluator(ComplexAmplitude alpha, const SqueezeParam& xi, const HamiltonianParams& params,
                                 int dim)
    : dim_(dim), alpha_(alpha), xi_(xi) {
    require_dim(dim);
    Eigen::SelfAdjointEigenSolver<FockMatrix> solver(hamiltonian_matrix(params, dim));
    h_vectors_ = solver.eigenvectors();
    h_values_ = solver.eigenvalues();
    auto quad = quadrature_spectrum(dim);
    disp_vectors_ = std::move(quad.vectors);
    disp_values_ = std::move(quad.values);
    auto pairs = pair_spectrum(dim);
    sq_vectors_ = std::move(pairs.vectors);
    sq_values_ = std::move(pairs.values);
}

Eigen::MatrixXcd OracleEvaluator::gaussian_columns(int count) const {
    const RealSpectrum sq{sq_vectors_, sq_values_};
    const RealSpectrum quad{disp_vectors_, disp_values_};
    const VectorXcd sq_ramp = phase_ramp(dim_, 0.5 * xi_.theta() + 0.25 * std::numbers::pi);
    const VectorXcd disp_ramp = phase_ramp(dim_, alpha_.phase() + 0.5 * std::numbers::pi);
    MatrixXcd basis = MatrixXcd::Identity(dim_, count);
    MatrixXcd squeezed = apply_rotated(sq, sq_ramp, 0.5 * xi_.r(), basis);
    return apply_rotated(quad, disp_ramp, -alpha_.magnitude(), squeezed);
}

std::vector<OracleValues> OracleEvaluator::evaluate(double nbar, std::span<const double> taus) const {
    if (nbar == 0.0 && xi_.r() == 0.0 && alpha_.value() == cplx{}) throw UndefinedCoherence();
    for (double tau : taus) {
        if (!(tau >= 0.0)) throw DomainError("delay tau must be >= 0");
    }
    const VectorXd p_all = thermal_weights(nbar, dim_);
    int count = 1;
    while (count < dim_ && p_all(count) > kDroppedPopulation) ++count;
    const VectorXd p = p_all.head(count);

    const MatrixXcd columns = gaussian_columns(count);
    const MatrixXcd lowered = annihilate(columns);
    const double mean_n0 = photon_weighted_norm(columns, p);
    if (!(mean_n0 > 0.0)) throw UndefinedCoherence();
    const double rho_tail = top_population(columns, p);

    const MatrixXcd state_modes = h_vectors_.adjoint() * columns;
    const MatrixXcd lowered_modes = h_vectors_.adjoint() * lowered;

    std::vector<OracleValues> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        VectorXcd backward(dim_);
        for (int k = 0; k < dim_; ++k) backward(k) = std::polar(1.0, -h_values_(k) * tau);
        const MatrixXcd evolved = h_vectors_ * (backward.asDiagonal() * state_modes);
        const MatrixXcd evolved_lowered = h_vectors_ * (backward.asDiagonal() * lowered_modes);

        OracleValues v;
        v.tau = tau;
        v.mean_n0 = mean_n0;
        v.mean_n_tau = photon_weighted_norm(evolved, p);
        if (!(v.mean_n_tau > 0.0)) throw UndefinedCoherence();
        v.g2 = photon_weighted_norm(evolved_lowered, p) / (mean_n0 * v.mean_n_tau);
        v.tail_mass = std::max(rho_tail, top_population(evolved, p));
        out.push_back(v);
    }
    return out;
}

OracleValues OracleEvaluator::evaluate(double nbar, double tau) const {
    return evaluate(nbar, std::span<const double>(&tau, 1)).front();
}

double g2_oracle(const GaussianStateParams& state, const HamiltonianParams& params, double tau, int dim) {
    if (state.is_vacuum()) throw UndefinedCoherence();
    return OracleEvaluator(state.alpha, state.xi, params, dim).evaluate(state.nbar, tau).g2;
}

double mean_n_oracle(const GaussianStateParams& state, const HamiltonianParams& params, double tau, int dim) {
    if (state.is_vacuum()) return 0.0;
    return OracleEvaluator(state.alpha, state.xi, params, dim).evaluate(state.nbar, tau).mean_n_tau;
}

namespace {

std::vector<TruncationReport> compare_dims(const OracleEvaluator& low, const OracleEvaluator& high, double nbar,
                                           std::span<const double> taus) {
    const auto lo = low.evaluate(nbar, taus);
    const auto hi = high.evaluate(nbar, taus);
    std::vector<TruncationReport> out(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        auto& rep = out[i];
        rep.dim = low.dim();
        rep.tail_mass = lo[i].tail_mass;
        rep.g2_at_dim = lo[i].g2;
        rep.g2_at_double = hi[i].g2;
        rep.rel_change = std::abs(hi[i].g2 - lo[i].g2) / std::abs(lo[i].g2);
        rep.converged = rep.rel_change < kRelChangeThreshold && rep.tail_mass < kTailThreshold;
    }
    return out;
}

}  // namespace

std::vector<TruncationReport> convergence_check(const GaussianStateParams& state, const HamiltonianParams& params,
                                                std::span<const double> taus, int dim) {
    if (state.is_vacuum()) throw UndefinedCoherence();
    const OracleEvaluator low(state.alpha, state.xi, params, dim);
    const OracleEvaluator high(state.alpha, state.xi, params, 2 * dim);
    return compare_dims(low, high, state.nbar, taus);
}

TruncationReport convergence_check(const GaussianStateParams& state, const HamiltonianParams& params, double tau,
                                   int dim) {
    return convergence_check(state, params, std::span<const double>(&tau, 1), dim).front();
}

AdaptiveOracleResult g2_oracle_adaptive(const GaussianStateParams& state, const HamiltonianParams& params, double tau,
                                        int start_dim, int max_dim) {
    if (state.is_vacuum()) throw UndefinedCoherence();
    require_dim(start_dim);
    const std::span<const double> taus(&tau, 1);
    int dim = start_dim;
    OracleEvaluator low(state.alpha, state.xi, params, dim);
    while (true) {
        OracleEvaluator high(state.alpha, state.xi, params, 2 * dim);
        const TruncationReport rep = compare_dims(low, high, state.nbar, taus).front();
        if (rep.converged || 4 * dim > max_dim) {
            return {low.evaluate(state.nbar, tau), rep};
        }
        dim *= 2;
        low = std::move(high);
    }
}

}  // namespace g2coh
