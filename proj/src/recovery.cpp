// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The scs-pilot authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "scs/recovery.hpp"

#include "key_value.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace scs {

RVector aggregate_tap_energy(const CMatrix &X, int antennas, int max_delay)
{
    if (antennas < 1 || max_delay < 1)
        throw std::invalid_argument("aggregate_tap_energy: M and L must be positive");
    if (X.rows() != static_cast<Eigen::Index>(antennas) * max_delay)
        throw std::invalid_argument("aggregate_tap_energy: X has " + std::to_string(X.rows()) + " rows, expected M*L = " +
                                    std::to_string(static_cast<long long>(antennas) * max_delay));
    const RVector row_energy = X.rowwise().squaredNorm();
    RVector out = RVector::Zero(max_delay);
    for (int i = 0; i < antennas; ++i)
        out += row_energy.segment(static_cast<Eigen::Index>(i) * max_delay, max_delay);
    return out;
}

std::vector<int> top_k_taps(const RVector &energy, int k)
{
    if (k < 0 || k > energy.size())
        throw std::invalid_argument("top_k_taps: k = " + std::to_string(k) + " exceeds vector length " +
                                    std::to_string(energy.size()));
    std::vector<int> idx(energy.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](int a, int b) {
        if (energy(a) != energy(b))
            return energy(a) > energy(b);
        return a < b;
    });
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

SupportEstimate expand_support(std::span<const int> taps, int antennas, int max_delay)
{
    if (antennas < 1 || max_delay < 1)
        throw std::invalid_argument("expand_support: M and L must be positive");
    SupportEstimate s;
    s.taps.assign(taps.begin(), taps.end());
    std::sort(s.taps.begin(), s.taps.end());
    s.taps.erase(std::unique(s.taps.begin(), s.taps.end()), s.taps.end());
    for (int t : s.taps)
        if (t < 0 || t >= max_delay)
            throw std::invalid_argument("expand_support: tap " + std::to_string(t) + " outside [0, L-1]");
    s.expanded.reserve(s.taps.size() * antennas);
    for (int i = 0; i < antennas; ++i)
        for (int t : s.taps)
            s.expanded.push_back(i * max_delay + t);
    return s;
}

CMatrix min_norm_least_squares(const CMatrix &A, const CMatrix &B)
{
    if (A.rows() != B.rows())
        throw std::invalid_argument("min_norm_least_squares: row counts differ");
    if (A.cols() == 0)
        return CMatrix::Zero(0, B.cols());

    const double eps = std::numeric_limits<double>::epsilon();
    const double rank_tol = eps * static_cast<double>(std::max(A.rows(), A.cols()));

    // Fast path: unpivoted blocked QR. min |R_ii| bounds the smallest singular
    // value from above, so only accept it when the diagonal is far from the
    // rank tolerance.
    if (A.rows() >= A.cols())
    {
        Eigen::HouseholderQR<CMatrix> qr(A);
        const RVector d = qr.matrixQR().diagonal().cwiseAbs();
        if (d.minCoeff() > 1e-8 * d.maxCoeff())
            return qr.solve(B);
    }
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(A);
    cod.setThreshold(rank_tol);
    return cod.solve(B);
}

namespace {

void check_measurement(const CMatrix &Y, const SensingMatrix &phi)
{
    if (Y.rows() != phi.pilot_count())
        throw std::invalid_argument("measurement has " + std::to_string(Y.rows()) + " rows but Phi has N_p = " +
                                    std::to_string(phi.pilot_count()));
    if (Y.cols() < 1)
        throw std::invalid_argument("measurement has no columns");
}

CMatrix ls_on_columns(const CMatrix &Y, const SensingMatrix &phi, const std::vector<int> &cols)
{
    CMatrix out = CMatrix::Zero(phi.cols(), Y.cols());
    if (cols.empty())
        return out;
    const CMatrix sol = min_norm_least_squares(phi.columns(cols), Y);
    for (std::size_t i = 0; i < cols.size(); ++i)
        out.row(cols[i]) = sol.row(static_cast<Eigen::Index>(i));
    return out;
}

CMatrix residual(const CMatrix &Y, const SensingMatrix &phi, const CMatrix &H, const std::vector<int> &cols)
{
    if (cols.empty())
        return Y;
    CMatrix rows(static_cast<Eigen::Index>(cols.size()), H.cols());
    for (std::size_t i = 0; i < cols.size(); ++i)
        rows.row(static_cast<Eigen::Index>(i)) = H.row(cols[i]);
    return Y - phi.columns(cols) * rows;
}

// Subspace pursuit over a block view of Phi's columns: the selection unit is
// an index in [0, block_len) replicated over `blocks` blocks. SSP uses
// (M, L); classical SP is the same loop with (1, M L), where aggregation
// reduces to |z|^2 and expansion to the identity.
RecoveryResult pursuit(const CMatrix &Y, const SensingMatrix &phi, int blocks, int block_len, int sparsity, int max_iters)
{
    check_measurement(Y, phi);
    if (sparsity < 1)
        throw std::invalid_argument("sparsity must be >= 1");
    if (sparsity > block_len)
        throw std::invalid_argument("sparsity " + std::to_string(sparsity) + " exceeds the " + std::to_string(block_len) +
                                    " selectable indices");
    if (max_iters <= 0)
        max_iters = sparsity;

    RecoveryResult res;
    res.H_hat = CMatrix::Zero(phi.cols(), Y.cols());
    res.underdetermined = static_cast<long long>(blocks) * sparsity > phi.pilot_count();

    double norm = Y.norm();
    res.residual_norms.push_back(norm);
    CMatrix V = Y;
    std::vector<int> taps;

    // ||V_0|| = +inf, so the first pass always runs
    while (true)
    {
        if (res.iterations >= max_iters)
        {
            res.converged = false;
            break;
        }
        ++res.iterations;

        // candidate merge: current taps plus the K strongest correlations
        const RVector corr = aggregate_tap_energy(phi.adjoint_times(V), blocks, block_len);
        std::vector<int> candidates;
        {
            const auto fresh = top_k_taps(corr, sparsity);
            std::set_union(taps.begin(), taps.end(), fresh.begin(), fresh.end(), std::back_inserter(candidates));
        }
        const SupportEstimate cand = expand_support(candidates, blocks, block_len);
        const CMatrix H_cand = ls_on_columns(Y, phi, cand.expanded);

        // prune back to K by the LS energy of each candidate tap
        RVector energy = aggregate_tap_energy(H_cand, blocks, block_len);
        {
            RVector masked = RVector::Constant(block_len, -1.0);
            for (int t : candidates)
                masked(t) = energy(t);
            energy = std::move(masked);
        }
        std::vector<int> pruned = top_k_taps(energy, sparsity);
        if (pruned == taps)
        {
            // same support, same LS solution, same residual
            res.converged = true;
            break;
        }

        SupportEstimate sup = expand_support(pruned, blocks, block_len);
        CMatrix H_new = ls_on_columns(Y, phi, sup.expanded);
        CMatrix V_new = residual(Y, phi, H_new, sup.expanded);
        const double new_norm = V_new.norm();
        if (!(new_norm < norm))
        {
            res.converged = true;
            break;
        }

        norm = new_norm;
        res.residual_norms.push_back(norm);
        taps = std::move(pruned);
        res.support = std::move(sup);
        res.H_hat = std::move(H_new);
        V = std::move(V_new);
    }
    return res;
}

} // namespace

CMatrix ls_on_support(const CMatrix &Y, const SensingMatrix &phi, const SupportEstimate &sup)
{
    check_measurement(Y, phi);
    for (int c : sup.expanded)
        if (c < 0 || c >= phi.cols())
            throw std::invalid_argument("ls_on_support: support index out of range");
    return ls_on_columns(Y, phi, sup.expanded);
}

RecoveryResult ssp_recover(const CMatrix &Y, const SensingMatrix &phi, int sparsity, int max_iters)
{
    return pursuit(Y, phi, phi.antennas(), phi.max_delay(), sparsity, max_iters);
}

RecoveryResult ssp_recover(const MeasurementBlock &Y, const SensingMatrix &phi, int sparsity, int max_iters)
{
    return ssp_recover(Y.Y, phi, sparsity, max_iters);
}

RecoveryResult sp_recover(const CVector &y, const SensingMatrix &phi, int sparsity, int max_iters)
{
    const int ambient = static_cast<int>(phi.cols());
    return pursuit(CMatrix(y), phi, 1, ambient, sparsity, max_iters);
}

CMatrix oracle_ls(const CMatrix &Y, const SensingMatrix &phi, std::span<const int> true_taps)
{
    return ls_on_support(Y, phi, expand_support(true_taps, phi.antennas(), phi.max_delay()));
}

CMatrix oracle_ls(const MeasurementBlock &Y, const SensingMatrix &phi, std::span<const int> true_taps)
{
    return oracle_ls(Y.Y, phi, true_taps);
}

std::vector<RecoveryResult> sweep_sparsity(const CMatrix &Y, const SensingMatrix &phi, std::span<const int> sparsities,
                                           int max_iters)
{
    std::vector<RecoveryResult> out;
    out.reserve(sparsities.size());
    for (int k : sparsities)
        out.push_back(ssp_recover(Y, phi, k, max_iters));
    return out;
}

double nmse(const CMatrix &H_hat, const CMatrix &H)
{
    if (H_hat.rows() != H.rows() || H_hat.cols() != H.cols())
        throw std::invalid_argument("nmse: shape mismatch");
    const double ref = H.squaredNorm();
    if (!(ref > 0.0))
        throw std::invalid_argument("nmse: reference channel is zero");
    return (H_hat - H).squaredNorm() / ref;
}

double to_db(double linear)
{
    if (!(linear > 0.0))
        return kNmseFloorDb;
    return std::max(10.0 * std::log10(linear), kNmseFloorDb);
}

double nmse_db(const CMatrix &H_hat, const CMatrix &H)
{
    return to_db(nmse(H_hat, H));
}

std::string format_recovery_record(const RecoveryResult &r, std::optional<double> nmse_value)
{
    std::ostringstream os;
    os << "support =";
    for (int t : r.support.taps)
        os << ' ' << t;
    os << "\niterations = " << r.iterations;
    os << "\nconverged = " << (r.converged ? 1 : 0);
    os << "\nresiduals =";
    for (double v : r.residual_norms)
        os << ' ' << detail::format_double(v);
    os << '\n';
    if (nmse_value)
        os << "nmse_db = " << detail::format_double(to_db(*nmse_value)) << '\n';
    return os.str();
}

} // namespace scs
