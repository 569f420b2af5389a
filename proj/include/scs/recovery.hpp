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

#ifndef SCS_RECOVERY_HPP
#define SCS_RECOVERY_HPP

#include "scs/measurement.hpp"
#include "scs/pilot_design.hpp"
#include "scs/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scs {

// Tap delays and their replication over the M antenna blocks:
// expanded = { tau + i L : tau in taps, i = 0 .. M-1 }, sorted.
struct SupportEstimate
{
    std::vector<int> taps;
    std::vector<int> expanded;
};

struct RecoveryResult
{
    CMatrix H_hat;                     // (M L) x R, zero outside support.expanded
    SupportEstimate support;
    std::vector<double> residual_norms; // ||V||_F of the initial and every accepted iterate, strictly decreasing
    int iterations = 0;                 // loop passes executed, including a rejected final one
    bool converged = false;             // false when max_iters stopped the loop
    bool underdetermined = false;       // M K > N_p: the pruned LS had more unknowns than pilots
};

// out(tau) = sum_r sum_i |X(tau + i L, r)|^2.
RVector aggregate_tap_energy(const CMatrix &X, int antennas, int max_delay);

// Indices of the k largest entries (ties go to the smaller index), ascending.
std::vector<int> top_k_taps(const RVector &energy, int k);

SupportEstimate expand_support(std::span<const int> taps, int antennas, int max_delay);

// Minimum-norm least-squares solution of A X = B. Householder QR when A is
// tall and clearly full rank, otherwise a complete orthogonal decomposition
// with rank tolerance eps * max(rows, cols) relative to the largest pivot.
CMatrix min_norm_least_squares(const CMatrix &A, const CMatrix &B);

// Rows in sup.expanded hold pinv(Phi_Gamma) Y; every other row is zero.
CMatrix ls_on_support(const CMatrix &Y, const SensingMatrix &phi, const SupportEstimate &sup);

// Structured subspace pursuit. The selection unit is a tap delay, shared by
// all M antenna blocks and all R columns of Y. max_iters <= 0 means K.
RecoveryResult ssp_recover(const CMatrix &Y, const SensingMatrix &phi, int sparsity, int max_iters = 0);
RecoveryResult ssp_recover(const MeasurementBlock &Y, const SensingMatrix &phi, int sparsity, int max_iters = 0);

// Classical subspace pursuit on a single column over the unstructured (M L)
// vector. support.taps and support.expanded both hold the selected indices.
// max_iters <= 0 means sparsity.
RecoveryResult sp_recover(const CVector &y, const SensingMatrix &phi, int sparsity, int max_iters = 0);

// Least squares on the known true support.
CMatrix oracle_ls(const CMatrix &Y, const SensingMatrix &phi, std::span<const int> true_taps);
CMatrix oracle_ls(const MeasurementBlock &Y, const SensingMatrix &phi, std::span<const int> true_taps);

// Runs SSP for every candidate sparsity level.
std::vector<RecoveryResult> sweep_sparsity(const CMatrix &Y, const SensingMatrix &phi, std::span<const int> sparsities,
                                           int max_iters = 0);

inline constexpr double kNmseFloorDb = -300.0;

// ||H_hat - H||_F^2 / ||H||_F^2
double nmse(const CMatrix &H_hat, const CMatrix &H);
// 10 log10(value), clamped below at kNmseFloorDb.
double to_db(double linear);
double nmse_db(const CMatrix &H_hat, const CMatrix &H);

// Text record:
//   support = 0 3 89 129 171 199
//   iterations = 3
//   converged = 1
//   residuals = 81.2 3.07 2.99
//   nmse_db = -31.4          (only when given)
std::string format_recovery_record(const RecoveryResult &r, std::optional<double> nmse_value = std::nullopt);

} // namespace scs

#endif
