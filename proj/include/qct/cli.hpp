// Copyright 2026 The qct developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Command surface: parse system descriptions, run the solvers and oracles,
 * emit machine-readable curves and solutions. All numeric output uses a
 * fixed 12-significant-digit format so identical configurations produce
 * byte-identical files.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qct/qmath.hpp"
#include "qct/qubit_rd.hpp"

namespace qct::cli {

/// Exit-code contract shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kOracleMismatch = 2,
    kInfeasible = 3,
};

struct SystemConfig {
    double rho1 = 0.5;
    double rho2_re = 0.0;
    double rho2_im = 0.0;
    double q0 = 0.5;
    std::vector<double> d_grid;  // strictly increasing, values in (0, 1]
    bool nats = false;
    bool verify = false;
};

/// Parses and validates a configuration document. Throws
/// std::invalid_argument on schema or invariant violations.
SystemConfig parse_config_text(const std::string &json_text);

/// "start:stop:count" -> inclusive linearly spaced grid.
std::vector<double> parse_grid_spec(const std::string &spec);

/// Rate-distortion sweep as CSV (header D,R,n,s,branch,kkt_residual; with
/// verification two extra columns R_oracle,abs_gap).
int cmd_curve(const SystemConfig &cfg, std::ostream &out, std::ostream &diag);

/// Transport optimum as a single JSON document.
int cmd_ot(const SystemConfig &cfg, std::ostream &out, std::ostream &diag);

/// Feasibility report for a full measurement-system description.
int cmd_check(const std::string &system_json_text, std::ostream &out, std::ostream &diag);

/// Built-in four-state example sweep: one CSV per state plus summary.json.
int cmd_fig3(const std::string &out_dir, std::ostream &diag);

/// Packages a solved point as a full system document (identity
/// post-processing, entanglement-fidelity observables) for cmd_check.
std::string system_json_from_point(const QubitState &rho, double q0, const rd::RDPoint &point);

/// Full argv entry point.
int run(int argc, const char *const *argv);

}  // namespace qct::cli
