// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>
#include <ostream>
#include <string>

#include "floqgap/diagonalization.hpp"
#include "floqgap/evolution.hpp"
#include "floqgap/time_periodic.hpp"

namespace floqgap {

// Key order is fixed so identical inputs give byte-identical files.
using Json = nlohmann::ordered_json;

Json basis_to_json(const SpectralBasis& basis);
BasisPtr basis_from_json(const Json& j);

// {basis_ref, blocks: [{m, n, re[][], im[][]}], hermitian, diagonal};
// zero blocks are omitted.
Json operator_to_json(const BlockOperator& op, const std::string& basis_ref = "inline");
BlockOperator operator_from_json(const Json& j, BasisPtr basis);

// {period, harmonics: [{k, operator}]}
Json family_to_json(const TimePeriodicOperator& z, const std::string& basis_ref = "inline");
TimePeriodicOperator family_from_json(const Json& j, BasisPtr basis);

Json certificate_to_json(const GapCertificate& cert);
Json norm_entry(double p, double delta, double value);
Json bound_check_to_json(const BoundCheck& check);
Json step_record_to_json(const StepRecord& rec);
Json pipeline_step_to_json(const PipelineStep& step);
Json trace_to_json(const EnergyTrace& trace);
Json fit_to_json(const ExponentFit& fit);

// CSV columns: t, energy, norm_drift.
void write_trace_csv(std::ostream& os, const EnergyTrace& trace);
EnergyTrace read_trace_csv(std::istream& is);

}  // namespace floqgap
