#pragma once

#include <string>
#include <vector>

#include "qctl/error_analysis.h"
#include "qctl/fields.h"
#include "qctl/scenarios.h"

namespace qctl {

// Scientific notation with 12 significant digits; the one float format used
// in every emitted file so identical runs are byte-identical.
std::string format_sci(double v);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string timeseries_csv(const SimulationResult& result);
std::string pulse_table_csv(const std::vector<FieldSet>& fields);

std::string transfer_json(const TransferSpec& spec, const SimulationResult& result);
std::string sweep_json(const std::vector<SweepRow>& rows);
std::string cyclic_json(const CyclicSpec& spec, const SimulationResult& result);
std::string audit_json(const AuditReport& report);

void write_file(const std::string& path, const std::string& content);

}  // namespace qctl
