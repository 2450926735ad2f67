#include "qctl/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qctl {

namespace {

const char* model_name(ErrorModel::Kind kind) {
    switch (kind) {
        case ErrorModel::Kind::none: return "none";
        case ErrorModel::Kind::commutative: return "commutative";
        case ErrorModel::Kind::noncommutative: return "noncommutative";
    }
    return "none";
}

std::string quoted(const std::string& s) {
    return "\"" + s + "\"";
}

}  // namespace

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "lambda,epsilon,fidelity\n";
    for (const SweepRow& row : rows) {
        if (!row.ok) {
            continue;  // failed points are reported separately
        }
        out << format_sci(row.lambda) << ',' << format_sci(row.epsilon) << ','
            << format_sci(row.fidelity) << '\n';
    }
    return out.str();
}

std::string timeseries_csv(const SimulationResult& result) {
    std::ostringstream out;
    out << "t,P0,P1,Pe\n";
    for (std::size_t i = 0; i < result.times.size(); ++i) {
        out << format_sci(result.times[i]) << ',' << format_sci(result.populations[i][0]) << ','
            << format_sci(result.populations[i][1]) << ','
            << format_sci(result.populations[i][2]) << '\n';
    }
    return out.str();
}

std::string pulse_table_csv(const std::vector<FieldSet>& fields) {
    std::ostringstream out;
    out << "t,delta_e,delta_1,delta_0,omega_0,omega_1,omega_2,varphi_0,varphi_1,varphi_2\n";
    for (const FieldSet& f : fields) {
        out << format_sci(f.at_time) << ',' << format_sci(f.delta_e) << ','
            << format_sci(f.delta_1) << ',' << format_sci(f.delta_0) << ','
            << format_sci(f.omega_0) << ',' << format_sci(f.omega_1) << ','
            << format_sci(f.omega_2) << ',' << format_sci(f.varphi_0) << ','
            << format_sci(f.varphi_1) << ',' << format_sci(f.varphi_2) << '\n';
    }
    return out.str();
}

std::string transfer_json(const TransferSpec& spec, const SimulationResult& result) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"lambda\": " << format_sci(spec.lambda) << ",\n";
    out << "  \"epsilon\": " << format_sci(spec.model.epsilon) << ",\n";
    out << "  \"model\": " << quoted(model_name(spec.model.kind)) << ",\n";
    out << "  \"n_steps\": " << spec.n_steps << ",\n";
    out << "  \"checkpoints\": {\n";
    bool first = true;
    for (const auto& [t, value] : result.fidelity_at) {
        if (!first) {
            out << ",\n";
        }
        first = false;
        out << "    " << quoted(format_sci(t)) << ": " << format_sci(value);
    }
    out << "\n  },\n";
    out << "  \"fidelity\": " << format_sci(result.fidelity_at.rbegin()->second) << "\n";
    out << "}\n";
    return out.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "[\n";
    bool first = true;
    for (const SweepRow& row : rows) {
        if (!row.ok) {
            continue;
        }
        if (!first) {
            out << ",\n";
        }
        first = false;
        out << "  {\"lambda\": " << format_sci(row.lambda)
            << ", \"epsilon\": " << format_sci(row.epsilon)
            << ", \"fidelity\": " << format_sci(row.fidelity) << "}";
    }
    out << "\n]\n";
    return out.str();
}

std::string cyclic_json(const CyclicSpec& spec, const SimulationResult& result) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"lambda\": " << format_sci(spec.lambda) << ",\n";
    out << "  \"epsilon\": " << format_sci(spec.model.epsilon) << ",\n";
    out << "  \"model\": " << quoted(model_name(spec.model.kind)) << ",\n";
    out << "  \"loops\": " << spec.loops << ",\n";
    out << "  \"n_steps_per_period\": " << spec.n_steps_per_period << ",\n";
    out << "  \"checkpoints\": {\n";
    bool first = true;
    for (const auto& [t, value] : result.fidelity_at) {
        if (!first) {
            out << ",\n";
        }
        first = false;
        out << "    " << quoted(format_sci(t)) << ": " << format_sci(value);
    }
    out << "\n  }\n";
    out << "}\n";
    return out.str();
}

std::string audit_json(const AuditReport& report) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"lambda\": " << format_sci(report.lambda) << ",\n";
    out << "  \"epsilon\": " << format_sci(report.model.epsilon) << ",\n";
    out << "  \"model\": " << quoted(model_name(report.model.kind)) << ",\n";
    out << "  \"m12\": " << format_sci(report.m12) << ",\n";
    out << "  \"m13\": " << format_sci(report.m13) << ",\n";
    out << "  \"m23\": " << format_sci(report.m23) << ",\n";
    out << "  \"margins\": {\"m12\": " << format_sci(report.margin_12)
        << ", \"m13\": " << format_sci(report.margin_13)
        << ", \"m23\": " << format_sci(report.margin_23) << "},\n";
    out << "  \"fidelity_magnus\": " << format_sci(report.fidelity_magnus) << ",\n";
    out << "  \"fidelity_numerical\": " << format_sci(report.fidelity_numerical) << ",\n";
    out << "  \"m12_bound_terms\": [";
    for (std::size_t i = 0; i < report.m12_bound.terms.size(); ++i) {
        if (i) {
            out << ", ";
        }
        out << format_sci(report.m12_bound.terms[i]);
    }
    out << "],\n";
    out << "  \"m12_bound_total\": " << format_sci(report.m12_bound.total) << ",\n";
    out << "  \"m23_bound\": " << format_sci(report.m23_bound) << "\n";
    out << "}\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw io_error("cannot open output file: " + path);
    }
    out << content;
    if (!out) {
        throw io_error("write failed: " + path);
    }
}

}  // namespace qctl
