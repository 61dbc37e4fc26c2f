#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fekete/analysis.hpp"
#include "fekete/ca_file.hpp"

namespace fekete {

/// 12 significant digits, always with a decimal point ("0.0", "0.811370462752").
std::string format_real(double value);

/// Header "x1,...,xd,out_size,full_size,ratio,lambda_qits". Refused rows carry
/// out_size "refused" and empty real columns; reasons follow as '#' lines.
void write_out_table_csv(std::ostream& out, const CellularAutomaton& ca, const std::vector<OutRow>& rows);

/// Row-major state grid, one line per run of the last coordinate.
std::vector<std::string> pattern_grid(const Pattern& pattern, State state_count);

/// Fenced block: "sides: a x b", grid rows, "code: <decimal>".
std::string certificate_block(const OrphanCertificate& certificate, State state_count);

void write_verdict(std::ostream& out, const CaDescription& description, const SurjectivityVerdict& verdict);

void write_lambda_report(std::ostream& out, const CellularAutomaton& ca, const LambdaEstimate& estimate);

void write_threshold_report(std::ostream& out, const ThresholdReport& report);

void write_violations(std::ostream& out, const std::vector<Violation>& violations);

void write_fekete_report(std::ostream& out, const SubadditivityCheck& check,
                         const std::optional<FeketeBracket>& bracket);

}  // namespace fekete
