#pragma once

#include <string>

#include "ssmote/evaluation.hpp"

namespace ssmote {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// CSV with columns dataset,method,metric,mean,std,best_k,best_p plus
/// per-method rank rows under dataset "rank".
std::string format_report_csv(const EvalReport& report);

/// Aligned F1 and MCC tables (datasets x methods) with a rank row each.
std::string format_report_text(const EvalReport& report);

}  // namespace ssmote
