#pragma once

#include <string>

#include "dmu/function.hpp"
#include "dmu/measure.hpp"

namespace dmu {

// JSON text forms of the two input artifacts.
//
// Measure: {"atoms":[{"theta","weight"}],"families":[{"theta_star","angle_ratio",
// "base_weight","weight_ratio","count"}]}. Function: {"blaschke":[{"re","im","mult"}],
// "singular":[{"theta","mass"}],"outer":{"log_constant","powers":[{"theta","alpha"}],
// "grid":[...]}}. Missing sections mean empty; serialization always writes every
// section, with keys in schema order and doubles in shortest round-trip form, so equal
// values produce byte-identical text. Parse failures throw std::runtime_error naming
// the offending field; semantic violations surface as the constructors' domain errors.

std::string measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const std::string& text);

std::string function_to_json(const StructuredFunction& f);
StructuredFunction function_from_json(const std::string& text);

// File helpers; load_* name the path in any error they throw.
AtomicMeasure load_measure(const std::string& path);
StructuredFunction load_function(const std::string& path);
std::string load_text(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace dmu
