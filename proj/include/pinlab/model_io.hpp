#pragma once

#include <string>

#include "pinlab/kernel_ridge.hpp"
#include "pinlab/learn.hpp"

namespace pinlab {

// Models serialize to JSON carrying the digest of the feature schema they
// were trained against; loading surfaces it so callers can refuse
// mismatched schemas.

std::string classifier_to_json(const ClassifierModel& model, const std::string& schema_digest);
ClassifierModel classifier_from_json(const std::string& text,
                                     std::string* schema_digest = nullptr);

std::string regressor_to_json(const RegressorModel& model, const std::string& schema_digest);
RegressorModel regressor_from_json(const std::string& text,
                                   std::string* schema_digest = nullptr);

}  // namespace pinlab
