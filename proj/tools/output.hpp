#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "extremal/sphere/bounds.hpp"
#include "extremal/verify/certificate.hpp"

namespace extremal::tools {

nlohmann::json to_json(const sphere::BoundResult& result);

/// Creates the directory if needed and writes text to dir/name.
std::string write_file(const std::string& dir, const std::string& name, const std::string& text);

std::string format_double(double x, int digits = 6);

/// RFC 4180 row with LF line ending.
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace extremal::tools
